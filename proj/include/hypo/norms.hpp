// Copyright 2026 The hypo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <limits>
#include <string>

#include "hypo/model.hpp"

namespace hypo {

struct EstimateReport {
    std::string name;
    bool valid = true;    // residual precondition held
    bool vacuous = false; // trivial data (zero norms)
    bool failed = false;  // NaN or invalid input; never silently dropped
    double residual = 0.0;
    std::vector<double> lhs, rhs, ratio;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    // set by fit_scaling_exponent only
    double fitted_s = std::numeric_limits<double>::quiet_NaN();
    double half_width = 0.0;
    std::string note;

    void push(double l, double r);
    void finalize();
};

// L2 norm of |k|^sx |xi|^sv f-hat over the whole grid.
double mixed_frac_norm(const Field& f, double sx, double sv);

// Inequality checkers.  Each gates on the appropriate residual (1e-8),
// reports LHS, RHS and their ratio, and flags vacuous or NaN cases.
EstimateReport check_prop_bouchut(const Field& f, const Field& g, double alpha);
EstimateReport check_step1(const Field& f, const Field& g, double beta);
EstimateReport check_step2(const Field& f, const Field& g, double beta);
EstimateReport check_step3(const Field& f, const Field& g, double beta);
EstimateReport check_theorem(const Field& f, const Field& g,
                             const ModelParams& params);

// Random corpus data: Gaussian spectral coefficients on a low band of the
// (t, x) axes and oscillations under a Gaussian velocity envelope, with
// |mode|^(-q) decay.  The envelope makes pointwise products with the
// (discontinuous) sawtooth velocity coordinate grid-size independent to
// machine precision, so reported ratios are refinement stable.
struct CorpusSpec {
    int count = 50;
    uint64_t seed = 1000;
    int tmodes = 2;
    int xmodes = 6;
    int vmodes = 6;
    double decay = 3.0;       // |mode|^-q weight; default n+2 for n=1
    double sigma = 0.55;      // envelope width over an L_v = 2 pi box
};

Field corpus_field(GridPtr grid, const CorpusSpec& spec, uint64_t case_seed);

enum class CheckKind { prop_bouchut, step1, step2, step3, thm1, thm2 };

std::string check_name(CheckKind kind);

// Runs `count` seeded cases of one checker on its natural manufactured data
// (free transport for prop_bouchut, Eq.-(2) pairs otherwise, variable
// coefficient for thm2) and aggregates max/median ratios.
EstimateReport run_corpus(CheckKind kind, GridPtr grid, const CorpusSpec& spec,
                          double exponent);

}  // namespace hypo
