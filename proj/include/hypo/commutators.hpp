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

#include "hypo/norms.hpp"

namespace hypo {

// Commutator [M, b] f = M(b f) - b (M f) of a frequency multiplier against
// pointwise multiplication by a real modifier (the b*chi of the variable
// coefficient).
struct CommutatorSpec {
    GridPtr grid;
    MultiplierSpec multiplier;
    std::vector<double> modifier;  // sampled on the grid lattice

    void validate() const;
};

Field commutator_apply(const CommutatorSpec& spec, const Field& f,
                       bool* aliasing_warning = nullptr);

// Singular-kernel evaluation of the velocity commutator, n = 1 and
// beta < 1/2 only (absolutely convergent regime).  The normalization is
// calibrated once against the spectral symbol on a pure mode; h0 controls
// the Taylor-corrected near-diagonal cell.
struct KernelOptions {
    double calibration_mode = 3.0;  // xi index used to fix the constant
};

Field kernel_commutator_1d(const CommutatorSpec& spec, const Field& f,
                           const KernelOptions& opts = {});

enum class WeightKind { plain, shifted };

// weight(f): ||f|| for plain; frac_norm(f, 2 beta - 1, v) + ||f|| for shifted.
double commutator_weight_norm(const Field& f, double beta, WeightKind kind);

struct OpNormOptions {
    int corpus = 20;
    uint64_t seed = 1;
    int band_divisor = 3;  // corpus and iteration restricted to |freq| < N/divisor
    int power_iters = 100;
    double power_tol = 1e-6;
};

struct OpNormReport {
    double corpus_max = 0.0;
    double power_value = 0.0;
    double estimate = 0.0;  // max of the two
    int iterations = 0;
    bool converged = true;
};

// sup ||[M,b] f|| / weight(f): randomized corpus max combined with power
// iteration on the (band-restricted, weight-rescaled) composition.
double op_norm_estimate(const CommutatorSpec& spec, WeightKind weight,
                        const OpNormOptions& opts = {},
                        OpNormReport* report = nullptr);

// Certified Schur-test bound on the frequency-side commutator kernel,
// split into the near-diagonal piece K1 (|shift| <= |source freq| / 2)
// and the remainder K2.
struct SchurBounds {
    double k1_row = 0.0, k1_col = 0.0;
    double k2_row = 0.0, k2_col = 0.0;
    double bound = 0.0;  // full-kernel geometric mean, >= operator norm
};

SchurBounds schur_row_bounds(const CommutatorSpec& spec);

// Sobolev-type norm of a sampled real modifier, order m over all axes.
double modifier_sobolev_norm(GridPtr grid, const std::vector<double>& modifier,
                             double order);

// Sweeps a family of modifiers: per case, lhs = operator-norm estimate,
// rhs = H^{n+1+delta} norm of the modifier; the ratio staying bounded across
// growing families is the lemma's constant dependence.
EstimateReport check_lemma(GridPtr grid, const MultiplierSpec& mult,
                           const std::vector<std::vector<double>>& modifiers,
                           WeightKind weight, double sobolev_delta = 0.5,
                           const OpNormOptions& opts = {});

}  // namespace hypo
