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

// One member of a scaling family: a solved pair (f, g) whose position-frequency
// content is concentrated at |k| = lambda.
struct FamilyCase {
    double lambda = 0.0;
    Field f;
    Field g;
    double containment = 0.0;  // oracle spectral-window leakage
};

struct FitOptions {
    // geometric lambda sweep; empty selects 4, 8, ..., 512 (2.1 decades)
    std::vector<double> lambdas;
    int64_t nt = 8;
    int64_t nx = 4;
    int64_t nv = 1024;
    double horizon_factor = 20.0;  // horizon as a multiple of the damping time
    double envelope_sigma = 1.5;   // velocity width of the source profile
    double s_min = 0.0;
    double s_max = 1.0;
    double s_step = 0.02;
    double slope_tol = 0.02;
};

// Solves one forced problem per lambda with duhamel_oracle: source on the
// single position mode k = lambda (box length 2 pi / lambda), smooth periodic
// time profile, Gaussian velocity profile, zero initial datum.
std::vector<FamilyCase> build_scaling_family(double beta,
                                             const FitOptions& opts = {});

// ratio_lambda(s) = frac_norm(f, s, axis) / ||g|| for one family member.
double family_ratio(const FamilyCase& c, double s, AxisClass axis);

// Growth of ratio_lambda(s) from the smallest to the largest scale.
double family_growth(const std::vector<FamilyCase>& family, double s,
                     AxisClass axis);

// Scans the candidate s grid; the fitted exponent is the largest s whose
// log(ratio) vs log(lambda) least-squares slope stays below slope_tol.
// Report entries per s: lhs = s, rhs = slope, ratio = growth factor.
// Throws on families with fewer than 5 scales.
EstimateReport fit_scaling_exponent(const std::vector<FamilyCase>& family,
                                    AxisClass axis, const FitOptions& opts = {});

}  // namespace hypo
