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

// Frequency-splitting parameters: x-frequency weight |k|^r, v-frequency cut
// at D = |k|^{r/m}.  The balanced choice r = 2m/(m+2) makes
// |k|^{2(r-1)} D^2 = |k|^r hold identically.
struct SplitParams {
    double r = 1.0;
    double m = 2.0;

    static SplitParams balanced(double m) {
        if (m <= 0.0) throw FieldError("SplitParams: m must be positive");
        return SplitParams{2.0 * m / (m + 2.0), m};
    }
    double cut(double k_abs) const { return std::pow(k_abs, r / m); }
};

// One fixed-k fiber of the splitting.  A and B partition U by |xi| >= D
// against |xi| < D; V and W are the v-regularity and source masses.
struct SplitResult {
    double k = 0.0;    // |k| of the fiber
    double D = 0.0;
    double A = 0.0;
    double B = 0.0;
    double U = 0.0;    // |k|^r |fhat|^2 mass
    double V = 0.0;    // |xi|^m |fhat|^2 mass
    double W = 0.0;    // |ghat|^2 mass
    bool skipped = false;  // k = 0 fiber: D-rule degenerate, A/B not formed
    double a_ratio = 0.0;  // A / V  (the high-frequency chain, constant 1)
    double b_ratio = 0.0;  // B / Cauchy-Schwarz time-window bound
};

SplitResult split_AB(const Field& f, const Field& g, const SplitParams& params,
                     int64_t k_index);
std::vector<SplitResult> split_all(const Field& f, const Field& g,
                                   const SplitParams& params);

// lambda-balance of  lambda * U^{1/2} V^{1/2} + lambda^{-m} W.
struct BalanceResult {
    double lambda_balance = 0.0;  // equates the two terms
    double lambda_star = 0.0;     // stationary minimizer of the objective
    double objective_star = 0.0;
    double bound = 0.0;           // V^{m/(m+2)} W^{2/(m+2)}
};

BalanceResult balance_lambda(double U, double V, double W, double m);

// Hoelder aggregation over the fibers; with m = 2 alpha the reported ratio
// equals check_prop_bouchut's ratio on identical data.  The source mass
// carries the m/(m+2) exponent: that pairing, not the transposed one, is what
// reproduces the averaging inequality.
EstimateReport holder_aggregate(const std::vector<SplitResult>& fibers,
                                double m);

// The multiplier-pairing terms of the hypoelliptic energy argument:
// P = (|D_v|^2 + |D_x|^{2/(1+2 beta)})^beta paired against the equation.
struct Step4Result {
    double pairing = 0.0;     // Re <Pf, Qf>, nonnegative up to roundoff
    double pairing_scale = 0.0;  // ||Pf|| ||Qf||
    double I_direct = 0.0;    // -Re <Pf, v.grad_x f>
    double I_identity = 0.0;  // symbol-derivative lattice sum
    double II = 0.0;          // Re <Pf, g>
    double i_bound = 0.0;     // mixed-norm product
    double ii_bound = 0.0;    // (|D_v|^{2b} + |D_x|^{gain} norms) * ||g||
    double i_ratio = 0.0;
    double ii_ratio = 0.0;
    bool zero_mode_excluded = false;
};

Step4Result step4_terms(const Field& f, const Field& g, double beta,
                        SymbolKind variant = SymbolKind::aniso,
                        double delta = 0.0);

// Small-frequency initial-datum term: each datum characteristic crosses the
// |xi| < D window for a time interval of length at most 2 D / |k|.
struct IvpResult {
    double third = 0.0;  // |k|^r-weighted crossing-time mass
    double bound = 0.0;  // |k|^{r-1} * 2 D * datum mass
    double ratio = 0.0;
    bool skipped = false;  // k = 0
};

IvpResult check_ivp_term(const Field& f0, const SplitParams& params,
                         int64_t k_index, double horizon);

}  // namespace hypo
