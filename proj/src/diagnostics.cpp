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

#include "hypo/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace hypo {

namespace {

void require_1d(const GridSpec& g, const char* who) {
    if (g.n() != 1) throw FieldError(std::string(who) + ": only n = 1 supported");
}

}  // namespace

SplitResult split_AB(const Field& f, const Field& g, const SplitParams& params,
                     int64_t k_index) {
    require_1d(*f.grid, "split_AB");
    if (!f.grid->same_shape(*g.grid))
        throw FieldError("split_AB: mismatched grids");
    if (k_index < 0 || k_index >= f.grid->nx())
        throw FieldError("split_AB: k index out of range");
    const Field fh = to_rep_all(f, Rep::frequency);
    const Field gh = to_rep_all(g, Rep::frequency);
    const GridSpec& grid = *f.grid;

    SplitResult res;
    res.k = std::abs(grid.freq(1, k_index));
    res.skipped = res.k == 0.0;
    res.D = res.skipped ? 0.0 : params.cut(res.k);
    const double kr = res.skipped ? 0.0 : std::pow(res.k, params.r);

    for (int64_t it = 0; it < grid.nt(); ++it) {
        for (int64_t j = 0; j < grid.nv(); ++j) {
            const int64_t flat = it * grid.stride(0) +
                                 k_index * grid.stride(1) + j * grid.stride(2);
            const double e = std::norm(fh[flat]);
            const double xi = std::abs(grid.freq(2, j));
            res.U += kr * e;
            res.V += std::pow(xi, params.m) * e;
            res.W += std::norm(gh[flat]);
            if (!res.skipped) {
                if (xi >= res.D)
                    res.A += kr * e;
                else
                    res.B += kr * e;
            }
        }
    }
    if (!res.skipped) {
        // high-frequency chain: A <= D^{-m} sum |xi|^m |k|^r |fhat|^2 <= V
        // under the balanced rule, since D^{-m} |k|^r = 1 there
        if (res.V > 0.0) res.a_ratio = res.A / res.V;
        // Cauchy-Schwarz window bound: a characteristic spends at most
        // 2 D / |k| of time inside |xi| < D
        const double wbound = kr * (2.0 * res.D / res.k) * res.W;
        if (wbound > 0.0) res.b_ratio = res.B / wbound;
    }
    return res;
}

std::vector<SplitResult> split_all(const Field& f, const Field& g,
                                   const SplitParams& params) {
    std::vector<SplitResult> out;
    out.reserve(f.grid->nx());
    for (int64_t k = 0; k < f.grid->nx(); ++k)
        out.push_back(split_AB(f, g, params, k));
    return out;
}

BalanceResult balance_lambda(double U, double V, double W, double m) {
    if (U < 0.0 || V < 0.0 || W < 0.0)
        throw FieldError("balance_lambda: negative mass");
    if (m <= 0.0) throw FieldError("balance_lambda: m must be positive");
    BalanceResult res;
    res.bound = std::pow(V, m / (m + 2.0)) * std::pow(W, 2.0 / (m + 2.0));
    const double uv = std::sqrt(U) * std::sqrt(V);
    if (uv == 0.0 || W == 0.0) {
        // degenerate: one term absent, the optimum sits at the boundary
        res.objective_star = 0.0;
        return res;
    }
    res.lambda_balance = std::pow(W / uv, 1.0 / (m + 1.0));
    res.lambda_star = std::pow(m * W / uv, 1.0 / (m + 1.0));
    res.objective_star =
        res.lambda_star * uv + std::pow(res.lambda_star, -m) * W;
    return res;
}

EstimateReport holder_aggregate(const std::vector<SplitResult>& fibers,
                                double m) {
    if (fibers.empty()) throw FieldError("holder_aggregate: empty fiber list");
    EstimateReport rep;
    rep.name = "holder-aggregate";
    double su = 0.0, sv = 0.0, sw = 0.0;
    for (const SplitResult& f : fibers) {
        su += f.U;
        sv += f.V;
        sw += f.W;
    }
    if (su == 0.0 && sv == 0.0 && sw == 0.0) {
        rep.push(0.0, 0.0);  // flagged vacuous
        rep.finalize();
        return rep;
    }
    // square root of the Hoelder consequence: matches the averaging-lemma
    // ratio with alpha = m/2
    rep.push(std::sqrt(su), std::pow(sw, 0.5 * m / (m + 2.0)) *
                                std::pow(sv, 1.0 / (m + 2.0)));
    rep.finalize();
    return rep;
}

Step4Result step4_terms(const Field& f, const Field& g, double beta,
                        SymbolKind variant, double delta) {
    if (variant == SymbolKind::frac_v)
        throw FieldError("step4_terms: P must read position frequencies");
    const MultiplierSpec pspec{variant, beta, delta};
    const MultiplierSpec qspec{SymbolKind::frac_v, beta, 0.0};
    const Field fh = to_rep_all(f, Rep::frequency);

    Step4Result res;
    const Field pf = apply_multiplier(fh, pspec);
    const Field qf = apply_multiplier(fh, qspec);
    res.pairing = inner(pf, qf).real();
    res.pairing_scale = l2_norm(pf) * l2_norm(qf);

    res.I_direct = -inner(to_rep(pf, AxisClass::velocity, Rep::physical),
                          apply_transport(to_rep(fh, AxisClass::velocity,
                                                 Rep::physical)))
                        .real();

    // symbol-derivative form of I as a lattice sum; the homogeneous symbol's
    // beta - 1 power degenerates at the zero mode, which is excluded
    const GridSpec& grid = *fh.grid;
    const double bp = 2.0 / (1.0 + 2.0 * beta);
    std::vector<int64_t> idx;
    for (int64_t i = 0; i < fh.size(); ++i) {
        const double k2 = freq_sq(grid, AxisClass::position, i);
        const double xi2 = freq_sq(grid, AxisClass::velocity, i);
        if (k2 == 0.0 && xi2 == 0.0 && delta == 0.0) {
            if (std::norm(fh[i]) > 0.0) res.zero_mode_excluded = true;
            continue;
        }
        grid.unflatten(i, idx);
        const double k = grid.freq(1, idx[1]);
        const double xi = grid.freq(2, idx[2]);
        double base = xi2 + std::pow(k2, 0.5 * bp);
        if (variant == SymbolKind::bracket_aniso)
            base = delta + xi2 + std::pow(1.0 + k2, 0.5 * bp);
        res.I_identity +=
            beta * xi * k * std::pow(base, beta - 1.0) * std::norm(fh[i]);
    }

    const Field gh = to_rep_all(g, Rep::frequency);
    res.II = inner(pf, gh).real();

    res.i_bound = mixed_frac_norm(f, beta / (1.0 + 2.0 * beta), beta) *
                  frac_norm(f, gain_exponent(beta), AxisClass::position);
    res.ii_bound = (frac_norm(f, 2.0 * beta, AxisClass::velocity) +
                    frac_norm(f, gain_exponent(beta), AxisClass::position)) *
                   l2_norm(g);
    if (res.i_bound > 0.0) res.i_ratio = std::abs(res.I_direct) / res.i_bound;
    if (res.ii_bound > 0.0) res.ii_ratio = std::abs(res.II) / res.ii_bound;
    return res;
}

IvpResult check_ivp_term(const Field& f0, const SplitParams& params,
                         int64_t k_index, double horizon) {
    require_1d(*f0.grid, "check_ivp_term");
    if (horizon <= 0.0) throw FieldError("check_ivp_term: horizon <= 0");
    const Field fh = to_rep_all(f0, Rep::frequency);
    const GridSpec& grid = *f0.grid;
    if (k_index < 0 || k_index >= grid.nx())
        throw FieldError("check_ivp_term: k index out of range");

    IvpResult res;
    const double k = grid.freq(1, k_index);
    if (k == 0.0) {
        res.skipped = true;
        return res;
    }
    const double kabs = std::abs(k);
    const double D = params.cut(kabs);
    const double kr = std::pow(kabs, params.r);
    double mass = 0.0;
    for (int64_t it = 0; it < grid.nt(); ++it) {
        for (int64_t j = 0; j < grid.nv(); ++j) {
            const int64_t flat = it * grid.stride(0) +
                                 k_index * grid.stride(1) + j * grid.stride(2);
            const double e = std::norm(fh[flat]);
            if (e == 0.0) continue;
            mass += e;
            // exact measure of {t in [0, horizon] : |xi0 - t k| <= D}
            const double xi0 = grid.freq(2, j);
            const double lo = std::min((xi0 - D) / k, (xi0 + D) / k);
            const double hi = std::max((xi0 - D) / k, (xi0 + D) / k);
            const double len = std::max(
                0.0, std::min(hi, horizon) - std::max(lo, 0.0));
            res.third += kr * len * e;
        }
    }
    res.bound = std::pow(kabs, params.r - 1.0) * 2.0 * D * mass;
    if (res.bound > 0.0) res.ratio = res.third / res.bound;
    return res;
}

}  // namespace hypo
