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

#include "hypo/commutators.hpp"

#include <algorithm>
#include <cmath>

#include "hypo/rng.hpp"

namespace hypo {

namespace {

Field to_full_freq(const Field& f) { return to_rep_all(f, Rep::frequency); }

Field modifier_product(const Field& f, const std::vector<double>& mod) {
    Field fp = to_rep_all(f, Rep::physical);
    for (int64_t i = 0; i < fp.size(); ++i) fp[i] *= mod[static_cast<size_t>(i)];
    return fp;
}

}  // namespace

void CommutatorSpec::validate() const {
    if (!grid) throw FieldError("CommutatorSpec: missing grid");
    if (static_cast<int64_t>(modifier.size()) != grid->total())
        throw FieldError("CommutatorSpec: modifier size mismatch");
    (void)symbol_value(multiplier, 0.0, 1.0);  // validates beta range
}

Field commutator_apply(const CommutatorSpec& spec, const Field& f,
                       bool* aliasing_warning) {
    spec.validate();
    if (!f.grid->same_shape(*spec.grid))
        throw FieldError("commutator_apply: grid mismatch");
    const Field bf = modifier_product(f, spec.modifier);
    if (aliasing_warning)
        *aliasing_warning = high_band_energy_fraction(bf) > 1e-8;
    const Field mbf = apply_multiplier(to_full_freq(bf), spec.multiplier);
    const Field mf = apply_multiplier(to_full_freq(f), spec.multiplier);
    const Field bmf = modifier_product(mf, spec.modifier);
    return mbf - to_full_freq(bmf);
}

Field kernel_commutator_1d(const CommutatorSpec& spec, const Field& f,
                           const KernelOptions& opts) {
    spec.validate();
    if (spec.grid->n() != 1)
        throw FieldError("kernel_commutator_1d: only n = 1 supported");
    if (spec.multiplier.kind != SymbolKind::frac_v)
        throw FieldError("kernel_commutator_1d: velocity multiplier only");
    const double beta = spec.multiplier.beta;
    if (beta >= 0.5)
        throw FieldError(
            "kernel_commutator_1d: beta >= 1/2 needs the symmetrized kernel "
            "(unsupported)");
    if (!f.grid->same_shape(*spec.grid))
        throw FieldError("kernel_commutator_1d: grid mismatch");

    const GridSpec& g = *spec.grid;
    const int vax = 2;
    const int64_t nv = g.nv();
    const double dv = g.lv() / static_cast<double>(nv);
    const double p = 1.0 + 2.0 * beta;  // kernel exponent |h|^{-p}

    // product-integration weights: the singular factor |h|^{-p} is integrated
    // exactly over each offset cell (periodic images included), the smooth
    // factor is sampled at the node; the near-diagonal cell |h| < dv / 2 is
    // handled by a Taylor correction
    const double lv = g.lv();
    auto seg = [&](double lo, double hi) {  // int |h|^-p over [lo,hi], 0 outside
        const double a = std::min(std::abs(lo), std::abs(hi));
        const double b = std::max(std::abs(lo), std::abs(hi));
        return (std::pow(b, 1.0 - p) - std::pow(a, 1.0 - p)) / (1.0 - p);
    };
    // image tail beyond +/- jmax, midpoint Euler-Maclaurin in the image index
    const int jmax = 256;
    auto tail = [&](double a, double b) {
        auto G = [&](double h) {
            return std::pow(h, 2.0 - p) / ((1.0 - p) * (2.0 - p));
        };
        const double x0 = jmax + 0.5;
        return (G(a + x0 * lv) - G(b + x0 * lv)) / lv;
    };
    std::vector<double> wgt(static_cast<size_t>(nv), 0.0);
    auto fold = [&](int64_t s) { return static_cast<size_t>(((s % nv) + nv) % nv); };
    // central period: linear product integration, exact zeroth and first
    // moments of |h|^{-p} per interval; mirrored onto the negative side
    for (int64_t m = 0; m < nv / 2; ++m) {
        const double a = m * dv, b = (m + 1) * dv;
        const double m1 =
            (std::pow(b, 2.0 - p) - std::pow(a, 2.0 - p)) / (2.0 - p);
        if (m == 0) {
            // smooth factor vanishes at h = 0, only the upper node enters
            wgt[fold(1)] += m1 / dv;
            wgt[fold(-1)] += m1 / dv;
            continue;
        }
        const double m0 = seg(a, b);
        wgt[fold(m)] += (b * m0 - m1) / dv;
        wgt[fold(m + 1)] += (m1 - a * m0) / dv;
        wgt[fold(-m)] += (b * m0 - m1) / dv;
        wgt[fold(-m - 1)] += (m1 - a * m0) / dv;
    }
    // periodic images at |h| > L/2: exact cell mass at the node
    for (int64_t q = 1; q < nv; ++q) {
        const int64_t s = q <= nv / 2 ? q : q - nv;
        const double lo = s * dv - 0.5 * dv, hi = s * dv + 0.5 * dv;
        double w = 0.0;
        for (int img = -jmax; img <= jmax; ++img)
            if (img != 0) w += seg(lo + img * lv, hi + img * lv);
        w += tail(lo, hi) + tail(-hi, -lo);
        wgt[static_cast<size_t>(q)] += w;
    }
    // interpolation defect on the two singular intervals: for the even Taylor
    // part q2 h^2 of the smooth factor the linear interpolant misses
    // q2 (h^2 - dv |h|), integrated exactly against |h|^{-p}
    const double near_coef =
        2.0 * std::pow(dv, 3.0 - p) * (1.0 / (3.0 - p) - 1.0 / (2.0 - p));

    // calibrate the kernel constant against the spectral symbol on one mode
    const double xi1 =
        g.freq_step(vax) * opts.calibration_mode;
    double raw = 0.0;  // <K e, e> / nv for the plain kernel on the mode
    for (int64_t q = 1; q < nv; ++q) {
        const double h = (q <= nv / 2 ? q : q - nv) * dv;
        raw += (1.0 - std::cos(xi1 * h)) * wgt[static_cast<size_t>(q)];
    }
    // near-diagonal piece of the plain kernel: (1 - cos) ~ xi^2 h^2 / 2
    raw += 0.5 * xi1 * xi1 * near_coef;
    const double cn = std::pow(std::abs(xi1), 2.0 * beta) / raw;

    // spectral derivatives of modifier and input along v
    const Field fp = to_rep_all(f, Rep::physical);
    Field bchi(spec.grid, Rep::physical);
    for (int64_t i = 0; i < bchi.size(); ++i)
        bchi[i] = spec.modifier[static_cast<size_t>(i)];
    auto d_dv = [&](const Field& u) {
        Field hat = to_rep(u, AxisClass::velocity, Rep::frequency);
        std::vector<int64_t> idx;
        for (int64_t i = 0; i < hat.size(); ++i) {
            g.unflatten(i, idx);
            hat[i] *= cplx(0.0, g.freq(vax, idx[vax]));
        }
        return to_rep(hat, AxisClass::velocity, Rep::physical);
    };
    const Field dmod = d_dv(bchi);
    const Field ddmod = d_dv(dmod);
    const Field df = d_dv(fp);

    Field out(spec.grid, Rep::physical);
    const int64_t sv = g.stride(vax);
    for (int64_t base = 0; base < g.total(); base += sv * nv) {
        for (int64_t j = 0; j < nv; ++j) {
            const int64_t at = base + j * sv;
            cplx acc(0.0, 0.0);
            for (int64_t q = 1; q < nv; ++q) {
                const int64_t jq = (j + q) % nv;
                const int64_t shifted = base + jq * sv;
                acc += (spec.modifier[static_cast<size_t>(at)] -
                        spec.modifier[static_cast<size_t>(shifted)]) *
                       fp[shifted] * wgt[static_cast<size_t>(q)];
            }
            // cancellation cell, even Taylor part
            acc -= (dmod[at].real() * df[at] +
                    0.5 * ddmod[at].real() * fp[at]) *
                   near_coef;
            out[at] = cn * acc;
        }
    }
    // the difference kernel already carries commutator_apply's convention
    // M(bf) - b(Mf)
    return to_full_freq(out);
}

double commutator_weight_norm(const Field& f, double beta, WeightKind kind) {
    if (kind == WeightKind::plain) return l2_norm(f);
    if (beta < 0.5)
        throw FieldError("shifted weight is the beta >= 1/2 regime");
    // the commutator loses one derivative off the order-2 beta symbol, so the
    // matching weight order is 2 beta - 1
    return frac_norm(f, 2.0 * beta - 1.0, AxisClass::velocity) + l2_norm(f);
}

namespace {

Field random_band_limited(GridPtr grid, uint64_t seed, int band_divisor) {
    Rng rng(seed);
    Field out(grid, Rep::frequency);
    std::vector<int64_t> idx;
    for (int64_t i = 0; i < out.size(); ++i) {
        grid->unflatten(i, idx);
        bool inside = true;
        for (int a = 0; a < grid->axis_count(); ++a) {
            const int64_t half = grid->size(a) / 2;
            if (std::abs(grid->freq_index(a, idx[a])) >
                (2 * half) / band_divisor) {
                inside = false;
                break;
            }
        }
        if (inside) out[i] = cplx(rng.gaussian(), rng.gaussian());
    }
    return out;
}

void band_project(Field& hat, int band_divisor) {
    std::vector<int64_t> idx;
    for (int64_t i = 0; i < hat.size(); ++i) {
        hat.grid->unflatten(i, idx);
        for (int a = 0; a < hat.grid->axis_count(); ++a) {
            const int64_t half = hat.grid->size(a) / 2;
            if (std::abs(hat.grid->freq_index(a, idx[a])) >
                (2 * half) / band_divisor) {
                hat[i] = cplx(0.0, 0.0);
                break;
            }
        }
    }
}

}  // namespace

double op_norm_estimate(const CommutatorSpec& spec, WeightKind weight,
                        const OpNormOptions& opts, OpNormReport* report) {
    spec.validate();
    const double beta = spec.multiplier.beta;
    OpNormReport rep;

    for (int c = 0; c < opts.corpus; ++c) {
        const Field f =
            random_band_limited(spec.grid, opts.seed + uint64_t(c),
                                opts.band_divisor);
        const double w = commutator_weight_norm(f, beta, weight);
        if (w == 0.0) continue;
        rep.corpus_max =
            std::max(rep.corpus_max, l2_norm(commutator_apply(spec, f)) / w);
    }

    // power iteration on S^{-1} C* C S^{-1} with the diagonal weight symbol
    // S = 1 (plain) or 1 + |xi|^{2 beta - 1} (shifted); the commutator of
    // self-adjoint factors satisfies C* = -C
    const GridSpec& g = *spec.grid;
    std::vector<double> sinv(static_cast<size_t>(g.total()), 1.0);
    if (weight == WeightKind::shifted) {
        for (int64_t i = 0; i < g.total(); ++i) {
            const double xi2 = freq_sq(g, AxisClass::velocity, i);
            sinv[static_cast<size_t>(i)] =
                1.0 / (1.0 + std::pow(xi2, 0.5 * (2.0 * beta - 1.0)));
        }
    }
    Field x = random_band_limited(spec.grid, opts.seed + 1000, opts.band_divisor);
    const double nx0 = l2_norm(x);
    for (auto& z : x.data) z /= nx0;
    double value = 0.0;
    rep.converged = false;
    for (int it = 0; it < opts.power_iters; ++it) {
        Field y = x;
        for (int64_t i = 0; i < y.size(); ++i)
            y[i] *= sinv[static_cast<size_t>(i)];
        Field cy = commutator_apply(spec, y);
        Field ccy = commutator_apply(spec, cy);
        for (int64_t i = 0; i < ccy.size(); ++i)
            ccy[i] *= -sinv[static_cast<size_t>(i)];
        band_project(ccy, opts.band_divisor);
        const double lam = l2_norm(ccy);
        rep.iterations = it + 1;
        if (lam == 0.0) {
            value = 0.0;
            rep.converged = true;
            break;
        }
        const double next = std::sqrt(lam);
        if (it > 0 && std::abs(next - value) <= opts.power_tol * next) {
            value = next;
            rep.converged = true;
            break;
        }
        value = next;
        for (auto& z : ccy.data) z /= lam;
        x = std::move(ccy);
    }
    rep.power_value = value;
    rep.estimate = std::max(rep.corpus_max, rep.power_value);
    if (report) *report = rep;
    return rep.estimate;
}

SchurBounds schur_row_bounds(const CommutatorSpec& spec) {
    spec.validate();
    const GridSpec& g = *spec.grid;
    if (g.n() != 1) throw FieldError("schur_row_bounds: only n = 1 supported");

    // frequency-side kernel K(w, w') = N^{-1/2} modhat(w - w') (p(w) - p(w'))
    Field mod(spec.grid, Rep::physical);
    for (int64_t i = 0; i < mod.size(); ++i)
        mod[i] = spec.modifier[static_cast<size_t>(i)];
    const Field modhat = to_rep_all(mod, Rep::frequency);
    const double scale =
        1.0 / std::sqrt(static_cast<double>(g.total()));
    const std::vector<double> symbol = eval_symbol(spec.multiplier, g);

    const int64_t total = g.total();
    std::vector<double> row1(total, 0.0), col1(total, 0.0);
    std::vector<double> row2(total, 0.0), col2(total, 0.0);
    std::vector<int64_t> iw(g.axis_count()), iv(g.axis_count()),
        id(g.axis_count());
    for (int64_t w = 0; w < total; ++w) {
        g.unflatten(w, iw);
        for (int64_t v = 0; v < total; ++v) {
            g.unflatten(v, iv);
            double shift_sq = 0.0, src_sq = 0.0;
            int64_t dflat = 0;
            for (int a = 0; a < g.axis_count(); ++a) {
                const int64_t d =
                    (iw[a] - iv[a] + g.size(a)) % g.size(a);
                dflat += d * g.stride(a);
                const double df = g.freq(a, d);
                shift_sq += df * df;
                const double sf = g.freq(a, iv[a]);
                src_sq += sf * sf;
            }
            const double amp =
                scale * std::abs(modhat[dflat]) *
                std::abs(symbol[static_cast<size_t>(w)] -
                         symbol[static_cast<size_t>(v)]);
            if (amp == 0.0) continue;
            if (shift_sq * 4.0 <= src_sq) {
                row1[w] += amp;
                col1[v] += amp;
            } else {
                row2[w] += amp;
                col2[v] += amp;
            }
        }
    }
    SchurBounds out;
    double row = 0.0, col = 0.0;
    for (int64_t i = 0; i < total; ++i) {
        out.k1_row = std::max(out.k1_row, row1[i]);
        out.k1_col = std::max(out.k1_col, col1[i]);
        out.k2_row = std::max(out.k2_row, row2[i]);
        out.k2_col = std::max(out.k2_col, col2[i]);
        row = std::max(row, row1[i] + row2[i]);
        col = std::max(col, col1[i] + col2[i]);
    }
    out.bound = std::sqrt(row * col);
    return out;
}

double modifier_sobolev_norm(GridPtr grid, const std::vector<double>& modifier,
                             double order) {
    Field mod(grid, Rep::physical);
    for (int64_t i = 0; i < mod.size(); ++i)
        mod[i] = modifier[static_cast<size_t>(i)];
    const Field hat = to_rep_all(mod, Rep::frequency);
    double acc = 0.0;
    for (int64_t i = 0; i < hat.size(); ++i) {
        const double w2 = freq_sq(*grid, AxisClass::time, i) +
                          freq_sq(*grid, AxisClass::position, i) +
                          freq_sq(*grid, AxisClass::velocity, i);
        acc += std::pow(1.0 + w2, order) * std::norm(hat[i]);
    }
    return std::sqrt(acc);
}

EstimateReport check_lemma(GridPtr grid, const MultiplierSpec& mult,
                           const std::vector<std::vector<double>>& modifiers,
                           WeightKind weight, double sobolev_delta,
                           const OpNormOptions& opts) {
    if (modifiers.empty()) throw FieldError("check_lemma: empty family");
    EstimateReport rep;
    rep.name = mult.kind == SymbolKind::frac_v ? "lemma-q" : "lemma-p";
    const double order = grid->n() + 1.0 + sobolev_delta;
    for (const auto& modifier : modifiers) {
        CommutatorSpec spec{grid, mult, modifier};
        OpNormReport one;
        const double est = op_norm_estimate(spec, weight, opts, &one);
        if (!one.converged) rep.note = "power iteration hit the cap";
        rep.push(est, modifier_sobolev_norm(grid, modifier, order));
    }
    rep.finalize();
    return rep;
}

}  // namespace hypo
