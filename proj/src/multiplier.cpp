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

#include "hypo/multiplier.hpp"

#include <cmath>

namespace hypo {

std::string symbol_name(SymbolKind k) {
    switch (k) {
        case SymbolKind::frac_v: return "frac_v";
        case SymbolKind::aniso: return "aniso";
        case SymbolKind::bracket_aniso: return "bracket_aniso";
    }
    return "?";
}

double symbol_value(const MultiplierSpec& spec, double k2, double xi2) {
    if (spec.beta <= 0.0 || spec.beta > 1.0) {
        throw FieldError("symbol order beta must lie in (0,1]");
    }
    const double b = spec.beta;
    switch (spec.kind) {
        case SymbolKind::frac_v:
            // homogeneous symbol, removable singularity at xi = 0
            return xi2 == 0.0 ? 0.0 : std::pow(xi2, b);
        case SymbolKind::aniso: {
            const double base = xi2 + std::pow(k2, 1.0 / (1.0 + 2.0 * b));
            return base == 0.0 ? 0.0 : std::pow(base, b);
        }
        case SymbolKind::bracket_aniso: {
            const double base =
                spec.delta + xi2 + std::pow(1.0 + k2, 1.0 / (1.0 + 2.0 * b));
            return std::pow(base, b);
        }
    }
    return 0.0;
}

double freq_sq(const GridSpec& grid, AxisClass c, int64_t flat) {
    double acc = 0.0;
    for (int a : grid.axes_of(c)) {
        const int64_t i = (flat / grid.stride(a)) % grid.size(a);
        const double w = grid.freq(a, i);
        acc += w * w;
    }
    return acc;
}

std::vector<double> eval_symbol(const MultiplierSpec& spec, const GridSpec& grid) {
    std::vector<double> out(static_cast<size_t>(grid.total()));
    for (int64_t i = 0; i < grid.total(); ++i) {
        const double k2 =
            spec.reads_position() ? freq_sq(grid, AxisClass::position, i) : 0.0;
        const double xi2 = freq_sq(grid, AxisClass::velocity, i);
        out[static_cast<size_t>(i)] = symbol_value(spec, k2, xi2);
    }
    return out;
}

Field apply_multiplier(const Field& f, const MultiplierSpec& spec) {
    if (!f.rep_is(AxisClass::velocity, Rep::frequency)) {
        throw FieldError("apply_multiplier: velocity axes must be in frequency rep");
    }
    if (spec.reads_position() && !f.rep_is(AxisClass::position, Rep::frequency)) {
        throw FieldError("apply_multiplier: position axes must be in frequency rep");
    }
    Field out = f;
    const GridSpec& g = *f.grid;
    for (int64_t i = 0; i < g.total(); ++i) {
        const double k2 =
            spec.reads_position() ? freq_sq(g, AxisClass::position, i) : 0.0;
        const double xi2 = freq_sq(g, AxisClass::velocity, i);
        out.data[static_cast<size_t>(i)] *= symbol_value(spec, k2, xi2);
    }
    return out;
}

Field apply_transport(const Field& f) {
    const std::vector<Rep> original = f.rep;
    Field mixed = to_rep(to_rep(f, AxisClass::position, Rep::frequency),
                         AxisClass::velocity, Rep::physical);
    const GridSpec& g = *f.grid;
    const int n = g.n();
    for (int64_t i = 0; i < g.total(); ++i) {
        double kv = 0.0;
        for (int d = 0; d < n; ++d) {
            const int ax_x = 1 + d;
            const int ax_v = 1 + n + d;
            const int64_t ix = (i / g.stride(ax_x)) % g.size(ax_x);
            const int64_t iv = (i / g.stride(ax_v)) % g.size(ax_v);
            kv += g.freq(ax_x, ix) * g.coord(ax_v, iv);
        }
        mixed.data[static_cast<size_t>(i)] *= cplx(0.0, kv);
    }
    // restore the caller's representation axis by axis
    Field out = std::move(mixed);
    for (int a = 0; a < g.axis_count(); ++a) {
        if (out.rep[a] != original[a]) {
            out = transform(out, {a},
                            original[a] == Rep::frequency ? Direction::forward
                                                          : Direction::inverse);
        }
    }
    return out;
}

Field apply_time_derivative(const Field& f) {
    const Rep original = f.rep[0];
    Field hat = f.rep[0] == Rep::frequency ? f : transform(f, {0}, Direction::forward);
    const GridSpec& g = *f.grid;
    for (int64_t i = 0; i < g.total(); ++i) {
        const int64_t it = (i / g.stride(0)) % g.size(0);
        hat.data[static_cast<size_t>(i)] *= cplx(0.0, g.freq(0, it));
    }
    if (original == Rep::physical) hat = transform(hat, {0}, Direction::inverse);
    return hat;
}

double frac_norm(const Field& f, double s, AxisClass axis) {
    if (s < 0.0) throw FieldError("frac_norm: order s must be nonnegative");
    Field hat = to_rep(f, axis, Rep::frequency);
    const GridSpec& g = *f.grid;
    double acc = 0.0;
    for (int64_t i = 0; i < g.total(); ++i) {
        const double w2 = freq_sq(g, axis, i);
        const double weight = s == 0.0 ? 1.0 : std::pow(w2, 0.5 * s);
        acc += weight * weight * std::norm(hat.data[static_cast<size_t>(i)]);
    }
    return std::sqrt(acc);
}

double gain_exponent(double beta) {
    if (beta <= 0.0 || beta > 1.0) throw FieldError("beta must lie in (0,1]");
    return 2.0 * beta / (1.0 + 2.0 * beta);
}

double high_band_energy_fraction(const Field& f) {
    Field hat = to_rep_all(f, Rep::frequency);
    const GridSpec& g = *f.grid;
    double total = 0.0, high = 0.0;
    std::vector<int64_t> idx;
    for (int64_t i = 0; i < g.total(); ++i) {
        const double e = std::norm(hat.data[static_cast<size_t>(i)]);
        total += e;
        g.unflatten(i, idx);
        for (int a = 0; a < g.axis_count(); ++a) {
            const int64_t half = g.size(a) / 2;
            if (std::abs(g.freq_index(a, idx[a])) > (2 * half) / 3) {
                high += e;
                break;
            }
        }
    }
    return total == 0.0 ? 0.0 : high / total;
}

}  // namespace hypo
