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

#include <cmath>
#include <numbers>

#include "hypo/model.hpp"
#include "hypo/rng.hpp"

namespace hypo::testing {

inline double smooth_bump(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

struct Manufactured {
    GridPtr grid;
    Field f;    // t physical, x and v frequency
    Field g;    // same representation
    Field f0;   // time slice at t = 0
    ModelParams params;
};

struct ManufacturedSpec {
    int64_t nt = 8, nx = 32, nv = 128;
    double horizon = 0.05;
    int kmax = 4;       // occupied x modes
    int ximax = 6;      // velocity-profile oscillation range
    int tmodes = 3;     // time-polynomial band
    double width = 0.35;  // bump support as a fraction of the v box
    double beta = 1.0;
    uint64_t seed = 7;
};

// Time-periodic solution with compactly supported velocity profiles and its
// exact right-hand side; the geometry keeps the Fourier-side shear on the
// lattice (one cell per x-mode index per output interval).
inline Manufactured make_manufactured(const ManufacturedSpec& ms) {
    const double lv = 2.0 * std::numbers::pi;
    const double interval = ms.horizon / static_cast<double>(ms.nt);
    const double lx = interval * lv;
    Manufactured m;
    m.grid = make_grid(1, ms.nt, ms.nx, ms.nv, ms.horizon, lx, lv);
    m.params.beta = ms.beta;

    Field f(m.grid);
    f.rep[1] = Rep::frequency;
    const GridSpec& g = *m.grid;
    Rng rng(ms.seed);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int kk = -ms.kmax; kk <= ms.kmax; ++kk) {
        const int64_t jx = (kk + ms.nx) % ms.nx;
        const int xi0 =
            static_cast<int>(std::floor(rng.uniform() * (2 * ms.ximax + 1))) -
            ms.ximax;
        const cplx amp(rng.gaussian(), rng.gaussian());
        std::vector<cplx> tpoly(static_cast<size_t>(ms.nt));
        for (int mm = -ms.tmodes; mm <= ms.tmodes; ++mm) {
            const cplx c(rng.gaussian(), rng.gaussian());
            for (int64_t it = 0; it < ms.nt; ++it) {
                const double ph = mm * two_pi * it / static_cast<double>(ms.nt);
                tpoly[it] += c * cplx(std::cos(ph), std::sin(ph));
            }
        }
        for (int64_t it = 0; it < ms.nt; ++it) {
            for (int64_t q = 0; q < ms.nv; ++q) {
                const double v = g.coord(2, q);
                const double prof = smooth_bump(v / (ms.width * lv));
                const cplx osc(std::cos(xi0 * v), std::sin(xi0 * v));
                f.data[it * g.stride(0) + jx * g.stride(1) + q] =
                    amp * tpoly[it] * prof * osc;
            }
        }
    }
    m.f = to_rep(f, AxisClass::velocity, Rep::frequency);
    m.g = manufactured_rhs(m.f, m.params).g;
    m.f0 = extract_time_slice(m.f, 0);
    return m;
}

inline double rel_l2(const Field& a, const Field& b) {
    return l2_norm(a - b) / l2_norm(b);
}

}  // namespace hypo::testing
