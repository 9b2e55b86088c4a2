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

#include "hypo/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hypo/model.hpp"

namespace hypo {

namespace {

double antiderivative(double u, double beta) {
    return std::copysign(std::pow(std::abs(u), 2.0 * beta + 1.0), u) /
           (2.0 * beta + 1.0);
}

double simpson(double a, double fa, double m, double fm, double b, double fb) {
    (void)m;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, lm, flm, m, fm);
    const double right = simpson(m, fm, rm, frm, b, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

constexpr double kGlNode[4] = {-0.8611363115940526, -0.3399810435848563,
                              0.3399810435848563, 0.8611363115940526};
constexpr double kGlWeight[4] = {0.34785484513745385, 0.6521451548625461,
                                0.6521451548625461, 0.34785484513745385};

}  // namespace

double xi_exponent_integral(double xi, double k, double dt, double beta) {
    if (k == 0.0) return std::pow(std::abs(xi), 2.0 * beta) * dt;
    return (antiderivative(xi + dt * k, beta) - antiderivative(xi, beta)) / k;
}

double xi_exponent_integral_quad(double xi, double k, double dt, double beta,
                                 double tol) {
    auto f = [&](double s) { return std::pow(std::abs(xi + s * k), 2.0 * beta); };
    const double fa = f(0.0), fm = f(0.5 * dt), fb = f(dt);
    const double whole = simpson(0.0, fa, 0.5 * dt, fm, dt, fb);
    return adaptive_simpson(f, 0.0, dt, fa, fm, fb, whole, tol, 48);
}

Field duhamel_oracle(const Field& g, double beta, const Field* f0,
                     const DuhamelOptions& opts, DuhamelReport* report) {
    const GridSpec& grid = *g.grid;
    if (grid.n() != 1) {
        throw DuhamelError("duhamel_oracle supports n = 1 only");
    }
    const int64_t nt = grid.nt(), nx = grid.nx(), nv = grid.nv();
    const double interval = grid.lt() / static_cast<double>(nt);
    const double cells = interval * grid.lv() / grid.lx();
    if (!opts.allow_fractional_shift &&
        std::abs(cells - std::llround(cells)) > 1e-9 * std::max(1.0, cells)) {
        throw DuhamelError(
            "grid time spacing L_t/N_t = " + std::to_string(interval) +
            " shears off the frequency lattice; admissible spacings are the "
            "integer multiples of L_x/L_v = " +
            std::to_string(grid.lx() / grid.lv()));
    }

    // source, time-spectral with (x freq, v phys) slices for interpolation
    Field ghat = to_rep(g, AxisClass::time, Rep::frequency);
    ghat = to_rep(ghat, AxisClass::position, Rep::frequency);
    ghat = to_rep(ghat, AxisClass::velocity, Rep::physical);
    const int64_t slice_len = grid.stride(0);

    // quadrature node offsets within one marching interval
    std::vector<double> seg;
    for (int i = 0; i <= opts.uniform_segments; ++i) {
        seg.push_back(0.5 * interval * i / opts.uniform_segments);
    }
    for (int i = 0; i < opts.geometric_segments; ++i) {
        seg.push_back(interval - 0.5 * (interval - seg.back()));
    }
    seg.push_back(interval);
    struct Node {
        double offset;  // position within the interval
        double weight;  // Gauss-Legendre weight times half segment length
    };
    std::vector<Node> nodes;
    for (size_t i = 0; i + 1 < seg.size(); ++i) {
        const double h = seg[i + 1] - seg[i];
        for (int j = 0; j < 4; ++j) {
            nodes.push_back({seg[i] + 0.5 * h * (kGlNode[j] + 1.0),
                             0.5 * h * kGlWeight[j]});
        }
    }

    // per-plane tables: damping factors and shear phases, shared by every
    // interval because the node offsets repeat
    std::vector<double> kcol(static_cast<size_t>(nx));
    for (int64_t jx = 0; jx < nx; ++jx) kcol[jx] = grid.freq(1, jx);
    std::vector<double> xival(static_cast<size_t>(nv)), vval(static_cast<size_t>(nv));
    for (int64_t q = 0; q < nv; ++q) {
        xival[q] = grid.freq(2, q);
        vval[q] = grid.coord(2, q);
    }
    auto damping_plane = [&](double span) {
        std::vector<double> e(static_cast<size_t>(nx * nv));
        for (int64_t jx = 0; jx < nx; ++jx) {
            for (int64_t q = 0; q < nv; ++q) {
                e[jx * nv + q] = std::exp(
                    -xi_exponent_integral(xival[q], kcol[jx], span, beta));
            }
        }
        return e;
    };
    auto phase_plane = [&](double span) {
        std::vector<cplx> p(static_cast<size_t>(nx * nv));
        for (int64_t jx = 0; jx < nx; ++jx) {
            for (int64_t q = 0; q < nv; ++q) {
                const double ph = -kcol[jx] * span * vval[q];
                p[jx * nv + q] = cplx(std::cos(ph), std::sin(ph));
            }
        }
        return p;
    };
    const std::vector<double> hom_damp = damping_plane(interval);
    const std::vector<cplx> hom_phase = phase_plane(interval);
    std::vector<std::vector<double>> node_damp;
    std::vector<std::vector<cplx>> node_phase;
    for (const Node& nd : nodes) {
        node_damp.push_back(damping_plane(interval - nd.offset));
        node_phase.push_back(phase_plane(interval - nd.offset));
    }

    GridPtr sl = slice_grid(grid);
    auto mixed_slice = [&]() {
        Field s(sl);
        s.rep[1] = Rep::frequency;  // x
        s.rep[2] = Rep::physical;   // v
        return s;
    };
    auto source_at = [&](double t) {
        // trig interpolation of g along the periodic time axis
        Field s = mixed_slice();
        const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
        for (int64_t it = 0; it < nt; ++it) {
            const double ph = grid.freq(0, it) * t;
            const cplx w = scale * cplx(std::cos(ph), std::sin(ph));
            const cplx* src = ghat.data.data() + it * slice_len;
            for (int64_t i = 0; i < slice_len; ++i) s.data[i] += w * src[i];
        }
        return s;
    };

    // initial slice in (x freq, v freq)
    Field cur(sl);
    cur.rep[1] = Rep::frequency;
    cur.rep[2] = Rep::frequency;
    if (f0) {
        if (!f0->grid->same_shape(*sl)) {
            throw DuhamelError("initial datum is not a slice of the grid");
        }
        Field init = to_rep(*f0, AxisClass::position, Rep::frequency);
        init = to_rep(init, AxisClass::velocity, Rep::frequency);
        cur.data = init.data;
    }

    Field out(g.grid);
    out.rep[0] = Rep::physical;
    out.rep[1] = Rep::frequency;
    out.rep[2] = Rep::frequency;
    double containment = 0.0;
    auto record = [&](const Field& slice, int64_t it) {
        std::copy(slice.data.begin(), slice.data.end(),
                  out.data.begin() + it * slice_len);
        double outer = 0.0, total = 0.0;
        const int64_t margin = (7 * nv) / 16;
        for (int64_t jx = 0; jx < nx; ++jx) {
            for (int64_t q = 0; q < nv; ++q) {
                const double m = std::norm(slice.data[jx * nv + q]);
                total += m;
                if (std::abs(grid.freq_index(2, q)) >= margin) outer += m;
            }
        }
        if (total > 0.0) containment = std::max(containment, outer / total);
    };
    record(cur, 0);

    for (int64_t i = 1; i < nt; ++i) {
        const double t0 = static_cast<double>(i - 1) * interval;
        // homogeneous part: shear then damp
        Field nxt = transform(cur, {2}, Direction::inverse);
        for (int64_t j = 0; j < slice_len; ++j) nxt.data[j] *= hom_phase[j];
        nxt = transform(nxt, {2}, Direction::forward);
        for (int64_t j = 0; j < slice_len; ++j) nxt.data[j] *= hom_damp[j];
        // source quadrature
        for (size_t nn = 0; nn < nodes.size(); ++nn) {
            Field s = source_at(t0 + nodes[nn].offset);
            for (int64_t j = 0; j < slice_len; ++j) s.data[j] *= node_phase[nn][j];
            s = transform(s, {2}, Direction::forward);
            const double w = nodes[nn].weight;
            for (int64_t j = 0; j < slice_len; ++j) {
                nxt.data[j] += w * node_damp[nn][j] * s.data[j];
            }
        }
        cur = std::move(nxt);
        record(cur, i);
    }
    if (report) report->containment = containment;
    return out;
}

}  // namespace hypo
