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

#include "hypo/model.hpp"

#include <algorithm>
#include <cmath>

namespace hypo {

namespace {

// C-infinity bump on (-1,1), equal to 1 at 0.
double bump(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

}  // namespace

double Coefficient::eval_b(const GridSpec& g, const std::vector<int64_t>& idx) const {
    double mod = 1.0;
    const double two_pi = 2.0 * std::numbers::pi;
    // smooth periodic modulation over t and the position axes
    mod *= std::cos(two_pi * g.coord(0, idx[0]) / g.length(0));
    for (int a : g.axes_of(AxisClass::position)) {
        mod *= std::cos(two_pi * g.coord(a, idx[a]) / g.length(a));
    }
    const double v = b_base + b_amplitude * mod;
    return v < 0.0 ? 0.0 : v;
}

double Coefficient::eval_chi(const GridSpec& g, const std::vector<int64_t>& idx) const {
    double val = 1.0;
    for (int a : g.axes_of(AxisClass::velocity)) {
        const double half_support = 0.5 * chi_support * g.length(a);
        val *= bump(g.coord(a, idx[a]) / half_support);
    }
    return val;
}

double Coefficient::eval_a(const GridSpec& g, const std::vector<int64_t>& idx) const {
    const double b = eval_b(g, idx);
    const double chi = eval_chi(g, idx);
    return b * b * (chi_squared ? chi * chi : chi) + a_minus;
}

std::vector<double> Coefficient::sample(const GridSpec& g) const {
    if (a_minus <= 0.0) throw ModelError("a_minus must be strictly positive");
    std::vector<double> out(static_cast<size_t>(g.total()));
    std::vector<int64_t> idx;
    for (int64_t i = 0; i < g.total(); ++i) {
        g.unflatten(i, idx);
        out[static_cast<size_t>(i)] = eval_a(g, idx);
    }
    return out;
}

std::vector<double> Coefficient::sample_modifier(const GridSpec& g) const {
    std::vector<double> out(static_cast<size_t>(g.total()));
    std::vector<int64_t> idx;
    for (int64_t i = 0; i < g.total(); ++i) {
        g.unflatten(i, idx);
        out[static_cast<size_t>(i)] = eval_b(g, idx) * eval_chi(g, idx);
    }
    return out;
}

RhsResult manufactured_rhs(const Field& f, const ModelParams& params) {
    RhsResult out;
    out.aliasing_warning = high_band_energy_fraction(f) > 1e-8;

    Field g = apply_time_derivative(f) + apply_transport(f);

    Field diff = to_rep(f, AxisClass::velocity, Rep::frequency);
    diff = apply_multiplier(diff, params.diffusion_symbol());
    // back to f's representation on the velocity axes
    for (int a : f.grid->axes_of(AxisClass::velocity)) {
        if (f.rep[a] == Rep::physical) diff = transform(diff, {a}, Direction::inverse);
    }
    if (!params.constant_coefficient()) {
        // pointwise product in the physical representation
        Field phys = to_rep_all(diff, Rep::physical);
        const auto a = params.coefficient->sample(*f.grid);
        for (int64_t i = 0; i < phys.size(); ++i) {
            phys.data[static_cast<size_t>(i)] *= a[static_cast<size_t>(i)];
        }
        // restore representation
        for (int ax = 0; ax < f.grid->axis_count(); ++ax) {
            if (f.rep[ax] == Rep::frequency) {
                phys = transform(phys, {ax}, Direction::forward);
            }
        }
        diff = std::move(phys);
    }
    out.g = g + diff;
    return out;
}

double check_residual(const Field& f, const Field& g, const ModelParams& params) {
    const double nf = l2_norm(f);
    const double ng = l2_norm(g);
    const double denom = std::max(nf, ng);
    if (denom == 0.0) return 0.0;
    Field lhs = manufactured_rhs(f, params).g;
    Field ghat = g;
    // align representations
    for (int a = 0; a < f.grid->axis_count(); ++a) {
        if (ghat.rep[a] != lhs.rep[a]) {
            ghat = transform(ghat, {a},
                             lhs.rep[a] == Rep::frequency ? Direction::forward
                                                          : Direction::inverse);
        }
    }
    return l2_norm(lhs - ghat) / denom;
}

double transport_residual(const Field& f, const Field& g) {
    const double nf = l2_norm(f);
    const double ng = l2_norm(g);
    const double denom = std::max(nf, ng);
    if (denom == 0.0) return 0.0;
    Field lhs = apply_time_derivative(f) + apply_transport(f);
    Field ghat = g;
    for (int a = 0; a < f.grid->axis_count(); ++a) {
        if (ghat.rep[a] != lhs.rep[a]) {
            ghat = transform(ghat, {a},
                             lhs.rep[a] == Rep::frequency ? Direction::forward
                                                          : Direction::inverse);
        }
    }
    return l2_norm(lhs - ghat) / denom;
}

GridPtr slice_grid(const GridSpec& g) {
    return std::make_shared<const GridSpec>(g.n(), 1, g.nx(), g.nv(), g.lt(),
                                            g.lx(), g.lv());
}

Field extract_time_slice(const Field& f, int64_t it) {
    GridPtr sl = slice_grid(*f.grid);
    Field out(sl);
    for (int a = 1; a < f.grid->axis_count(); ++a) out.rep[a] = f.rep[a];
    out.rep[0] = Rep::physical;
    const int64_t block = f.grid->stride(0);
    std::copy(f.data.begin() + it * block, f.data.begin() + (it + 1) * block,
              out.data.begin());
    return out;
}

// --------------------------------------------------------------------------

StrangStepper::StrangStepper(GridPtr slice, const ModelParams& params, double dt,
                             const Field* source, StrangOptions opts)
    : slice_(std::move(slice)),
      params_(params),
      dt_(dt),
      source_(source),
      opts_(opts) {
    const GridSpec& g = *slice_;
    transport_phase_.resize(static_cast<size_t>(g.total()));
    symbol_.resize(static_cast<size_t>(g.total()));
    const MultiplierSpec q = params_.diffusion_symbol();
    for (int64_t i = 0; i < g.total(); ++i) {
        double kv = 0.0;
        for (int d = 0; d < g.n(); ++d) {
            const int ax_x = 1 + d;
            const int ax_v = 1 + g.n() + d;
            const int64_t ix = (i / g.stride(ax_x)) % g.size(ax_x);
            const int64_t iv = (i / g.stride(ax_v)) % g.size(ax_v);
            kv += g.freq(ax_x, ix) * g.coord(ax_v, iv);
        }
        transport_phase_[static_cast<size_t>(i)] = kv;
        symbol_[static_cast<size_t>(i)] =
            symbol_value(q, 0.0, freq_sq(g, AxisClass::velocity, i));
    }
    if (!params_.constant_coefficient()) {
        coeff_ = params_.coefficient->sample(g);
    }
    if (source_) {
        source_hat_ = to_rep(*source_, AxisClass::time, Rep::frequency);
        source_hat_ = to_rep(source_hat_, AxisClass::position, Rep::frequency);
        source_hat_ = to_rep(source_hat_, AxisClass::velocity, Rep::physical);
    }
}

Field StrangStepper::transport_half(const Field& u) const {
    Field out = u;
    for (int64_t i = 0; i < out.size(); ++i) {
        const double phase = -transport_phase_[static_cast<size_t>(i)] * 0.5 * dt_;
        out.data[static_cast<size_t>(i)] *= cplx(std::cos(phase), std::sin(phase));
    }
    return out;
}

Field StrangStepper::source_slice_at(double t) const {
    // band-limited evaluation of the source's time interpolant at arbitrary t,
    // assembled directly in the stepper's mixed representation
    const GridSpec& parent = *source_hat_.grid;
    Field out(slice_);
    for (int a = 1; a < slice_->axis_count(); ++a) {
        out.rep[a] = slice_->axis_class(a) == AxisClass::position
                         ? Rep::frequency
                         : Rep::physical;
    }
    const int64_t nt = parent.nt();
    const int64_t block = parent.stride(0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    for (int64_t it = 0; it < nt; ++it) {
        const double phase = parent.freq(0, it) * t;
        const cplx w = scale * cplx(std::cos(phase), std::sin(phase));
        const cplx* src = source_hat_.data.data() + it * block;
        for (int64_t i = 0; i < block; ++i) out.data[static_cast<size_t>(i)] += w * src[i];
    }
    return out;
}

Field StrangStepper::diffusion_implicit(const Field& u) const {
    // Richardson iteration for (I + dt a Q) w = u with the constant-in-each-
    // column preconditioner I + dt a_mid Q, a_mid the column midrange of a.
    // The velocity block is contiguous (last axes), so columns are blocks.
    const GridSpec& g = *slice_;
    int64_t vol_v = 1;
    for (int a : g.axes_of(AxisClass::velocity)) vol_v *= g.size(a);
    const int64_t cols = g.total() / vol_v;
    std::vector<double> a_mid(static_cast<size_t>(cols));
    for (int64_t c = 0; c < cols; ++c) {
        double lo = coeff_[static_cast<size_t>(c * vol_v)];
        double hi = lo;
        for (int64_t j = 1; j < vol_v; ++j) {
            const double a = coeff_[static_cast<size_t>(c * vol_v + j)];
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        a_mid[static_cast<size_t>(c)] = 0.5 * (lo + hi);
    }

    Field rhs = to_rep(u, AxisClass::position, Rep::physical);
    const double unorm = l2_norm(rhs);
    auto apply_op = [&](const Field& w) {
        Field qw = to_rep(w, AxisClass::velocity, Rep::frequency);
        for (int64_t i = 0; i < qw.size(); ++i) {
            qw.data[static_cast<size_t>(i)] *= symbol_[static_cast<size_t>(i)];
        }
        qw = to_rep(qw, AxisClass::velocity, Rep::physical);
        Field out = w;
        for (int64_t i = 0; i < out.size(); ++i) {
            out.data[static_cast<size_t>(i)] +=
                dt_ * coeff_[static_cast<size_t>(i)] * qw.data[static_cast<size_t>(i)];
        }
        return out;
    };
    auto precondition = [&](const Field& r) {
        Field z = to_rep(r, AxisClass::velocity, Rep::frequency);
        for (int64_t c = 0; c < cols; ++c) {
            for (int64_t j = 0; j < vol_v; ++j) {
                const int64_t i = c * vol_v + j;
                z.data[static_cast<size_t>(i)] /=
                    1.0 + dt_ * a_mid[static_cast<size_t>(c)] *
                              symbol_[static_cast<size_t>(i)];
            }
        }
        return to_rep(z, AxisClass::velocity, Rep::physical);
    };

    Field w = precondition(rhs);
    int iter = 0;
    for (; iter < opts_.diffusion_max_iter; ++iter) {
        Field resid = rhs - apply_op(w);
        const double rn = l2_norm(resid);
        if (rn <= opts_.diffusion_tol * std::max(unorm, 1e-300)) break;
        Field dz = precondition(resid);
        for (int64_t i = 0; i < w.size(); ++i) {
            w.data[static_cast<size_t>(i)] += dz.data[static_cast<size_t>(i)];
        }
    }
    if (iter >= opts_.diffusion_max_iter) {
        throw ModelError("implicit diffusion solve failed to converge");
    }
    last_iters_ = iter;
    return to_rep(w, AxisClass::position, Rep::frequency);
}

Field StrangStepper::diffusion_stage(const Field& u, double t) const {
    Field work = u;
    if (!opts_.disable_diffusion) {
        if (params_.constant_coefficient()) {
            // exact diffusion semigroup, diagonal in the velocity frequencies
            work = to_rep(work, AxisClass::velocity, Rep::frequency);
            for (int64_t i = 0; i < work.size(); ++i) {
                work.data[static_cast<size_t>(i)] *=
                    std::exp(-symbol_[static_cast<size_t>(i)] * dt_);
            }
            work = to_rep(work, AxisClass::velocity, Rep::physical);
            last_iters_ = 0;
        } else {
            work = diffusion_implicit(work);
        }
    }
    if (source_) {
        // midpoint source with a half-step of the diffusion integrating factor
        Field s = source_slice_at(t + 0.5 * dt_);
        if (!opts_.disable_diffusion && params_.constant_coefficient()) {
            s = to_rep(s, AxisClass::velocity, Rep::frequency);
            for (int64_t i = 0; i < s.size(); ++i) {
                s.data[static_cast<size_t>(i)] *=
                    std::exp(-symbol_[static_cast<size_t>(i)] * 0.5 * dt_);
            }
            s = to_rep(s, AxisClass::velocity, Rep::physical);
        }
        for (int64_t i = 0; i < work.size(); ++i) {
            work.data[static_cast<size_t>(i)] += dt_ * s.data[static_cast<size_t>(i)];
        }
    }
    return work;
}

Field StrangStepper::step(const Field& u, double t) const {
    Field mid = transport_half(u);
    mid = diffusion_stage(mid, t);
    return transport_half(mid);
}

Trajectory solve_cauchy(const CauchyProblem& problem, const ModelParams& params,
                        StrangOptions opts, int64_t snapshot_stride) {
    if (problem.horizon <= 0.0) throw ModelError("horizon must be positive");
    const int64_t steps =
        static_cast<int64_t>(std::llround(problem.horizon / problem.dt));
    if (steps <= 0 ||
        std::abs(steps * problem.dt - problem.horizon) > 1e-9 * problem.horizon) {
        throw ModelError("dt must divide the horizon");
    }
    GridPtr sl = problem.f0.grid;
    StrangStepper stepper(sl, params, problem.dt,
                          problem.source.grid ? &problem.source : nullptr, opts);
    Field u = to_rep(to_rep(problem.f0, AxisClass::position, Rep::frequency),
                     AxisClass::velocity, Rep::physical);
    Trajectory traj;
    traj.slice = sl;
    traj.times.push_back(0.0);
    traj.norms.push_back(l2_norm(u));
    traj.snapshots.push_back(u);
    for (int64_t p = 0; p < steps; ++p) {
        const double t = static_cast<double>(p) * problem.dt;
        u = stepper.step(u, t);
        const double tn = static_cast<double>(p + 1) * problem.dt;
        if ((p + 1) % snapshot_stride == 0 || p + 1 == steps) {
            traj.times.push_back(tn);
            traj.norms.push_back(l2_norm(u));
            traj.snapshots.push_back(u);
        }
    }
    return traj;
}

Field trajectory_to_field(const Trajectory& traj, const GridSpec& full_grid) {
    const int64_t nt = full_grid.nt();
    Field out(std::make_shared<const GridSpec>(full_grid));
    const int64_t block = full_grid.stride(0);
    if (static_cast<int64_t>(traj.snapshots.size()) < nt) {
        throw ModelError("trajectory has fewer snapshots than N_t");
    }
    // pick nt snapshots uniformly over [0, horizon)
    const int64_t avail = static_cast<int64_t>(traj.snapshots.size()) - 1;
    for (int64_t it = 0; it < nt; ++it) {
        const int64_t pick = it * avail / nt;
        Field slice = to_rep(to_rep(traj.snapshots[static_cast<size_t>(pick)],
                                    AxisClass::position, Rep::physical),
                             AxisClass::velocity, Rep::physical);
        std::copy(slice.data.begin(), slice.data.end(),
                  out.data.begin() + it * block);
    }
    return out;
}

}  // namespace hypo
