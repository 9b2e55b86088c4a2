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

#include <functional>
#include <optional>

#include "hypo/multiplier.hpp"

namespace hypo {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Diffusion coefficient a = b^2 chi^2 + a_- (optionally b^2 chi + a_-, see
// chi_squared), built from a smooth periodic b and a compactly supported bump
// chi with a configurable support margin.
struct Coefficient {
    double a_minus = 0.1;
    double b_base = 1.0;
    double b_amplitude = 0.5;
    double chi_support = 0.7;  // fraction of the box carrying the bump
    bool chi_squared = true;   // false selects a = b^2 chi + a_-

    double eval_b(const GridSpec& g, const std::vector<int64_t>& idx) const;
    double eval_chi(const GridSpec& g, const std::vector<int64_t>& idx) const;
    double eval_a(const GridSpec& g, const std::vector<int64_t>& idx) const;

    // a sampled on the whole lattice
    std::vector<double> sample(const GridSpec& g) const;
    // b*chi sampled on the whole lattice (the commutator modifier)
    std::vector<double> sample_modifier(const GridSpec& g) const;
};

struct ModelParams {
    double beta = 1.0;
    // empty -> constant coefficient a == 1
    std::optional<Coefficient> coefficient;

    bool constant_coefficient() const { return !coefficient.has_value(); }
    MultiplierSpec diffusion_symbol() const {
        return MultiplierSpec{SymbolKind::frac_v, beta, 0.0};
    }
};

struct RhsResult {
    Field g;
    bool aliasing_warning = false;  // top third of some axis carries energy
};

// g = dt f + v.grad_x f + a |D_v|^(2 beta) f, all derivatives spectral, with
// the time axis treated as periodic.
RhsResult manufactured_rhs(const Field& f, const ModelParams& params);

// || dt f + v.grad_x f + a |D_v|^(2 beta) f - g || / max(||f||, ||g||)
double check_residual(const Field& f, const Field& g, const ModelParams& params);

// Transport-only residual || dt f + v.grad_x f - g || / max(||f||, ||g||),
// the precondition gate of the averaging-lemma checkers.
double transport_residual(const Field& f, const Field& g);

// ---------------------------------------------------------------------------
// Time stepping.  State lives on a time-collapsed slice grid (N_t == 1) in
// the mixed representation: position axes frequency, velocity axes physical.

GridPtr slice_grid(const GridSpec& g);
Field extract_time_slice(const Field& f, int64_t it);

struct StrangOptions {
    double diffusion_tol = 1e-10;
    int diffusion_max_iter = 200;
    bool dealias = false;   // 2/3-rule filter after pointwise products
    bool disable_diffusion = false;  // internal pure-transport test mode
};

struct CauchyProblem {
    Field f0;      // slice field over (x, v)
    Field source;  // field over (t, x, v); times cover [0, L_t) uniformly
    double horizon = 1.0;
    double dt = 1.0 / 64.0;
};

class StrangStepper {
  public:
    StrangStepper(GridPtr slice, const ModelParams& params, double dt,
                  const Field* source, StrangOptions opts = {});

    // One Strang step from time t: half transport, implicit/exact diffusion
    // with midpoint source, half transport.
    Field step(const Field& u, double t) const;

    int last_iterations() const { return last_iters_; }

  private:
    Field diffusion_stage(const Field& u, double t) const;
    Field diffusion_implicit(const Field& u) const;
    Field transport_half(const Field& u) const;
    Field source_slice_at(double t) const;

    GridPtr slice_;
    ModelParams params_;
    double dt_;
    const Field* source_;  // full (t,x,v) field on the parent grid, or null
    StrangOptions opts_;
    std::vector<double> transport_phase_;  // k.v on the slice lattice
    std::vector<double> symbol_;           // |xi|^(2 beta) on the slice lattice
    std::vector<double> coeff_;            // a(x, v) on the slice lattice
    Field source_hat_;  // source in (t freq, x freq, v phys) representation
    mutable int last_iters_ = 0;
};

struct Trajectory {
    GridPtr slice;
    std::vector<double> times;
    std::vector<Field> snapshots;  // mixed representation slices
    std::vector<double> norms;
};

Trajectory solve_cauchy(const CauchyProblem& problem, const ModelParams& params,
                        StrangOptions opts = {}, int64_t snapshot_stride = 1);

// Assemble a (t,x,v) field from N_t uniformly spaced trajectory snapshots.
Field trajectory_to_field(const Trajectory& traj, const GridSpec& full_grid);

}  // namespace hypo
