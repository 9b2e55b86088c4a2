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

#include "hypo/field.hpp"

namespace hypo {

struct DuhamelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuhamelOptions {
    // Source quadrature: uniform segments on the first half of each marching
    // interval, then geometrically halving segments toward the interval end
    // (where the integrating factor is stiff), Gauss-Legendre 4 per segment.
    int uniform_segments = 4;
    int geometric_segments = 12;
    // Permit per-interval frequency shifts that are not whole lattice cells
    // (realized by band-limited phase interpolation; exact for data whose
    // velocity profile is compactly supported inside the box).
    bool allow_fractional_shift = false;
};

struct DuhamelReport {
    // Largest fraction of spectral mass seen in the outer 1/8 of the
    // xi-window over the marched trajectory; near-1 values mean the
    // characteristic flow pushed content against the frequency boundary.
    double containment = 0.0;
};

// int_0^dt |xi + s k|^(2 beta) ds, closed form via the antiderivative of
// |u|^(2 beta).
double xi_exponent_integral(double xi, double k, double dt, double beta);

// Same integral by adaptive Simpson quadrature (validation path).
double xi_exponent_integral_quad(double xi, double k, double dt, double beta,
                                 double tol);

// Exact constant-coefficient solve (a == 1) by marching the Fourier-side
// characteristics: per x-mode k, f'(t, xi) follows xi_s = xi + (t-s) k with
// the integrating factor E = exp(-int |xi_s|^(2 beta)).  g lives on the full
// (t,x,v) grid (any representation); f0 is a time-collapsed slice or null
// for a zero initial datum.  Output: t physical, x and v frequency, sampled
// at the grid times.  1-d only.
Field duhamel_oracle(const Field& g, double beta, const Field* f0,
                     const DuhamelOptions& opts = {},
                     DuhamelReport* report = nullptr);

}  // namespace hypo
