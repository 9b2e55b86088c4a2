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

#include <string>

#include "hypo/field.hpp"

namespace hypo {

// Scalar frequency symbols.
//   frac_v:        |xi|^(2 beta)                                  (velocity only)
//   aniso:         (|xi|^2 + |k|^(2/(1+2 beta)))^beta             (k and xi)
//   bracket_aniso: (delta + |xi|^2 + <k>^(2/(1+2 beta)))^beta     (k and xi)
// with <k> = sqrt(1 + |k|^2).
enum class SymbolKind { frac_v, aniso, bracket_aniso };

struct MultiplierSpec {
    SymbolKind kind = SymbolKind::frac_v;
    double beta = 1.0;
    double delta = 0.0;  // bracket_aniso only

    bool reads_position() const { return kind != SymbolKind::frac_v; }
};

std::string symbol_name(SymbolKind k);

// Pointwise symbol value at squared frequency moduli |k|^2 and |xi|^2.
double symbol_value(const MultiplierSpec& spec, double k2, double xi2);

// Symbol sampled on the whole lattice (real, nonnegative).
std::vector<double> eval_symbol(const MultiplierSpec& spec, const GridSpec& grid);

// Pointwise product with the symbol; axes the symbol reads must be in
// frequency representation.
Field apply_multiplier(const Field& f, const MultiplierSpec& spec);

// Squared frequency modulus over the axes of one class at a flat lattice index.
double freq_sq(const GridSpec& grid, AxisClass c, int64_t flat);

// v . grad_x, applied as multiplication by i k.v in the mixed representation
// (position axes in frequency, velocity axes physical).  The result is
// returned with the input's representation.
Field apply_transport(const Field& f);

// d/dt over the periodic time axis, applied spectrally.
Field apply_time_derivative(const Field& f);

// L2 norm of |freq|^s * fhat over the axes of one class; the field is
// transformed to frequency on those axes as needed.
double frac_norm(const Field& f, double s, AxisClass axis);

// 2 beta / (1 + 2 beta), the position-regularity gain exponent.
double gain_exponent(double beta);

// Fraction of spectral energy carried by the top third of any frequency axis;
// used as an aliasing warning gate.
double high_band_energy_fraction(const Field& f);

}  // namespace hypo
