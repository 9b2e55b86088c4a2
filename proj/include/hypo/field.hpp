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

#include <complex>
#include <vector>

#include "hypo/grid.hpp"

namespace hypo {

using cplx = std::complex<double>;

enum class Rep : uint8_t { physical = 0, frequency = 1 };

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complex samples on a GridSpec lattice, with a per-axis physical/frequency
// representation flag.
struct Field {
    GridPtr grid;
    std::vector<Rep> rep;
    std::vector<cplx> data;

    Field() = default;
    explicit Field(GridPtr g, Rep r = Rep::physical)
        : grid(std::move(g)),
          rep(grid->axis_count(), r),
          data(grid->total(), cplx(0.0, 0.0)) {}

    int64_t size() const { return static_cast<int64_t>(data.size()); }
    cplx& operator[](int64_t i) { return data[i]; }
    const cplx& operator[](int64_t i) const { return data[i]; }

    bool rep_is(AxisClass c, Rep r) const {
        for (int a : grid->axes_of(c)) {
            if (rep[a] != r) return false;
        }
        return true;
    }
};

enum class Direction { forward, inverse };

// Unitary DFT over the requested axes, in place on a copy.  Each axis must
// currently be in the opposite representation.
Field transform(const Field& f, const std::vector<int>& axes, Direction dir);

// Convenience: move all axes of the given classes to the target representation
// (axes already there are left alone).
Field to_rep(const Field& f, AxisClass c, Rep target);
Field to_rep_all(const Field& f, Rep target);

// Discrete L2 inner product, conjugate-linear in the second argument.
// Unitary transforms make this representation independent.
cplx inner(const Field& a, const Field& b);

double l2_norm(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const cplx& c, const Field& f);

}  // namespace hypo
