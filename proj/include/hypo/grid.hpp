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

#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hypo {

// Axis layout of every lattice: axis 0 is time, axes 1..n are position,
// axes n+1..2n are velocity.  Row-major storage, last axis fastest.
enum class AxisClass : uint8_t { time = 0, position = 1, velocity = 2 };

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Periodic lattice over (t, x, v).  Time and position coordinates start at 0;
// velocity is centered on the box so that the transport phase k.v is odd.
class GridSpec {
  public:
    // nt == 1 is the time-collapsed slice case used for solver state and
    // single-time snapshots; make_grid itself rejects it.
    GridSpec(int n, int64_t nt, int64_t nx, int64_t nv, double lt, double lx,
             double lv);

    int n() const { return n_; }
    int axis_count() const { return 1 + 2 * n_; }
    int64_t size(int axis) const { return sizes_.at(axis); }
    double length(int axis) const { return lengths_.at(axis); }
    int64_t total() const { return total_; }
    int64_t stride(int axis) const { return strides_.at(axis); }

    AxisClass axis_class(int axis) const {
        if (axis == 0) return AxisClass::time;
        return axis <= n_ ? AxisClass::position : AxisClass::velocity;
    }
    std::vector<int> axes_of(AxisClass c) const;

    // Signed frequency index in {-N/2, ..., N/2-1}, FFT storage order.
    int64_t freq_index(int axis, int64_t i) const {
        if (size(axis) == 1) return 0;
        const int64_t half = size(axis) / 2;
        return i < half ? i : i - size(axis);
    }
    // Frequency lattice value 2*pi/L * signed index.
    double freq(int axis, int64_t i) const {
        return freq_step(axis) * static_cast<double>(freq_index(axis, i));
    }
    double freq_step(int axis) const {
        return 2.0 * std::numbers::pi / length(axis);
    }
    // Physical coordinate; velocity axes are centered at the origin.
    double coord(int axis, int64_t i) const {
        const double step = length(axis) / static_cast<double>(size(axis));
        double c = step * static_cast<double>(i);
        if (axis_class(axis) == AxisClass::velocity) c -= 0.5 * length(axis);
        return c;
    }

    int64_t nt() const { return size(0); }
    int64_t nx() const { return size(1); }
    int64_t nv() const { return size(1 + n_); }
    double lt() const { return length(0); }
    double lx() const { return length(1); }
    double lv() const { return length(1 + n_); }

    bool same_shape(const GridSpec& o) const {
        return n_ == o.n_ && sizes_ == o.sizes_ && lengths_ == o.lengths_;
    }

    // decompose flat index into per-axis indices
    void unflatten(int64_t flat, std::vector<int64_t>& idx) const {
        idx.resize(axis_count());
        for (int a = 0; a < axis_count(); ++a) {
            idx[a] = (flat / strides_[a]) % sizes_[a];
        }
    }

  private:
    int n_;
    std::vector<int64_t> sizes_;
    std::vector<double> lengths_;
    std::vector<int64_t> strides_;
    int64_t total_;
};

using GridPtr = std::shared_ptr<const GridSpec>;

// Memory budget for a single field, in bytes (16 bytes per complex sample).
inline constexpr int64_t kGridMemoryBudget = int64_t(4) << 30;

GridPtr make_grid(int n, int64_t nt, int64_t nx, int64_t nv, double lt,
                  double lx, double lv);

}  // namespace hypo
