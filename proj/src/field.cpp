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

#include "hypo/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace hypo {

namespace {

// FFTW plans keyed by transform geometry.  Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can be executed on any buffer;
// estimate-mode planning is deterministic.
class PlanCache {
  public:
    fftw_plan get(int64_t len, int64_t stride, int64_t outer, int64_t outer_dist,
                  int64_t inner, int sign) {
        const auto key = std::make_tuple(len, stride, outer, outer_dist, inner, sign);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        fftw_iodim64 dim{len, stride, stride};
        fftw_iodim64 howmany[2] = {{outer, outer_dist, outer_dist}, {inner, 1, 1}};
        std::vector<fftw_complex> scratch(static_cast<size_t>(outer) * outer_dist);
        fftw_plan p = fftw_plan_guru64_dft(
            1, &dim, 2, howmany, scratch.data(), scratch.data(), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw FieldError("fftw plan creation failed");
        cache_.emplace(key, p);
        return p;
    }

  private:
    std::map<std::tuple<int64_t, int64_t, int64_t, int64_t, int64_t, int>, fftw_plan>
        cache_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void check_compatible(const Field& a, const Field& b) {
    if (!a.grid || !b.grid || !a.grid->same_shape(*b.grid)) {
        throw FieldError("fields live on different grids");
    }
    if (a.rep != b.rep) throw FieldError("fields are in different representations");
}

}  // namespace

Field transform(const Field& f, const std::vector<int>& axes, Direction dir) {
    Field out = f;
    const GridSpec& g = *f.grid;
    const Rep from = dir == Direction::forward ? Rep::physical : Rep::frequency;
    const Rep to = dir == Direction::forward ? Rep::frequency : Rep::physical;
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;

    for (int axis : axes) {
        if (axis < 0 || axis >= g.axis_count()) throw FieldError("axis out of range");
        if (out.rep[axis] != from) {
            throw FieldError("axis already in the target representation");
        }
        const int64_t len = g.size(axis);
        const int64_t stride = g.stride(axis);
        const int64_t outer = g.total() / (len * stride);
        fftw_plan p = plan_cache().get(len, stride, outer, len * stride, stride, sign);
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out.data.data()),
                         reinterpret_cast<fftw_complex*>(out.data.data()));
        const double scale = 1.0 / std::sqrt(static_cast<double>(len));
        for (auto& z : out.data) z *= scale;
        out.rep[axis] = to;
    }
    return out;
}

Field to_rep(const Field& f, AxisClass c, Rep target) {
    std::vector<int> axes;
    for (int a : f.grid->axes_of(c)) {
        if (f.rep[a] != target) axes.push_back(a);
    }
    if (axes.empty()) return f;
    return transform(f, axes,
                     target == Rep::frequency ? Direction::forward
                                              : Direction::inverse);
}

Field to_rep_all(const Field& f, Rep target) {
    Field out = f;
    for (AxisClass c :
         {AxisClass::time, AxisClass::position, AxisClass::velocity}) {
        out = to_rep(out, c, target);
    }
    return out;
}

cplx inner(const Field& a, const Field& b) {
    check_compatible(a, b);
    cplx acc(0.0, 0.0);
    for (int64_t i = 0; i < a.size(); ++i) acc += a.data[i] * std::conj(b.data[i]);
    return acc;
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.data) acc += std::norm(z);
    return std::sqrt(acc);
}

Field operator+(const Field& a, const Field& b) {
    check_compatible(a, b);
    Field out = a;
    for (int64_t i = 0; i < out.size(); ++i) out.data[i] += b.data[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    check_compatible(a, b);
    Field out = a;
    for (int64_t i = 0; i < out.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

Field operator*(const cplx& c, const Field& f) {
    Field out = f;
    for (auto& z : out.data) z *= c;
    return out;
}

}  // namespace hypo
