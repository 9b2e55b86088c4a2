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

#include "hypo/grid.hpp"

#include <string>

namespace hypo {

GridSpec::GridSpec(int n, int64_t nt, int64_t nx, int64_t nv, double lt,
                   double lx, double lv)
    : n_(n) {
    if (n != 1 && n != 2) throw GridError("dimension n must be 1 or 2");
    auto check = [](int64_t nn, const char* what) {
        if (nn < 4 || nn % 2 != 0) {
            throw GridError(std::string(what) +
                            " must be even and at least 4, got " +
                            std::to_string(nn));
        }
    };
    if (nt != 1) check(nt, "N_t");
    check(nx, "N_x");
    check(nv, "N_v");
    if (lt <= 0 || lx <= 0 || lv <= 0) throw GridError("box lengths must be positive");

    sizes_.push_back(nt);
    lengths_.push_back(lt);
    for (int i = 0; i < n; ++i) {
        sizes_.push_back(nx);
        lengths_.push_back(lx);
    }
    for (int i = 0; i < n; ++i) {
        sizes_.push_back(nv);
        lengths_.push_back(lv);
    }
    total_ = 1;
    for (int64_t s : sizes_) total_ *= s;
    if (total_ > kGridMemoryBudget / 16) {
        throw GridError("grid volume " + std::to_string(total_) +
                        " exceeds the memory budget");
    }
    strides_.assign(sizes_.size(), 1);
    for (int a = static_cast<int>(sizes_.size()) - 2; a >= 0; --a) {
        strides_[a] = strides_[a + 1] * sizes_[a + 1];
    }
}

std::vector<int> GridSpec::axes_of(AxisClass c) const {
    std::vector<int> out;
    for (int a = 0; a < axis_count(); ++a) {
        if (axis_class(a) == c) out.push_back(a);
    }
    return out;
}

GridPtr make_grid(int n, int64_t nt, int64_t nx, int64_t nv, double lt,
                  double lx, double lv) {
    if (nt < 4) throw GridError("N_t must be even and at least 4");
    return std::make_shared<const GridSpec>(n, nt, nx, nv, lt, lx, lv);
}

}  // namespace hypo
