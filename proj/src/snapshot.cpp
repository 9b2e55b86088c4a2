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

#include "hypo/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace hypo {

static_assert(std::endian::native == std::endian::little,
              "snapshot i/o assumes a little-endian host");

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!is) throw FieldError("snapshot file truncated");
    return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FieldError("cannot open snapshot file for writing: " + path.string());
    const GridSpec& g = *f.grid;
    os.write("HYPO", 4);
    put<uint32_t>(os, kSnapshotVersion);
    put<uint32_t>(os, static_cast<uint32_t>(g.n()));
    put<uint32_t>(os, static_cast<uint32_t>(g.nt()));
    put<uint32_t>(os, static_cast<uint32_t>(g.nx()));
    put<uint32_t>(os, static_cast<uint32_t>(g.nv()));
    put<double>(os, g.lt());
    put<double>(os, g.lx());
    put<double>(os, g.lv());
    for (Rep r : f.rep) put<uint8_t>(os, static_cast<uint8_t>(r));
    os.write(reinterpret_cast<const char*>(f.data.data()),
             static_cast<std::streamsize>(f.data.size() * sizeof(cplx)));
    if (!os) throw FieldError("snapshot write failed: " + path.string());
}

Field read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FieldError("cannot open snapshot file: " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HYPO", 4) != 0) {
        throw FieldError("not a field snapshot file: " + path.string());
    }
    const auto version = get<uint32_t>(is);
    if (version != kSnapshotVersion) {
        throw FieldError("unsupported snapshot version " + std::to_string(version));
    }
    const auto n = get<uint32_t>(is);
    const auto nt = get<uint32_t>(is);
    const auto nx = get<uint32_t>(is);
    const auto nv = get<uint32_t>(is);
    const double lt = get<double>(is);
    const double lx = get<double>(is);
    const double lv = get<double>(is);
    // nt == 1 snapshots are time-collapsed solver slices
    auto grid = nt == 1
                    ? std::make_shared<const GridSpec>(static_cast<int>(n), 1,
                                                       nx, nv, lt, lx, lv)
                    : make_grid(static_cast<int>(n), nt, nx, nv, lt, lx, lv);
    Field f(grid);
    for (int a = 0; a < grid->axis_count(); ++a) {
        f.rep[a] = static_cast<Rep>(get<uint8_t>(is));
    }
    is.read(reinterpret_cast<char*>(f.data.data()),
            static_cast<std::streamsize>(f.data.size() * sizeof(cplx)));
    if (!is) throw FieldError("snapshot file truncated: " + path.string());
    return f;
}

}  // namespace hypo
