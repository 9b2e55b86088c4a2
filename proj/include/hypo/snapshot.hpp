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

#include <filesystem>

#include "hypo/field.hpp"

namespace hypo {

// Field snapshot file, little-endian throughout:
//   "HYPO" | u32 version | u32 n, N_t, N_x, N_v | f64 L_t, L_x, L_v |
//   one rep byte per axis | row-major interleaved (re, im) f64 samples.
inline constexpr uint32_t kSnapshotVersion = 1;

void write_snapshot(const std::filesystem::path& path, const Field& f);
Field read_snapshot(const std::filesystem::path& path);

}  // namespace hypo
