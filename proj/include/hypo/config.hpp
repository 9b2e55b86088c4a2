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
#include <filesystem>
#include <string>
#include <vector>

#include "hypo/fit.hpp"
#include "hypo/norms.hpp"

namespace hypo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCodeVersion = "hypo 0.1.0";

// Flat experiment configuration.  Every field maps to one KEY=VALUE entry;
// the key table in config.cpp is the single source of truth for names,
// parsing and range validation.
struct ExperimentConfig {
    // model
    double beta = 0.5;
    double alpha = 0.5;  // prop-bouchut averaging exponent; 0 is legal here
    double a_minus = 0.1;
    bool chi_squared = true;
    bool variable_coefficient = false;
    bool dealias = false;

    // grid (n = 1 throughout the harness)
    int64_t nt = 16, nx = 32, nv = 32;
    double lt = 1.0;
    double lx = 6.283185307179586476925286766559;
    double lv = 6.283185307179586476925286766559;

    CorpusSpec corpus;

    // scaling-family fit
    double fit_lambda_min = 4.0;
    int fit_lambda_count = 8;  // geometric, factor 2
    FitOptions fit;

    // frequency splitting / balance / initial-datum window
    double split_m = 2.0;

    // step-4 pairing
    bool step4_bracket = false;  // bracket_aniso symbol variant
    double step4_delta = 0.0;

    // commutator lemmas
    double lemma_delta = 0.5;
    double calibration_mode = 3.0;
    int lemma_family = 4;  // modifier family size

    // solve
    std::string solve_source = "manufactured";  // or "zero"
    double solve_horizon = 1.0;
    double solve_dt = 1.0 / 64.0;

    // tolerances
    double tol_drift = 0.10;     // refinement-stability band
    double tol_fit_band = 0.05;  // |fitted s - 2b/(1+2b)| acceptance band

    // run
    uint64_t seed = 1;
    std::string output_dir = "runs";
};

ExperimentConfig default_config();

// KEY=VALUE file: blank lines and #-comments ignored; unknown keys and
// malformed or out-of-range values are hard errors.
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Single KEY=VALUE override (CLI --set and the --seed/--grid/--beta sugar).
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

// Cross-field checks beyond per-key ranges.
void validate(const ExperimentConfig& cfg);

// Canonical sorted key=value serialization (defaults listing, hashing).
std::vector<std::pair<std::string, std::string>> config_items(
    const ExperimentConfig& cfg);

// FNV-1a over the canonical serialization.
uint64_t config_hash(const ExperimentConfig& cfg);

// Derived assemblies.
GridPtr config_grid(const ExperimentConfig& cfg);
ModelParams config_model(const ExperimentConfig& cfg);
FitOptions config_fit(const ExperimentConfig& cfg);

}  // namespace hypo
