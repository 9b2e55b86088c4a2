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

#include "hypo/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>

namespace hypo {
namespace {

std::string fmt_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + s + "'");
    }
}

int64_t parse_int(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        const int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + s + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError(key + ": not a boolean: '" + s + "'");
}

struct KeyDef {
    std::string name;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

KeyDef dkey(std::string name, double ExperimentConfig::* mem, double lo,
            double hi, bool lo_open = false) {
    return KeyDef{
        name,
        [=](ExperimentConfig& c, const std::string& s) {
            const double v = parse_double(name, s);
            if (v < lo || v > hi || (lo_open && v == lo))
                throw ConfigError(name + ": " + s + " outside " +
                                  (lo_open ? "(" : "[") + fmt_double(lo) +
                                  ", " + fmt_double(hi) + "]");
            c.*mem = v;
        },
        [=](const ExperimentConfig& c) { return fmt_double(c.*mem); }};
}

KeyDef ikey(std::string name, int64_t ExperimentConfig::* mem, int64_t lo,
            int64_t hi) {
    return KeyDef{
        name,
        [=](ExperimentConfig& c, const std::string& s) {
            const int64_t v = parse_int(name, s);
            if (v < lo || v > hi)
                throw ConfigError(name + ": " + s + " outside [" +
                                  std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
            c.*mem = v;
        },
        [=](const ExperimentConfig& c) { return std::to_string(c.*mem); }};
}

KeyDef bkey(std::string name, bool ExperimentConfig::* mem) {
    return KeyDef{name,
                  [=](ExperimentConfig& c, const std::string& s) {
                      c.*mem = parse_bool(name, s);
                  },
                  [=](const ExperimentConfig& c) {
                      return c.*mem ? std::string("true") : std::string("false");
                  }};
}

template <class T, class M>
KeyDef sub_ikey(std::string name, T ExperimentConfig::* sub, M T::* mem,
                int64_t lo, int64_t hi) {
    return KeyDef{
        name,
        [=](ExperimentConfig& c, const std::string& s) {
            const int64_t v = parse_int(name, s);
            if (v < lo || v > hi)
                throw ConfigError(name + ": " + s + " outside [" +
                                  std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
            c.*sub.*mem = static_cast<M>(v);
        },
        [=](const ExperimentConfig& c) {
            return std::to_string(static_cast<int64_t>(c.*sub.*mem));
        }};
}

template <class T>
KeyDef sub_dkey(std::string name, T ExperimentConfig::* sub, double T::* mem,
                double lo, double hi, bool lo_open = false) {
    return KeyDef{
        name,
        [=](ExperimentConfig& c, const std::string& s) {
            const double v = parse_double(name, s);
            if (v < lo || v > hi || (lo_open && v == lo))
                throw ConfigError(name + ": " + s + " outside " +
                                  (lo_open ? "(" : "[") + fmt_double(lo) +
                                  ", " + fmt_double(hi) + "]");
            c.*sub.*mem = v;
        },
        [=](const ExperimentConfig& c) { return fmt_double(c.*sub.*mem); }};
}

const std::vector<KeyDef>& key_table() {
    static const std::vector<KeyDef> keys = [] {
        std::vector<KeyDef> k;
        k.push_back(dkey("model.beta", &ExperimentConfig::beta, 0.0, 1.0,
                         /*lo_open=*/true));
        k.push_back(dkey("model.alpha", &ExperimentConfig::alpha, 0.0, 1.0));
        k.push_back(dkey("model.a_minus", &ExperimentConfig::a_minus, 0.0,
                         100.0, /*lo_open=*/true));
        k.push_back(bkey("model.chi_squared", &ExperimentConfig::chi_squared));
        k.push_back(
            bkey("model.variable_coefficient",
                 &ExperimentConfig::variable_coefficient));
        k.push_back(bkey("model.dealias", &ExperimentConfig::dealias));

        k.push_back(ikey("grid.nt", &ExperimentConfig::nt, 2, 4096));
        k.push_back(ikey("grid.nx", &ExperimentConfig::nx, 2, 4096));
        k.push_back(ikey("grid.nv", &ExperimentConfig::nv, 2, 8192));
        k.push_back(dkey("grid.lt", &ExperimentConfig::lt, 0.0, 1e6, true));
        k.push_back(dkey("grid.lx", &ExperimentConfig::lx, 0.0, 1e6, true));
        k.push_back(dkey("grid.lv", &ExperimentConfig::lv, 0.0, 1e6, true));

        k.push_back(sub_ikey("corpus.count", &ExperimentConfig::corpus,
                             &CorpusSpec::count, 1, 10000));
        k.push_back(sub_ikey("corpus.seed", &ExperimentConfig::corpus,
                             &CorpusSpec::seed, 0,
                             std::numeric_limits<int64_t>::max()));
        k.push_back(sub_ikey("corpus.tmodes", &ExperimentConfig::corpus,
                             &CorpusSpec::tmodes, 1, 64));
        k.push_back(sub_ikey("corpus.xmodes", &ExperimentConfig::corpus,
                             &CorpusSpec::xmodes, 1, 64));
        k.push_back(sub_ikey("corpus.vmodes", &ExperimentConfig::corpus,
                             &CorpusSpec::vmodes, 1, 64));
        k.push_back(sub_dkey("corpus.decay", &ExperimentConfig::corpus,
                             &CorpusSpec::decay, 0.0, 16.0));
        k.push_back(sub_dkey("corpus.sigma", &ExperimentConfig::corpus,
                             &CorpusSpec::sigma, 0.0, 2.0, true));

        k.push_back(dkey("fit.lambda_min", &ExperimentConfig::fit_lambda_min,
                         2.0, 1024.0));
        k.push_back(KeyDef{
            "fit.lambda_count",
            [](ExperimentConfig& c, const std::string& s) {
                const int64_t v = parse_int("fit.lambda_count", s);
                if (v < 2 || v > 16)
                    throw ConfigError("fit.lambda_count: " + s +
                                      " outside [2, 16]");
                c.fit_lambda_count = static_cast<int>(v);
            },
            [](const ExperimentConfig& c) {
                return std::to_string(c.fit_lambda_count);
            }});
        k.push_back(sub_ikey("fit.nt", &ExperimentConfig::fit,
                             &FitOptions::nt, 2, 256));
        k.push_back(sub_ikey("fit.nx", &ExperimentConfig::fit,
                             &FitOptions::nx, 2, 256));
        k.push_back(sub_ikey("fit.nv", &ExperimentConfig::fit,
                             &FitOptions::nv, 8, 8192));
        k.push_back(sub_dkey("fit.horizon_factor", &ExperimentConfig::fit,
                             &FitOptions::horizon_factor, 1.0, 1000.0));
        k.push_back(sub_dkey("fit.envelope_sigma", &ExperimentConfig::fit,
                             &FitOptions::envelope_sigma, 0.0, 10.0, true));
        k.push_back(sub_dkey("fit.s_step", &ExperimentConfig::fit,
                             &FitOptions::s_step, 0.0, 0.5, true));
        k.push_back(sub_dkey("fit.slope_tol", &ExperimentConfig::fit,
                             &FitOptions::slope_tol, 0.0, 1.0, true));

        k.push_back(dkey("split.m", &ExperimentConfig::split_m, 0.0, 64.0,
                         /*lo_open=*/true));
        k.push_back(bkey("step4.bracket", &ExperimentConfig::step4_bracket));
        k.push_back(
            dkey("step4.delta", &ExperimentConfig::step4_delta, 0.0, 10.0));
        k.push_back(
            dkey("lemma.delta", &ExperimentConfig::lemma_delta, 0.0, 4.0,
                 /*lo_open=*/true));
        k.push_back(KeyDef{
            "lemma.family",
            [](ExperimentConfig& c, const std::string& s) {
                const int64_t v = parse_int("lemma.family", s);
                if (v < 1 || v > 16)
                    throw ConfigError("lemma.family: " + s + " outside [1, 16]");
                c.lemma_family = static_cast<int>(v);
            },
            [](const ExperimentConfig& c) {
                return std::to_string(c.lemma_family);
            }});
        k.push_back(dkey("quad.calibration_mode",
                         &ExperimentConfig::calibration_mode, 1.0, 64.0));

        k.push_back(KeyDef{
            "solve.source",
            [](ExperimentConfig& c, const std::string& s) {
                if (s != "zero" && s != "manufactured")
                    throw ConfigError(
                        "solve.source: '" + s +
                        "' not in {zero, manufactured}");
                c.solve_source = s;
            },
            [](const ExperimentConfig& c) { return c.solve_source; }});
        k.push_back(dkey("solve.horizon", &ExperimentConfig::solve_horizon,
                         0.0, 1e6, true));
        k.push_back(
            dkey("solve.dt", &ExperimentConfig::solve_dt, 0.0, 1e6, true));

        k.push_back(
            dkey("tol.drift", &ExperimentConfig::tol_drift, 0.0, 1.0, true));
        k.push_back(dkey("tol.fit_band", &ExperimentConfig::tol_fit_band, 0.0,
                         0.5, true));

        k.push_back(KeyDef{
            "run.seed",
            [](ExperimentConfig& c, const std::string& s) {
                c.seed = static_cast<uint64_t>(parse_int("run.seed", s));
            },
            [](const ExperimentConfig& c) { return std::to_string(c.seed); }});
        k.push_back(KeyDef{
            "run.output_dir",
            [](ExperimentConfig& c, const std::string& s) {
                if (s.empty())
                    throw ConfigError("run.output_dir: must not be empty");
                c.output_dir = s;
            },
            [](const ExperimentConfig& c) { return c.output_dir; }});
        std::sort(k.begin(), k.end(),
                  [](const KeyDef& a, const KeyDef& b) { return a.name < b.name; });
        return k;
    }();
    return keys;
}

const KeyDef& find_key(const std::string& name) {
    for (const KeyDef& k : key_table())
        if (k.name == name) return k;
    throw ConfigError("unknown config key '" + name + "'");
}

}  // namespace

ExperimentConfig default_config() { return ExperimentConfig{}; }

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    find_key(key).set(cfg, value);
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected KEY=VALUE, got '" + line + "'");
        apply_override(cfg, strip(line.substr(0, eq)),
                       strip(line.substr(eq + 1)));
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    // round-trip every key through its own range check
    ExperimentConfig probe(cfg);
    for (const KeyDef& k : key_table()) k.set(probe, k.get(cfg));
    if (cfg.nt % 2 || cfg.nx % 2 || cfg.nv % 2)
        throw ConfigError("grid sizes must be even");
    if (cfg.solve_dt > cfg.solve_horizon)
        throw ConfigError("solve.dt exceeds solve.horizon");
    if (cfg.fit_lambda_min * std::ldexp(1.0, cfg.fit_lambda_count - 1) > 4096.0)
        throw ConfigError("fit.lambda range exceeds 4096");
}

std::vector<std::pair<std::string, std::string>> config_items(
    const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const KeyDef& k : key_table()) out.emplace_back(k.name, k.get(cfg));
    return out;
}

uint64_t config_hash(const ExperimentConfig& cfg) {
    uint64_t h = 1469598103934665603ull;  // FNV offset basis
    const auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;  // FNV prime
        }
    };
    for (const auto& [key, value] : config_items(cfg)) {
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    return h;
}

GridPtr config_grid(const ExperimentConfig& cfg) {
    return make_grid(1, cfg.nt, cfg.nx, cfg.nv, cfg.lt, cfg.lx, cfg.lv);
}

ModelParams config_model(const ExperimentConfig& cfg) {
    ModelParams params;
    params.beta = cfg.beta;
    if (cfg.variable_coefficient) {
        Coefficient c;
        c.a_minus = cfg.a_minus;
        c.chi_squared = cfg.chi_squared;
        params.coefficient = c;
    }
    return params;
}

FitOptions config_fit(const ExperimentConfig& cfg) {
    FitOptions opts = cfg.fit;
    opts.lambdas.clear();
    double lam = cfg.fit_lambda_min;
    for (int i = 0; i < cfg.fit_lambda_count; ++i, lam *= 2.0)
        opts.lambdas.push_back(lam);
    return opts;
}

}  // namespace hypo
