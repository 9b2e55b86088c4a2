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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypo/commutators.hpp"
#include "hypo/config.hpp"
#include "hypo/diagnostics.hpp"
#include "hypo/duhamel.hpp"
#include "hypo/fit.hpp"
#include "hypo/snapshot.hpp"

namespace {

using hypo::ExperimentConfig;
using json = nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

const std::vector<std::string> kCatalogue = {
    "prop-bouchut", "step1",    "step2", "step3",    "thm1",
    "thm2",         "split-ab", "balance", "step4",  "ivp-term",
    "lemma-q",      "lemma-p",  "exponent-fit"};

// Collects every artifact written during a run; the manifest's inventory is
// exhaustive by construction.  Timing lives under "timing" and is excluded
// from the determinism contract; everything else is reproducible bit for bit.
class RunDir {
  public:
    RunDir(const ExperimentConfig& cfg, const std::string& stem) : cfg_(cfg) {
        std::filesystem::path root = cfg.output_dir;
        if (const char* env = std::getenv("HYPO_OUTPUT_ROOT"))
            root = std::filesystem::path(env) / root;
        char tag[32];
        std::snprintf(tag, sizeof tag, "%016llx",
                      static_cast<unsigned long long>(hypo::config_hash(cfg)));
        dir_ = root / (stem + "-" + tag);
        std::filesystem::create_directories(dir_);
        manifest_["config_hash"] = std::string(tag);
        manifest_["code_version"] = hypo::kCodeVersion;
        json conf = json::object();
        for (const auto& [k, v] : hypo::config_items(cfg)) conf[k] = v;
        manifest_["config"] = conf;
        start_ = clock::now();
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path artifact(const std::string& name) {
        files_.push_back(name);
        return dir_ / name;
    }

    void stage(const std::string& name) {
        const auto now = clock::now();
        if (!stage_name_.empty()) {
            manifest_["timing"][stage_name_] =
                std::chrono::duration<double>(now - stage_start_).count();
        }
        stage_name_ = name;
        stage_start_ = now;
    }

    void check(const std::string& name, bool pass) {
        manifest_["checks"][name] = pass;
        all_pass_ = all_pass_ && pass;
    }

    void scalar(const std::string& name, double value) {
        manifest_["scalars"][name] = value;
    }

    void note(const std::string& text) { manifest_["notes"].push_back(text); }

    bool all_pass() const { return all_pass_; }

    int finish() {
        stage("");
        manifest_["timing"]["total"] =
            std::chrono::duration<double>(clock::now() - start_).count();
        files_.push_back("manifest.json");
        manifest_["files"] = files_;
        manifest_["pass"] = all_pass_;
        std::ofstream out(dir_ / "manifest.json");
        out << manifest_.dump(2) << "\n";
        std::cout << dir_.string() << "/manifest.json  "
                  << (all_pass_ ? "pass" : "FAIL") << "\n";
        return all_pass_ ? kExitPass : kExitCheckFailed;
    }

  private:
    using clock = std::chrono::steady_clock;
    ExperimentConfig cfg_;
    std::filesystem::path dir_;
    json manifest_ = json::object();
    std::vector<std::string> files_;
    bool all_pass_ = true;
    std::string stage_name_;
    clock::time_point stage_start_, start_;
};

// JSON-lines + CSV pair sharing one row stream.
class Reports {
  public:
    Reports(RunDir& run, const std::string& stem) {
        jsonl_.open(run.artifact(stem + ".jsonl"));
        csv_.open(run.artifact(stem + ".csv"));
    }

    void row(const json& j) {
        jsonl_ << j.dump() << "\n";
        if (!header_done_) {
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it, first = false)
                csv_ << (first ? "" : ",") << it.key();
            csv_ << "\n";
            header_done_ = true;
        }
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it, first = false) {
            csv_ << (first ? "" : ",");
            if (it->is_string())
                csv_ << it->get<std::string>();
            else
                csv_ << it->dump();
        }
        csv_ << "\n";
    }

  private:
    std::ofstream jsonl_, csv_;
    bool header_done_ = false;
};

json report_row(const hypo::EstimateReport& rep) {
    json j;
    j["name"] = rep.name;
    j["valid"] = rep.valid;
    j["vacuous"] = rep.vacuous;
    j["failed"] = rep.failed;
    j["max_ratio"] = rep.max_ratio;
    j["median_ratio"] = rep.median_ratio;
    if (std::isfinite(rep.fitted_s)) j["fitted_s"] = rep.fitted_s;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

// One manufactured (f, g) pair on the configured grid.
std::pair<hypo::Field, hypo::Field> manufactured_pair(
    const ExperimentConfig& cfg, uint64_t case_seed) {
    auto grid = hypo::config_grid(cfg);
    hypo::Field f = hypo::corpus_field(grid, cfg.corpus, case_seed);
    auto rhs = hypo::manufactured_rhs(f, hypo::config_model(cfg));
    return {std::move(f), std::move(rhs.g)};
}

// ---------------------------------------------------------------------------
// verify: the check catalogue

int verify_corpus(const ExperimentConfig& cfg, hypo::CheckKind kind,
                  RunDir& run) {
    run.stage("corpus");
    auto grid = hypo::config_grid(cfg);
    const double exponent =
        kind == hypo::CheckKind::prop_bouchut ? cfg.alpha : cfg.beta;
    hypo::EstimateReport rep = hypo::run_corpus(kind, grid, cfg.corpus, exponent);
    run.stage("report");
    Reports out(run, "report");
    for (size_t i = 0; i < rep.ratio.size(); ++i)
        out.row({{"case", i},
                 {"lhs", rep.lhs[i]},
                 {"rhs", rep.rhs[i]},
                 {"ratio", rep.ratio[i]}});
    out.row(report_row(rep));
    run.scalar("max_ratio", rep.max_ratio);
    run.scalar("median_ratio", rep.median_ratio);
    run.check(rep.name, !rep.failed && rep.valid &&
                            std::isfinite(rep.max_ratio));
    return run.finish();
}

int verify_split_ab(const ExperimentConfig& cfg, RunDir& run) {
    run.stage("data");
    auto [f, g] = manufactured_pair(cfg, cfg.corpus.seed);
    const auto params = hypo::SplitParams::balanced(cfg.split_m);
    run.stage("split");
    const auto fibers = hypo::split_all(f, g, params);
    Reports out(run, "report");
    double partition = 0.0, identity = 0.0;
    for (const auto& s : fibers) {
        out.row({{"k", s.k},
                 {"D", s.D},
                 {"A", s.A},
                 {"B", s.B},
                 {"U", s.U},
                 {"V", s.V},
                 {"W", s.W},
                 {"skipped", s.skipped},
                 {"a_ratio", s.a_ratio},
                 {"b_ratio", s.b_ratio}});
        if (s.skipped) continue;
        if (s.U > 0.0)
            partition = std::max(partition,
                                 std::abs(s.A + s.B - s.U) / s.U);
        const double lhs = std::pow(s.k, 2.0 * (params.r - 1.0)) * s.D * s.D;
        const double rhs = std::pow(s.k, params.r);
        identity = std::max(identity, std::abs(lhs - rhs) / rhs);
    }
    run.scalar("partition_residual", partition);
    run.scalar("exponent_identity_residual", identity);
    run.check("partition", partition <= 1e-12);
    run.check("exponent-identity", identity <= 1e-12);
    return run.finish();
}

int verify_balance(const ExperimentConfig& cfg, RunDir& run) {
    run.stage("data");
    auto [f, g] = manufactured_pair(cfg, cfg.corpus.seed);
    const auto params = hypo::SplitParams::balanced(cfg.split_m);
    const auto fibers = hypo::split_all(f, g, params);
    run.stage("balance");
    Reports out(run, "report");
    double worst = 0.0;
    for (const auto& s : fibers) {
        if (s.skipped || s.U <= 0.0 || s.V <= 0.0 || s.W <= 0.0) continue;
        const auto b =
            hypo::balance_lambda(s.U, s.V, s.W, cfg.split_m);
        // 200-point log grid around the stationary point
        double grid_min = std::numeric_limits<double>::infinity();
        const double uv = std::sqrt(s.U) * std::sqrt(s.V);
        for (int i = 0; i < 200; ++i) {
            const double lam =
                b.lambda_star * std::pow(100.0, i / 99.5 - 1.0);
            grid_min = std::min(grid_min,
                                lam * uv + std::pow(lam, -cfg.split_m) * s.W);
        }
        const double dev = std::abs(b.objective_star - grid_min) / grid_min;
        worst = std::max(worst, dev);
        out.row({{"k", s.k},
                 {"lambda_balance", b.lambda_balance},
                 {"lambda_star", b.lambda_star},
                 {"objective_star", b.objective_star},
                 {"grid_min", grid_min},
                 {"bound", b.bound}});
    }
    run.scalar("worst_deviation", worst);
    run.check("balance", worst <= 0.05);
    return run.finish();
}

int verify_step4(const ExperimentConfig& cfg, RunDir& run) {
    run.stage("corpus");
    auto grid = hypo::config_grid(cfg);
    Reports out(run, "report");
    bool pass = true;
    double min_pairing = 0.0;
    const auto variant = cfg.step4_bracket ? hypo::SymbolKind::bracket_aniso
                                           : hypo::SymbolKind::aniso;
    for (int c = 0; c < cfg.corpus.count; ++c) {
        auto [f, g] = manufactured_pair(cfg, cfg.corpus.seed + c);
        const auto s =
            hypo::step4_terms(f, g, cfg.beta, variant, cfg.step4_delta);
        out.row({{"case", c},
                 {"pairing", s.pairing},
                 {"pairing_scale", s.pairing_scale},
                 {"I_direct", s.I_direct},
                 {"I_identity", s.I_identity},
                 {"II", s.II},
                 {"i_ratio", s.i_ratio},
                 {"ii_ratio", s.ii_ratio}});
        if (s.pairing_scale > 0.0)
            min_pairing = std::min(min_pairing, s.pairing / s.pairing_scale);
        pass = pass && std::isfinite(s.i_ratio) && std::isfinite(s.ii_ratio) &&
               std::abs(s.I_direct) <= s.i_bound * (1.0 + 1e-10) &&
               std::abs(s.II) <= s.ii_bound * (1.0 + 1e-10);
    }
    run.scalar("min_relative_pairing", min_pairing);
    run.check("positivity", min_pairing >= -1e-10);
    run.check("bounds", pass);
    return run.finish();
}

int verify_ivp(const ExperimentConfig& cfg, RunDir& run) {
    run.stage("data");
    auto grid = hypo::config_grid(cfg);
    hypo::Field f = hypo::corpus_field(grid, cfg.corpus, cfg.corpus.seed);
    hypo::Field f0 = hypo::extract_time_slice(f, 0);
    const auto params = hypo::SplitParams::balanced(cfg.split_m);
    run.stage("scan");
    Reports out(run, "report");
    double worst = 0.0;
    for (int64_t k = 0; k < cfg.nx; ++k) {
        const auto r = hypo::check_ivp_term(f0, params, k, cfg.solve_horizon);
        out.row({{"k_index", k},
                 {"third", r.third},
                 {"bound", r.bound},
                 {"ratio", r.ratio},
                 {"skipped", r.skipped}});
        if (!r.skipped) worst = std::max(worst, r.ratio);
    }
    run.scalar("max_ratio", worst);
    run.check("ivp-term", worst <= 1.0 + 1e-12);
    return run.finish();
}

int verify_lemma(const ExperimentConfig& cfg, bool p_variant, RunDir& run) {
    run.stage("family");
    auto grid = hypo::config_grid(cfg);
    hypo::Coefficient coeff;
    coeff.a_minus = cfg.a_minus;
    coeff.chi_squared = cfg.chi_squared;
    std::vector<std::vector<double>> modifiers;
    modifiers.push_back(coeff.sample_modifier(*grid));
    // geometrically growing derivative content on top of the base modifier
    std::vector<int64_t> idx;
    for (int j = 1; j < cfg.lemma_family; ++j) {
        std::vector<double> mod(static_cast<size_t>(grid->total()));
        for (int64_t i = 0; i < grid->total(); ++i) {
            grid->unflatten(i, idx);
            const double v = grid->coord(2, idx[2]);
            mod[static_cast<size_t>(i)] =
                std::ldexp(1.0, j) *
                std::cos(j * 2.0 * std::numbers::pi * v / grid->lv());
        }
        modifiers.push_back(std::move(mod));
    }
    const hypo::MultiplierSpec mult =
        p_variant ? hypo::MultiplierSpec{hypo::SymbolKind::aniso, cfg.beta, 0.0}
                  : hypo::MultiplierSpec{hypo::SymbolKind::frac_v, cfg.beta, 0.0};
    const auto weight = cfg.beta >= 0.5 ? hypo::WeightKind::shifted
                                        : hypo::WeightKind::plain;
    run.stage("estimate");
    hypo::OpNormOptions opts;
    opts.seed = cfg.seed;
    const auto rep =
        hypo::check_lemma(grid, mult, modifiers, weight, cfg.lemma_delta, opts);
    Reports out(run, "report");
    for (size_t i = 0; i < rep.ratio.size(); ++i)
        out.row({{"case", i},
                 {"estimate", rep.lhs[i]},
                 {"sobolev", rep.rhs[i]},
                 {"ratio", rep.ratio[i]}});
    out.row(report_row(rep));
    run.scalar("max_ratio", rep.max_ratio);
    run.check(rep.name, !rep.failed && std::isfinite(rep.max_ratio));
    return run.finish();
}

int verify_fit(const ExperimentConfig& cfg, RunDir& run) {
    run.stage("family");
    const auto opts = hypo::config_fit(cfg);
    const auto family = hypo::build_scaling_family(cfg.beta, opts);
    run.stage("fit");
    const auto rep =
        hypo::fit_scaling_exponent(family, hypo::AxisClass::position, opts);
    Reports out(run, "report");
    for (size_t i = 0; i < rep.lhs.size(); ++i)
        out.row({{"s", rep.lhs[i]},
                 {"slope", rep.rhs[i]},
                 {"growth", rep.ratio[i]}});
    const double target = hypo::gain_exponent(cfg.beta);
    run.scalar("fitted_s", rep.fitted_s);
    run.scalar("target", target);
    run.scalar("half_width", rep.half_width);
    double containment = 0.0;
    for (const auto& c : family)
        containment = std::max(containment, c.containment);
    run.scalar("containment", containment);
    run.check("exponent-fit",
              std::abs(rep.fitted_s - target) <= cfg.tol_fit_band);
    return run.finish();
}

int dispatch_verify(const ExperimentConfig& cfg, const std::string& check,
                    RunDir& run) {
    if (check == "prop-bouchut")
        return verify_corpus(cfg, hypo::CheckKind::prop_bouchut, run);
    if (check == "step1") return verify_corpus(cfg, hypo::CheckKind::step1, run);
    if (check == "step2") return verify_corpus(cfg, hypo::CheckKind::step2, run);
    if (check == "step3") return verify_corpus(cfg, hypo::CheckKind::step3, run);
    if (check == "thm1") return verify_corpus(cfg, hypo::CheckKind::thm1, run);
    if (check == "thm2") return verify_corpus(cfg, hypo::CheckKind::thm2, run);
    if (check == "split-ab") return verify_split_ab(cfg, run);
    if (check == "balance") return verify_balance(cfg, run);
    if (check == "step4") return verify_step4(cfg, run);
    if (check == "ivp-term") return verify_ivp(cfg, run);
    if (check == "lemma-q") return verify_lemma(cfg, false, run);
    if (check == "lemma-p") return verify_lemma(cfg, true, run);
    if (check == "exponent-fit") return verify_fit(cfg, run);
    throw hypo::ConfigError("unreachable");
}

std::string catalogue_string() {
    std::string s;
    for (const auto& c : kCatalogue) s += (s.empty() ? "" : ", ") + c;
    return s;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const ExperimentConfig& cfg) {
    RunDir run(cfg, "solve");
    run.stage("setup");
    auto grid = hypo::config_grid(cfg);
    const auto params = hypo::config_model(cfg);

    hypo::Field source(grid, hypo::Rep::physical);
    if (cfg.solve_source == "manufactured")
        source = hypo::corpus_field(grid, cfg.corpus, cfg.seed);

    hypo::CauchyProblem problem;
    problem.f0 = hypo::Field(hypo::slice_grid(*grid), hypo::Rep::physical);
    problem.source = source;
    problem.horizon = cfg.solve_horizon;
    problem.dt = cfg.solve_dt;

    hypo::StrangOptions sopts;
    sopts.dealias = cfg.dealias;

    run.stage("march");
    const auto traj = hypo::solve_cauchy(problem, params, sopts,
                                         std::max<int64_t>(
                                             1, static_cast<int64_t>(
                                                    cfg.solve_horizon /
                                                    cfg.solve_dt / 8)));
    Reports out(run, "report");
    for (size_t i = 0; i < traj.times.size(); ++i)
        out.row({{"time", traj.times[i]}, {"norm", traj.norms[i]}});
    hypo::write_snapshot(run.artifact("final.snap"), traj.snapshots.back());
    run.scalar("final_norm", traj.norms.back());

    if (params.constant_coefficient()) {
        // cross-check against the exact Fourier-characteristics solve when
        // the geometry admits it
        run.stage("oracle");
        try {
            hypo::DuhamelReport drep;
            hypo::Field oracle =
                hypo::duhamel_oracle(source, cfg.beta, nullptr, {}, &drep);
            hypo::write_snapshot(run.artifact("oracle.snap"), oracle);
            const hypo::Field last =
                hypo::to_rep_all(hypo::extract_time_slice(
                                     hypo::to_rep_all(oracle, hypo::Rep::physical),
                                     grid->nt() - 1),
                                 hypo::Rep::physical);
            // re-march with a step that lands exactly on the last grid time
            const double spacing = cfg.lt / static_cast<double>(cfg.nt);
            const int64_t sub = std::max<int64_t>(
                1, static_cast<int64_t>(std::ceil(spacing / cfg.solve_dt)));
            hypo::CauchyProblem cmp = problem;
            cmp.horizon = spacing * static_cast<double>(cfg.nt - 1);
            cmp.dt = spacing / static_cast<double>(sub);
            const auto ctraj = hypo::solve_cauchy(
                cmp, params, sopts, std::numeric_limits<int64_t>::max());
            const hypo::Field stepper =
                hypo::to_rep_all(ctraj.snapshots.back(), hypo::Rep::physical);
            double diff = 0.0;
            for (int64_t i = 0; i < last.size(); ++i)
                diff += std::norm(last[i] - stepper[i]);
            const double denom = hypo::l2_norm(last);
            run.scalar("oracle_containment", drep.containment);
            run.scalar("oracle_stepper_delta",
                       denom > 0.0 ? std::sqrt(diff) / denom : std::sqrt(diff));
        } catch (const hypo::DuhamelError& e) {
            run.note(std::string("oracle skipped: ") + e.what());
        }
    }
    run.check("solve", std::isfinite(traj.norms.back()));
    return run.finish();
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(ExperimentConfig cfg, const std::string& check,
              const std::string& parameter,
              const std::vector<std::string>& values) {
    if (values.empty()) throw hypo::ConfigError("sweep: empty value list");
    if (parameter != "beta" && parameter != "N" && parameter != "q" &&
        parameter != "corpus-size")
        throw hypo::ConfigError(
            "sweep: parameter '" + parameter +
            "' not in {beta, N, q, corpus-size}");
    RunDir run(cfg, "sweep");
    Reports out(run, "sweep");
    double prev_ratio = std::numeric_limits<double>::quiet_NaN();
    int exit_code = kExitPass;
    for (const std::string& value : values) {
        ExperimentConfig point = cfg;
        if (parameter == "beta") {
            hypo::apply_override(point, "model.beta", value);
        } else if (parameter == "N") {
            hypo::apply_override(point, "grid.nt", value);
            hypo::apply_override(point, "grid.nx", value);
            hypo::apply_override(point, "grid.nv", value);
        } else if (parameter == "q") {
            hypo::apply_override(point, "corpus.decay", value);
        } else {
            hypo::apply_override(point, "corpus.count", value);
        }
        hypo::validate(point);
        RunDir sub(point, "sweep-" + check + "-" + parameter + "-" + value);
        const int rc = dispatch_verify(point, check, sub);
        exit_code = std::max(exit_code, rc);
        json row;
        row["parameter"] = parameter;
        row["value"] = value;
        row["check"] = check;
        row["pass"] = rc == kExitPass;
        // refinement / trend column over consecutive sweep points
        std::ifstream mf(sub.dir() / "manifest.json");
        json manifest = json::parse(mf);
        double ratio = std::numeric_limits<double>::quiet_NaN();
        if (manifest.contains("scalars")) {
            const auto& s = manifest["scalars"];
            if (s.contains("max_ratio")) ratio = s["max_ratio"].get<double>();
            if (s.contains("fitted_s")) row["fitted_s"] = s["fitted_s"];
        }
        row["max_ratio"] = ratio;
        if (std::isfinite(prev_ratio) && prev_ratio != 0.0)
            row["delta"] = std::abs(ratio - prev_ratio) / prev_ratio;
        prev_ratio = ratio;
        out.row(row);
    }
    run.check("sweep", exit_code == kExitPass);
    return std::max(exit_code, run.finish());
}

// ---------------------------------------------------------------------------
// inspect

int cmd_inspect(const std::filesystem::path& path) {
    const hypo::Field f = hypo::read_snapshot(path);
    json j;
    j["n"] = f.grid->n();
    j["nt"] = f.grid->nt();
    j["nx"] = f.grid->nx();
    j["nv"] = f.grid->nv();
    j["lt"] = f.grid->lt();
    j["lx"] = f.grid->lx();
    j["lv"] = f.grid->lv();
    std::string reps;
    for (int a = 0; a < f.grid->axis_count(); ++a)
        reps += f.rep[a] == hypo::Rep::physical ? 'p' : 'f';
    j["rep"] = reps;
    j["l2_norm"] = hypo::l2_norm(f);
    double amax = 0.0;
    for (int64_t i = 0; i < f.size(); ++i)
        amax = std::max(amax, std::abs(f[i]));
    j["max_abs"] = amax;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

json error_object(const std::string& kind, const std::string& message) {
    return json{{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral kinetic-regularity verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<uint64_t> seed;
    std::optional<int64_t> grid_n;
    std::optional<double> beta;
    app.add_option("--config", config_path, "KEY=VALUE config file");
    app.add_option("--set", overrides, "inline KEY=VALUE override");
    app.add_option("--seed", seed, "override run.seed and corpus.seed");
    app.add_option("--grid", grid_n, "override grid.nt/nx/nv uniformly");
    app.add_option("--beta", beta, "override model.beta");

    auto* solve = app.add_subcommand("solve", "march the Cauchy problem");
    solve->fallthrough();
    std::string check_name;
    auto* verify = app.add_subcommand("verify", "run one registered check");
    verify->fallthrough();
    verify->add_option("check", check_name, "check name")->required();
    std::string sweep_check, sweep_param;
    std::vector<std::string> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "repeat a check across values");
    sweep->fallthrough();
    sweep->add_option("--check", sweep_check, "check name")->required();
    sweep->add_option("--param", sweep_param, "beta | N | q | corpus-size")
        ->required();
    sweep->add_option("--values", sweep_values, "sweep values")->required();
    auto* defaults =
        app.add_subcommand("defaults", "print every config key with default");
    std::string snapshot_path;
    auto* inspect = app.add_subcommand("inspect", "describe a snapshot file");
    inspect->add_option("snapshot", snapshot_path, "snapshot path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << error_object("cli", e.what()).dump() << "\n";
        return kExitConfig;
    }

    try {
        if (defaults->parsed()) {
            for (const auto& [k, v] : hypo::config_items(hypo::default_config()))
                std::cout << k << " = " << v << "\n";
            return kExitPass;
        }
        if (inspect->parsed()) return cmd_inspect(snapshot_path);

        ExperimentConfig cfg = config_path.empty()
                                   ? hypo::default_config()
                                   : hypo::parse_config_file(config_path);
        for (const std::string& kv : overrides) {
            const size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw hypo::ConfigError("--set expects KEY=VALUE, got '" + kv +
                                        "'");
            hypo::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (seed) {
            cfg.seed = *seed;
            cfg.corpus.seed = *seed;
        }
        if (grid_n) {
            cfg.nt = cfg.nx = cfg.nv = *grid_n;
        }
        if (beta) cfg.beta = *beta;
        hypo::validate(cfg);

        if (solve->parsed()) return cmd_solve(cfg);
        if (verify->parsed()) {
            if (std::find(kCatalogue.begin(), kCatalogue.end(), check_name) ==
                kCatalogue.end())
                throw hypo::ConfigError("unknown check '" + check_name +
                                        "'; catalogue: " + catalogue_string());
            RunDir run(cfg, "verify-" + check_name);
            return dispatch_verify(cfg, check_name, run);
        }
        if (sweep->parsed()) {
            if (std::find(kCatalogue.begin(), kCatalogue.end(), sweep_check) ==
                kCatalogue.end())
                throw hypo::ConfigError("unknown check '" + sweep_check +
                                        "'; catalogue: " + catalogue_string());
            return cmd_sweep(cfg, sweep_check, sweep_param, sweep_values);
        }
    } catch (const hypo::ConfigError& e) {
        std::cerr << error_object("config", e.what()).dump() << "\n";
        return kExitConfig;
    } catch (const hypo::DuhamelError& e) {
        std::cerr << error_object("numerical", e.what()).dump() << "\n";
        return kExitNumerical;
    } catch (const hypo::ModelError& e) {
        std::cerr << error_object("numerical", e.what()).dump() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << error_object("config", e.what()).dump() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
