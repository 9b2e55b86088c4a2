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

// Release gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypo/commutators.hpp"
#include "hypo/diagnostics.hpp"
#include "hypo/duhamel.hpp"
#include "hypo/fit.hpp"
#include "hypo/rng.hpp"
#include "support.hpp"

using namespace hypo;
using hypo::testing::Manufactured;
using hypo::testing::ManufacturedSpec;
using hypo::testing::make_manufactured;
using hypo::testing::rel_l2;
namespace fs = std::filesystem;

namespace {

int failures = 0;

class Criterion {
  public:
    explicit Criterion(std::string label) : label_(std::move(label)) {
        start_ = std::chrono::steady_clock::now();
    }
    void require(const std::string& what, bool ok) {
        if (!ok) bad_.push_back(what);
    }
    void require_close(const std::string& what, double a, double b,
                       double tol) {
        const double dev = std::abs(a - b);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s (|%.3g - %.3g| vs %.2g)",
                      what.c_str(), a, b, tol);
        require(buf, dev <= tol);
    }
    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start_)
                .count();
        if (bad_.empty()) {
            std::printf("[PASS] %s  (%.1fs)\n", label_.c_str(), secs);
        } else {
            ++failures;
            std::printf("[FAIL] %s  (%.1fs)\n", label_.c_str(), secs);
            for (const auto& b : bad_) std::printf("       - %s\n", b.c_str());
        }
        std::fflush(stdout);
    }
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::string label_;
    std::vector<std::string> bad_;
    std::chrono::steady_clock::time_point start_;
};

Field random_field(GridPtr grid, uint64_t seed) {
    CorpusSpec spec;
    spec.count = 1;
    return corpus_field(grid, spec, seed);
}

// --------------------------------------------------------------------------

void criterion_1() {
    Criterion c("1. spectral invariants at 1e-10/1e-12 on 64^3 and 128^3, < 1 min");
    for (int64_t n : {int64_t{64}, int64_t{128}}) {
        auto grid = make_grid(1, n, n, n, 1.0, 2.0 * std::numbers::pi,
                              2.0 * std::numbers::pi);
        const Field f = random_field(grid, 11 + static_cast<uint64_t>(n));
        const Field h = random_field(grid, 12 + static_cast<uint64_t>(n));
        const std::string tag = " @" + std::to_string(n);

        const double np = l2_norm(to_rep_all(f, Rep::physical));
        const double nf = l2_norm(to_rep_all(f, Rep::frequency));
        c.require("Plancherel" + tag, std::abs(np - nf) <= 1e-12 * np);

        for (SymbolKind kind : {SymbolKind::frac_v, SymbolKind::aniso}) {
            const MultiplierSpec spec{kind, 0.75, 0.0};
            const Field ff = to_rep_all(f, Rep::frequency);
            const Field hf = to_rep_all(h, Rep::frequency);
            const Field mf = apply_multiplier(ff, spec);
            const Field mh = apply_multiplier(hf, spec);
            const cplx lhs = inner(mf, hf), rhs = inner(ff, mh);
            const double scale = l2_norm(mf) * l2_norm(hf);
            c.require("self-adjointness " + symbol_name(kind) + tag,
                      std::abs(lhs - rhs) <= 1e-10 * scale);
        }

        const Field tf = apply_transport(to_rep_all(f, Rep::frequency));
        c.require("transport skew-symmetry" + tag,
                  std::abs(std::real(inner(tf, to_rep_all(f, Rep::frequency)))) <=
                      1e-10 * l2_norm(tf) * l2_norm(f));

        const MultiplierSpec a{SymbolKind::frac_v, 0.3, 0.0};
        const MultiplierSpec b{SymbolKind::frac_v, 0.45, 0.0};
        const MultiplierSpec ab{SymbolKind::frac_v, 0.75, 0.0};
        const Field ff = to_rep_all(f, Rep::frequency);
        const Field two = apply_multiplier(apply_multiplier(ff, a), b);
        const Field one = apply_multiplier(ff, ab);
        c.require("multiplier composition" + tag, rel_l2(two, one) <= 1e-12);
    }
    c.require("runtime < 60 s", c.seconds() < 60.0);
}

double stepper_error(const Manufactured& m, double dt, const Field& ref) {
    const GridSpec& g = *m.grid;
    CauchyProblem prob;
    prob.f0 = m.f0;
    prob.source = m.g;
    prob.horizon = g.lt();
    prob.dt = dt;
    const int64_t per = static_cast<int64_t>(
        std::llround(g.lt() / static_cast<double>(g.nt()) / dt));
    Trajectory traj = solve_cauchy(prob, m.params, {}, per);
    double num = 0.0, den = 0.0;
    for (int64_t it = 0; it < g.nt(); ++it) {
        Field want = extract_time_slice(ref, it);
        want = to_rep(want, AxisClass::velocity, Rep::physical);
        want = to_rep(want, AxisClass::position, Rep::frequency);
        Field diff = traj.snapshots[static_cast<size_t>(it)] - want;
        num += std::pow(l2_norm(diff), 2);
        den += std::pow(l2_norm(want), 2);
    }
    return std::sqrt(num / den);
}

void criterion_2() {
    Criterion c("2. oracle/stepper: rel L2 <= 1e-3 at dt = T/1024, order 2 +/- 0.4, < 2 min");
    ManufacturedSpec ms;  // 8 x 32 x 128, T = 0.05, beta = 1
    auto m = make_manufactured(ms);
    const Field oracle = duhamel_oracle(m.g, ms.beta, &m.f0);
    const double T = m.grid->lt();
    const double e1 = stepper_error(m, T / 256.0, oracle);
    const double e2 = stepper_error(m, T / 512.0, oracle);
    const double e3 = stepper_error(m, T / 1024.0, oracle);
    c.require("error at T/1024 <= 1e-3", e3 <= 1e-3);
    c.require_close("order (256->512)", std::log2(e1 / e2), 2.0, 0.4);
    c.require_close("order (512->1024)", std::log2(e2 / e3), 2.0, 0.4);
    c.require("runtime < 120 s", c.seconds() < 120.0);
}

void criteria_3_4() {
    for (double beta : {0.25, 0.5, 1.0}) {
        const double target = gain_exponent(beta);
        char label[160];
        std::snprintf(label, sizeof label,
                      "3. exponent recovery: beta = %g, s-hat = %.4g +/- 0.05, "
                      ">= 5 scales over 2 decades, <= 5 min",
                      beta, target);
        FitOptions opts;
        std::vector<FamilyCase> family;
        {
            Criterion c(label);
            family = build_scaling_family(beta, opts);
            const auto rep =
                fit_scaling_exponent(family, AxisClass::position, opts);
            c.require("at least 5 scales", family.size() >= 5);
            c.require("two decades of scale",
                      family.back().lambda / family.front().lambda >= 100.0);
            c.require_close("fitted exponent", rep.fitted_s, target, 0.05);
            c.require("runtime < 300 s", c.seconds() < 300.0);
        }
        std::snprintf(label, sizeof label,
                      "4. sharpness: beta = %g, growth >= 2 at s = gain + 0.15",
                      beta);
        Criterion c(label);
        const double growth =
            family_growth(family, target + 0.15, AxisClass::position);
        c.require("ratio growth >= 2x across the family", growth >= 2.0);
    }
}

void criterion_5() {
    Criterion c("5. inequality stability: 50-case corpus max ratio drift < 10% under 64^3 -> 128^3");
    CorpusSpec spec;  // 50 cases
    for (CheckKind kind :
         {CheckKind::prop_bouchut, CheckKind::step1, CheckKind::step2,
          CheckKind::step3, CheckKind::thm1, CheckKind::thm2}) {
        double ratio[2];
        int slot = 0;
        for (int64_t n : {int64_t{64}, int64_t{128}}) {
            auto grid = make_grid(1, n, n, n, 1.0, 2.0 * std::numbers::pi,
                                  2.0 * std::numbers::pi);
            const auto rep = run_corpus(kind, grid, spec, 0.5);
            if (rep.failed || !rep.valid) {
                c.require(check_name(kind) + " corpus clean", false);
                break;
            }
            ratio[slot++] = rep.max_ratio;
        }
        if (slot == 2)
            c.require_close(check_name(kind) + " drift",
                            std::abs(ratio[1] - ratio[0]) / ratio[0], 0.0,
                            0.10);
    }
}

void criterion_6() {
    Criterion c("6. proof mechanics: partition 1e-12, exponent identity, balance 5%, holder 1e-10");
    auto grid = make_grid(1, 16, 16, 64, 1.0, 2.0 * std::numbers::pi,
                          2.0 * std::numbers::pi);
    CorpusSpec spec;
    const Field f = corpus_field(grid, spec, 77);
    const Field g = apply_time_derivative(f) + apply_transport(f);

    // A + B partition and the balanced-exponent identity per lattice point
    for (double m : {0.5, 1.0, 2.0, 3.0}) {
        const auto params = SplitParams::balanced(m);
        double worst_partition = 0.0, worst_identity = 0.0;
        for (const auto& s : split_all(f, g, params)) {
            if (s.skipped) continue;
            if (s.U > 0.0)
                worst_partition = std::max(
                    worst_partition, std::abs(s.A + s.B - s.U) / s.U);
            const double lhs =
                std::pow(s.k, 2.0 * (params.r - 1.0)) * s.D * s.D;
            const double rhs = std::pow(s.k, params.r);
            worst_identity =
                std::max(worst_identity, std::abs(lhs - rhs) / rhs);
        }
        c.require("A + B partition, m = " + std::to_string(m),
                  worst_partition <= 1e-12);
        c.require("|k|^{2(r-1)} D^2 = |k|^r, m = " + std::to_string(m),
                  worst_identity <= 1e-12);
    }

    // closed-form balance against a brute grid search
    Rng rng(5);
    double worst_balance = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const double m = 0.5 + 3.5 * rng.uniform();
        const double U = std::exp(3.0 * rng.gaussian());
        const double V = std::exp(3.0 * rng.gaussian());
        const double W = std::exp(3.0 * rng.gaussian());
        const auto b = balance_lambda(U, V, W, m);
        const double uv = std::sqrt(U) * std::sqrt(V);
        double grid_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 400; ++i) {
            const double lam = b.lambda_star * std::pow(100.0, i / 199.5 - 1.0);
            grid_min = std::min(grid_min, lam * uv + std::pow(lam, -m) * W);
        }
        worst_balance = std::max(
            worst_balance, std::abs(b.objective_star - grid_min) / grid_min);
    }
    c.require("balance_lambda within 5% of grid search", worst_balance <= 0.05);

    // holder aggregation reproduces the averaging checker
    const double alpha = 0.75;
    const auto fibers = split_all(f, g, SplitParams::balanced(2.0 * alpha));
    const auto agg = holder_aggregate(fibers, 2.0 * alpha);
    const auto prop = check_prop_bouchut(f, g, alpha);
    c.require_close("holder_aggregate vs check_prop_bouchut", agg.max_ratio,
                    prop.max_ratio, 1e-10 * prop.max_ratio);
}

void criterion_7() {
    Criterion c("7. step-4 positivity on 100 fields; |I|, |II| within bounds, stable constants");
    CorpusSpec spec;
    double imax[2], iimax[2];
    int slot = 0;
    for (int64_t n : {int64_t{32}, int64_t{64}}) {
        auto grid = make_grid(1, n, n, n, 1.0, 2.0 * std::numbers::pi,
                              2.0 * std::numbers::pi);
        double min_pairing = 0.0, wi = 0.0, wii = 0.0;
        bool dominated = true;
        for (int i = 0; i < 100; ++i) {
            const Field f = corpus_field(grid, spec, 300 + i);
            const Field g =
                manufactured_rhs(f, ModelParams{0.5, std::nullopt}).g;
            const auto s = step4_terms(f, g, 0.5);
            if (s.pairing_scale > 0.0)
                min_pairing =
                    std::min(min_pairing, s.pairing / s.pairing_scale);
            dominated = dominated &&
                        std::abs(s.I_direct) <= s.i_bound * (1.0 + 1e-10) &&
                        std::abs(s.II) <= s.ii_bound * (1.0 + 1e-10);
            wi = std::max(wi, s.i_ratio);
            wii = std::max(wii, s.ii_ratio);
        }
        if (n == 32)
            c.require("Re<Pf,Qf> >= -1e-10 relative over 100 fields",
                      min_pairing >= -1e-10);
        c.require("bounds dominate |I| and |II| @" + std::to_string(n),
                  dominated);
        imax[slot] = wi;
        iimax[slot] = wii;
        ++slot;
    }
    c.require_close("I-constant drift", std::abs(imax[1] - imax[0]) / imax[0],
                    0.0, 0.10);
    c.require_close("II-constant drift",
                    std::abs(iimax[1] - iimax[0]) / iimax[0], 0.0, 0.10);
}

double commutator_estimate(int64_t nv, double beta, WeightKind weight) {
    auto grid = make_grid(1, 4, 8, nv, 2.0 * std::numbers::pi,
                          2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    Coefficient coeff;
    CommutatorSpec spec{grid, MultiplierSpec{SymbolKind::frac_v, beta, 0.0},
                        coeff.sample_modifier(*grid)};
    OpNormOptions opts;
    opts.corpus = 10;
    return op_norm_estimate(spec, weight, opts);
}

void criterion_8() {
    Criterion c("8. commutator regimes: constant -> 0, beta=1/4 stable, beta=3/4 contrast, Schur certified");
    {
        auto grid = make_grid(1, 4, 8, 32, 2.0 * std::numbers::pi,
                              2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        CommutatorSpec spec{grid, MultiplierSpec{SymbolKind::frac_v, 0.5, 0.0},
                            std::vector<double>(
                                static_cast<size_t>(grid->total()), 2.0)};
        OpNormOptions opts;
        opts.corpus = 5;
        c.require("constant modifier norm <= 1e-10",
                  op_norm_estimate(spec, WeightKind::plain, opts) <= 1e-10);
    }
    {
        const double lo = commutator_estimate(16, 0.25, WeightKind::plain);
        const double hi = commutator_estimate(32, 0.25, WeightKind::plain);
        c.require_close("beta = 1/4 plain drift", std::abs(hi - lo) / lo, 0.0,
                        0.10);
    }
    {
        const double plo = commutator_estimate(128, 0.75, WeightKind::plain);
        const double phi = commutator_estimate(256, 0.75, WeightKind::plain);
        c.require("beta = 3/4 plain strictly increasing", phi > plo * 1.1);
        const double slo = commutator_estimate(128, 0.75, WeightKind::shifted);
        const double shi = commutator_estimate(256, 0.75, WeightKind::shifted);
        c.require_close("beta = 3/4 shifted drift", std::abs(shi - slo) / slo,
                        0.0, 0.10);
    }
    // certified Schur bound dominates the randomized estimate on every run
    for (SymbolKind kind : {SymbolKind::frac_v, SymbolKind::aniso}) {
        for (double beta : {0.25, 0.5}) {
            auto grid =
                make_grid(1, 4, 8, 16, 2.0 * std::numbers::pi,
                          2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
            Coefficient coeff;
            CommutatorSpec spec{grid, MultiplierSpec{kind, beta, 0.0},
                                coeff.sample_modifier(*grid)};
            OpNormOptions opts;
            opts.corpus = 10;
            const double emp = op_norm_estimate(spec, WeightKind::plain, opts);
            const double certified = schur_row_bounds(spec).bound;
            c.require("Schur >= empirical, " + symbol_name(kind) + " beta " +
                          std::to_string(beta),
                      certified >= emp);
        }
    }
}

void criterion_9() {
    Criterion c("9. kernel cross-check: 1-d beta = 1/4 quadrature vs spectral, rel L2 <= 1e-2");
    auto grid = make_grid(1, 4, 8, 64, 2.0 * std::numbers::pi,
                          2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    Coefficient coeff;
    CommutatorSpec spec{grid, MultiplierSpec{SymbolKind::frac_v, 0.25, 0.0},
                        coeff.sample_modifier(*grid)};
    CorpusSpec cs;
    cs.tmodes = 1;
    cs.xmodes = 3;
    cs.vmodes = 4;
    const Field f = corpus_field(grid, cs, 9);
    const Field spectral = commutator_apply(spec, f);
    const Field kernel = kernel_commutator_1d(spec, f);
    c.require("relative L2 discrepancy <= 1e-2",
              rel_l2(kernel, spectral) <= 1e-2);
}

void criterion_10() {
    Criterion c("10. determinism: fixed seeds reproduce every JSON scalar bit-identically");
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const fs::path work = fs::temp_directory_path() / "hypo-acceptance-det";
    fs::remove_all(work);
    fs::create_directories(work / "a");
    fs::create_directories(work / "b");
    bool all = true;
    for (const char* check : {"step2", "split-ab", "step4"}) {
        for (const char* sub : {"a", "b"}) {
            const std::string cmd =
                "cd " + (work / sub).string() + " && " + HYPO_CLI_PATH +
                " verify " + check +
                " --grid 16 --seed 9 --set corpus.count=5 > /dev/null 2>&1";
            all = std::system(cmd.c_str()) == 0 && all;
        }
        std::string ra, rb;
        for (const auto& e :
             fs::recursive_directory_iterator(work / "a"))
            if (e.path().filename() == "report.jsonl" &&
                e.path().string().find(check) != std::string::npos)
                ra = slurp(e.path());
        for (const auto& e :
             fs::recursive_directory_iterator(work / "b"))
            if (e.path().filename() == "report.jsonl" &&
                e.path().string().find(check) != std::string::npos)
                rb = slurp(e.path());
        c.require(std::string("reports byte-identical: ") + check,
                  !ra.empty() && ra == rb);
    }
    c.require("all runs exited cleanly", all);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criteria_3_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
