// End-to-end acceptance checks, one line of output per criterion.  Exits
// nonzero when any criterion fails so a test runner can gate on it.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "mfw/analysis.hpp"
#include "mfw/errors.hpp"
#include "mfw/feasible_sets.hpp"
#include "mfw/grid_oracle.hpp"
#include "mfw/objectives.hpp"
#include "mfw/presets.hpp"
#include "mfw/problem_io.hpp"
#include "mfw/solver.hpp"
#include "mfw/subproblem.hpp"

using namespace mfw;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("%s %s %s\n", id.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++g_failures;
}

void guarded(const std::string& id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

struct PresetRun {
    Preset preset;
    RunHistory history;
    ReferencePoint reference;
    MeritSeries merit;
};

std::map<std::string, PresetRun> g_runs;

const PresetRun& shared_run(const std::string& name) {
    auto it = g_runs.find(name);
    if (it != g_runs.end()) return it->second;
    PresetRun r{make_preset(name), {}, {}, {}};
    r.history = run(r.preset.objective, r.preset.set, r.preset.config);
    if (r.history.termination == Termination::solver_failure)
        throw SolverFailure("preset " + name + " failed: " + r.history.failure_message);
    r.reference = preset_reference(r.preset);
    r.merit = merit_series(r.history, r.reference);
    return g_runs.emplace(name, std::move(r)).first->second;
}

// A1: sublinear benchmark decays like 1/k and a geometric model fits worse.
void criterion_a1() {
    const PresetRun& r = shared_run("1a");
    RateFit power = fit_rate(r.merit, RateModel::power);
    RateFit geo = fit_rate(r.merit, RateModel::geometric);
    const bool in_range = power.exponent >= -1.6 && power.exponent <= -0.7;
    const bool ranked = geo.r2 < power.r2;
    report("A1", in_range && ranked,
           "power exponent " + fmt("%.6g", power.exponent) + " in [-1.6,-0.7], r2 " +
               fmt("%.6g", power.r2) + " vs geometric r2 " + fmt("%.6g", geo.r2));
}

// A2: contractive benchmark shows a clean geometric tail and reaches 1e-10.
void criterion_a2() {
    const PresetRun& r = shared_run("1b");
    RateFit geo = fit_rate(r.merit, RateModel::geometric);
    double reached = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.merit.k.size(); ++i)
        if (r.merit.k[i] <= 2000) reached = std::min(reached, r.merit.h[i]);
    const bool ok = geo.r2 >= 0.95 && geo.ratio <= 0.999 && reached <= 1e-10;
    report("A2", ok,
           "geometric r2 " + fmt("%.6g", geo.r2) + ", ratio " + fmt("%.6g", geo.ratio) +
               ", best merit " + fmt("%.3g", reached) + " within 2000 iterations");
}

// A3: curved-set benchmark decays like 1/k^2.
void criterion_a3() {
    const PresetRun& r = shared_run("3");
    RateFit power = fit_rate(r.merit, RateModel::power);
    const bool ok = power.exponent >= -2.4 && power.exponent <= -1.6;
    report("A3", ok,
           "power exponent " + fmt("%.6g", power.exponent) + " in [-2.4,-1.6], r2 " +
               fmt("%.6g", power.r2));
}

// A4: gap proxy stays bounded away from zero and the measured contraction
// obeys the constant derived from that lower bound.
void criterion_a4() {
    const PresetRun& r = shared_run("4");
    double c_lower = std::numeric_limits<double>::infinity();
    for (const IterateRecord& rec : r.history.records)
        if (rec.theta_tilde_value)
            c_lower = std::min(c_lower, std::abs(*rec.theta_tilde_value));
    const bool proxy_ok = c_lower >= 0.1 - 1e-6;

    int usable = 0;
    for (double h : r.merit.h)
        if (h > r.merit.noise_floor) ++usable;
    const int cut = static_cast<int>(std::ceil(0.7 * usable));
    RateFit geo = fit_rate(r.merit, RateModel::geometric, std::make_pair(0, cut));
    const bool fit_ok = geo.r2 >= 0.95;

    const auto uc = uniform_convexity_params(r.preset.set);
    const double L = smoothness_constant(r.preset.objective);
    const double bound =
        contraction_factor_q2(L, zeta_constant(uc->alpha, uc->q, c_lower));
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < r.merit.h.size(); ++i)
        if (r.merit.h[i] > r.merit.noise_floor)
            worst = std::max(worst, r.merit.h[i + 1] / r.merit.h[i]);
    const bool contraction_ok = worst <= bound + 1e-6;

    report("A4", proxy_ok && fit_ok && contraction_ok,
           "min gap proxy " + fmt("%.9g", c_lower) + " >= 0.1, early-window r2 " +
               fmt("%.6g", geo.r2) + ", worst step ratio " + fmt("%.9g", worst) +
               " <= bound " + fmt("%.9g", bound));
}

// A5: every recomputed per-iteration inequality holds on all four benchmarks.
void criterion_a5() {
    long violations = 0;
    std::string detail;
    for (const std::string& name : preset_names()) {
        const PresetRun& r = shared_run(name);
        VerifyContext ctx;
        ctx.reference = &r.reference;
        ctx.euclidean_diameter = euclidean_diameter(r.preset.set);
        ctx.uniform_convexity = uniform_convexity_params(r.preset.set);
        InequalityReport rep =
            verify_inequalities(r.preset.objective, r.preset.set, r.history, ctx, 1e-9);
        violations += rep.total_violations();
        long checked = 0;
        for (const CheckResult& c : rep.checks) checked += c.checked;
        if (!detail.empty()) detail += ", ";
        detail += name + ": " + std::to_string(checked) + " comparisons";
    }
    report("A5", violations == 0,
           std::to_string(violations) + " violations (" + detail + ")");
}

// A6: the direction subproblem agrees with a brute-force grid on random
// instances, with certified duality gaps.
void criterion_a6() {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    FeasibleSet sets[] = {FeasibleSet{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})},
                          make_norm_ball(2.0, 1.0, Vector{0.0, 0.0})};
    double max_dev = 0.0, max_gap = 0.0;
    for (const FeasibleSet& set : sets) {
        for (int t = 0; t < 50; ++t) {
            const std::size_t m = 1 + t % 3;
            std::vector<QuadraticComponent> parts;
            for (std::size_t j = 0; j < m; ++j) {
                QuadraticComponent q;
                q.A = Matrix(2, 2);
                for (double& v : q.A.data) v = coef(rng);
                q.b = {coef(rng), coef(rng)};
                parts.push_back(std::move(q));
            }
            MultiObjective f = make_multiobjective(std::move(parts));
            Vector x = random_feasible_point(set, rng);
            Matrix G = gradients(f, x);
            // The 401-per-axis grid quantizes the boundary to ~5e-3, so the
            // grid value is off by about half that times the gradient scale;
            // normalize the scale to keep the 1e-3 gate a real test of the
            // solver rather than of grid resolution.
            double g_scale = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                g_scale = std::max(g_scale, lp_norm(matrix_row(G, j), 2.0));
            if (g_scale > 0.0)
                for (double& v : G.data) v *= 0.25 / g_scale;
            MinMaxResult res = solve_minmax(G, x, set, 1e-10);
            max_gap = std::max(max_gap, res.duality_gap);
            const double grid = grid_oracle_minmax(G, x, set, 401);
            max_dev = std::max(max_dev, std::abs(res.theta_fw - grid));
        }
    }
    report("A6", max_dev <= 1e-3 && max_gap <= 1e-10,
           "100 instances, max grid deviation " + fmt("%.3g", max_dev) +
               ", max duality gap " + fmt("%.3g", max_gap));
}

// A7: sampled curvature certificates for the two curved sets, plus a control
// with inflated constants that must fail.
void criterion_a7() {
    FeasibleSet l2 = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    FeasibleSet l3 = make_norm_ball(3.0, 1.0, Vector{0.0, 0.0});
    UcSampleReport r2 = check_uniform_convexity_sample(l2, 10000, 2026);
    UcSampleReport r3 = check_uniform_convexity_sample(l3, 10000, 2026);

    auto info = uniform_convexity_params(l2);
    UniformConvexityInfo inflated = *info;
    inflated.alpha *= 4.0;
    UcSampleReport control = check_uniform_convexity_sample(l2, 10000, 2026, inflated);

    const bool ok = r2.violations == 0 && r3.violations == 0 && control.violations > 0;
    report("A7", ok,
           "10000 samples per set, violations " + std::to_string(r2.violations) +
               "/" + std::to_string(r3.violations) + ", inflated-constant control " +
               std::to_string(control.violations) + " violations");
}

// A8: randomized recursions never exceed their closed-form envelope.
void criterion_a8() {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_excess = -std::numeric_limits<double>::infinity();
    long checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        EnvelopeParams p;
        p.c0 = 0.1 + 9.9 * unif(rng);
        p.c1 = std::min(0.999, 0.01 + unif(rng));
        p.beta = std::min(1.0, 0.01 + unif(rng));
        p.c2 = (0.01 + 0.94 * unif(rng)) / std::pow(p.c0, p.beta);
        double h = p.c0 * unif(rng);
        for (long k = 1; k <= 200; ++k) {
            const double env = recursion_envelope(p, k);
            worst_excess = std::max(worst_excess, h - env * (1.0 + 1e-12));
            ++checked;
            const double factor = 1.0 - std::min(p.c1, p.c2 * std::pow(h, p.beta));
            h *= factor * unif(rng);
        }
    }
    report("A8", worst_excess <= 0.0,
           std::to_string(checked) + " envelope comparisons, worst excess " +
               fmt("%.3g", worst_excess));
}

// A9: the gap proxy equals the gradient norm for one objective and the
// distance to the gradient hull for several.
void criterion_a9() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Matrix g1(1, 3);
        for (double& v : g1.data) v = coef(rng);
        worst = std::max(worst,
                         std::abs(theta_tilde(g1).value + lp_norm(matrix_row(g1, 0), 2.0)));
    }
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 2 + t % 2;
        Matrix G(m, 3);
        for (double& v : G.data) v = coef(rng);
        const double tilde = -theta_tilde(G).value;
        const double dist = lp_norm(min_norm_point(G).g_star, 2.0);
        worst = std::max(worst, std::abs(tilde - dist));
    }
    report("A9", worst <= 1e-8,
           "300 random gradient sets, worst deviation " + fmt("%.3g", worst));
}

// A10: repeated benchmark runs serialize byte-identically.
void criterion_a10() {
    fs::path dir = fs::temp_directory_path() / "mfw-acceptance-repro";
    fs::remove_all(dir);
    fs::create_directories(dir);
    bool ok = true;
    std::string detail;
    for (const std::string& name : preset_names()) {
        const PresetRun& first = shared_run(name);
        Preset preset = make_preset(name);
        RunHistory again = run(preset.objective, preset.set, preset.config);
        const fs::path pa = dir / ("a-" + name + ".csv");
        const fs::path pb = dir / ("b-" + name + ".csv");
        write_history_csv(pa.string(), first.history);
        write_history_csv(pb.string(), again);
        std::ifstream fa(pa, std::ios::binary), fb(pb, std::ios::binary);
        std::ostringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        const bool same = sa.str() == sb.str() && !sa.str().empty();
        if (!same) ok = false;
        if (!detail.empty()) detail += ", ";
        detail += name + (same ? ": identical" : ": DIFFERS");
    }
    fs::remove_all(dir);
    report("A10", ok, detail);
}

}  // namespace

int main() {
    guarded("A1", criterion_a1);
    guarded("A2", criterion_a2);
    guarded("A3", criterion_a3);
    guarded("A4", criterion_a4);
    guarded("A5", criterion_a5);
    guarded("A6", criterion_a6);
    guarded("A7", criterion_a7);
    guarded("A8", criterion_a8);
    guarded("A9", criterion_a9);
    guarded("A10", criterion_a10);
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
