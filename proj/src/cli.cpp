#include "mfw/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "mfw/analysis.hpp"
#include "mfw/errors.hpp"
#include "mfw/grid_oracle.hpp"
#include "mfw/presets.hpp"
#include "mfw/problem_io.hpp"
#include "mfw/solver.hpp"
#include "mfw/subproblem.hpp"
#include "mfw/svg.hpp"

namespace mfw {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string vec_str(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt("%.12g", v[i]);
    }
    return out + ")";
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string run_summary(const RunHistory& hist, const MultiObjective& objective) {
    const IterateRecord& last = hist.records.back();
    std::ostringstream out;
    out << "termination: " << termination_name(hist.termination) << "\n"
        << "iterations: " << last.k << "\n"
        << "objectives: " << objective.size() << "  dimension: " << objective.dim
        << "\n"
        << "smoothness L: " << fmt("%.12g", smoothness_constant(objective))
        << "  strong convexity mu: "
        << fmt("%.12g", strong_convexity_constant(objective)) << "\n"
        << "final x: " << vec_str(last.x) << "\n"
        << "final F: " << vec_str(last.F) << "\n"
        << "final theta_fw: " << fmt("%.12g", last.theta_fw) << "\n"
        << "fingerprint: " << hist.fingerprint << "\n";
    if (hist.termination == Termination::solver_failure)
        out << "failure at iteration " << hist.failure_iteration << ": "
            << hist.failure_message << "\n";
    return out.str();
}

int cmd_run(const std::string& problem_path, const std::string& out_dir,
            std::optional<int> max_iters, std::optional<double> tol,
            bool record_theta_tilde) {
    ProblemSpec spec = load_problem_file(problem_path);
    if (max_iters) spec.config.max_iters = *max_iters;
    if (tol) spec.config.theta_tol = *tol;
    if (record_theta_tilde) spec.config.record_theta_tilde = true;

    RunHistory hist = run(spec.objective, spec.set, spec.config);
    fs::create_directories(out_dir);
    write_history_csv((fs::path(out_dir) / "history.csv").string(), hist);
    const std::string summary = run_summary(hist, spec.objective);
    write_text(fs::path(out_dir) / "summary.txt", summary);
    std::cout << summary;
    return hist.termination == Termination::solver_failure ? kExitSolver : kExitOk;
}

// Log-scale chart of the merit values; only strictly positive merits plot.
void write_merit_chart(const fs::path& path, const std::string& title,
                       const MeritSeries& merit, bool loglog) {
    PlotSeries s;
    s.label = "merit";
    for (std::size_t i = 0; i < merit.k.size(); ++i) {
        if (!(merit.h[i] > 0)) continue;
        if (loglog && merit.k[i] < 1) continue;
        s.xs.push_back(loglog ? std::log10(static_cast<double>(merit.k[i]))
                              : static_cast<double>(merit.k[i]));
        s.ys.push_back(std::log10(merit.h[i]));
    }
    if (s.xs.size() < 2) return;
    write_svg(path.string(), title, loglog ? "log10 iteration" : "iteration",
              "log10 merit", {s});
}

int cmd_example(const std::string& name, const std::string& out_dir) {
    Preset preset = make_preset(name);
    RunHistory hist = run(preset.objective, preset.set, preset.config);
    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir) / ("example-" + name);
    write_history_csv(base.string() + ".csv", hist);
    if (hist.termination == Termination::solver_failure) {
        std::cerr << "solver failure: " << hist.failure_message << "\n";
        return kExitSolver;
    }

    ReferencePoint ref = preset_reference(preset);
    MeritSeries merit = merit_series(hist, ref);
    RateFit fit = fit_rate(merit, preset.rate_model);

    write_merit_chart(fs::path(base.string() + ".svg"),
                      "example " + name + ": merit decay", merit, false);
    if (preset.rate_model == RateModel::power)
        write_merit_chart(fs::path(base.string() + "-loglog.svg"),
                          "example " + name + ": merit decay (log-log)", merit,
                          true);

    std::ostringstream rep;
    rep << "example: " << name << "\n"
        << "description: " << preset.description << "\n"
        << "termination: " << termination_name(hist.termination) << " after "
        << hist.records.back().k << " iterations\n"
        << "reference: "
        << (ref.refined ? "refined in-run limit" : "analytic efficient point")
        << " at " << vec_str(ref.x_star) << " (|theta| <= "
        << fmt("%.3g", std::max(ref.achieved_theta, 0.0)) << ")\n"
        << "initial merit: " << fmt("%.6g", merit.h.front()) << "\n"
        << "final merit: " << fmt("%.6g", merit.h.back()) << "\n";
    if (fit.model == RateModel::geometric)
        rep << "rate model: geometric, per-step ratio " << fmt("%.6g", fit.ratio);
    else
        rep << "rate model: power, exponent " << fmt("%.6g", fit.exponent);
    rep << ", r2 " << fmt("%.6g", fit.r2) << ", window k=" << fit.first_k << ".."
        << fit.last_k << " (" << fit.points_used << " points)\n";

    if (preset.config.record_theta_tilde) {
        double min_tilde = std::numeric_limits<double>::infinity();
        for (const auto& rec : hist.records)
            if (rec.theta_tilde_value)
                min_tilde = std::min(min_tilde, std::abs(*rec.theta_tilde_value));
        rep << "min |theta~| along the run: " << fmt("%.9g", min_tilde) << "\n";
        const auto uc = uniform_convexity_params(preset.set);
        if (uc && min_tilde > 0 && std::isfinite(min_tilde)) {
            const double L = smoothness_constant(preset.objective);
            const double zeta = zeta_constant(uc->alpha, uc->q, min_tilde);
            rep << "zeta from measured lower bound: " << fmt("%.9g", zeta) << "\n";
            if (uc->q == 2.0) {
                double worst_ratio = 0.0;
                for (std::size_t i = 0; i + 1 < merit.h.size(); ++i)
                    if (merit.h[i] > merit.noise_floor)
                        worst_ratio = std::max(worst_ratio, merit.h[i + 1] / merit.h[i]);
                rep << "per-step merit factor bound max{1/2, 1-zeta/L}: "
                    << fmt("%.9g", contraction_factor_q2(L, zeta)) << "\n"
                    << "measured worst per-step merit ratio: "
                    << fmt("%.9g", worst_ratio) << "\n";
            }
        }
    }
    const std::string report = rep.str();
    write_text(fs::path(base.string() + "-rates.txt"), report);
    std::cout << report;
    return kExitOk;
}

int cmd_rates(const std::string& history_path, const std::string& model_name,
              const std::optional<std::string>& window_text) {
    RunHistory hist = read_history_csv(history_path);
    RateModel model;
    if (model_name == "geometric")
        model = RateModel::geometric;
    else if (model_name == "power")
        model = RateModel::power;
    else
        throw std::invalid_argument("--model must be 'geometric' or 'power'");

    std::optional<std::pair<int, int>> window;
    if (window_text) {
        const auto colon = window_text->find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--window must look like a:b");
        try {
            window = std::make_pair(std::stoi(window_text->substr(0, colon)),
                                    std::stoi(window_text->substr(colon + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("--window must hold two integers a:b");
        }
        if (window->first > window->second)
            throw std::invalid_argument("--window is empty (a > b)");
    }

    // The CSV stores no merit values, so the final iterate stands in for the
    // limit point; merits within its own accuracy are treated as noise.
    const IterateRecord& last = hist.records.back();
    ReferencePoint ref;
    ref.x_star = last.x;
    ref.F_star = last.F;
    ref.refined = true;
    ref.achieved_theta = std::abs(last.theta_fw);
    ref.fingerprint = hist.fingerprint;

    MeritSeries merit = merit_series(hist, ref);
    RateFit fit = fit_rate(merit, model, window);
    std::ostringstream rep;
    rep << "history: " << history_path << " (" << hist.records.size()
        << " iterates, " << termination_name(hist.termination) << ")\n"
        << "merit anchor: final iterate of the run; merits below "
        << fmt("%.3g", merit.noise_floor) << " are excluded as noise\n";
    if (model == RateModel::geometric)
        rep << "model: geometric, per-step ratio " << fmt("%.9g", fit.ratio);
    else
        rep << "model: power, exponent " << fmt("%.9g", fit.exponent);
    rep << ", r2 " << fmt("%.6g", fit.r2) << ", window k=" << fit.first_k << ".."
        << fit.last_k << " (" << fit.points_used << " points)\n";
    std::cout << rep.str();
    return kExitOk;
}

int cmd_verify(const std::string& history_path, const std::string& problem_path) {
    RunHistory hist = read_history_csv(history_path);
    ProblemSpec spec = load_problem_file(problem_path);
    const std::string expected = problem_fingerprint(spec.objective, spec.set);
    if (hist.fingerprint != expected)
        throw InvalidPairingError("history fingerprint " + hist.fingerprint +
                                  " does not match problem fingerprint " + expected);

    std::optional<ReferencePoint> ref;
    if (spec.reference_point)
        ref = reference_from_point(spec.objective, spec.set, *spec.reference_point);
    else if (spec.preset)
        ref = preset_reference(make_preset(*spec.preset));

    VerifyContext ctx;
    if (ref) ctx.reference = &*ref;
    try {
        ctx.euclidean_diameter = euclidean_diameter(spec.set);
    } catch (const MissingDataError&) {
        ctx.euclidean_diameter = std::nullopt;
    }
    ctx.uniform_convexity = uniform_convexity_params(spec.set);

    InequalityReport report =
        verify_inequalities(spec.objective, spec.set, hist, ctx, 1e-9);

    std::ostringstream out;
    for (const CheckResult& c : report.checks) {
        out << c.name;
        for (std::size_t pad = c.name.size(); pad < 28; ++pad) out << ' ';
        if (c.skipped) {
            out << "skipped (" << c.note << ")\n";
        } else if (c.violations == 0) {
            out << "pass   checked=" << c.checked << "\n";
        } else {
            out << "FAIL   checked=" << c.checked << " violations=" << c.violations
                << " worst_excess=" << fmt("%.6g", c.worst)
                << " first at iteration " << c.first_k << "\n";
        }
    }
    if (report.passed())
        out << "all checks passed\n";
    else
        out << report.total_violations() << " violation(s) found\n";
    std::cout << out.str();
    return report.passed() ? kExitOk : kExitVerification;
}

int cmd_oracle_check(const std::string& problem_path, int trials,
                     std::uint64_t seed) {
    ProblemSpec spec = load_problem_file(problem_path);
    if (spec.objective.dim != 2)
        throw std::invalid_argument(
            "oracle-check needs a 2-dimensional problem (the brute-force grid "
            "is 2-D only)");
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");

    std::mt19937_64 rng(seed);
    double max_dev = 0.0;
    double max_gap = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Vector x = random_feasible_point(spec.set, rng);
        const Matrix G = gradients(spec.objective, x);
        MinMaxResult res = solve_minmax(G, x, spec.set, 1e-10);
        const double grid = grid_oracle_minmax(G, x, spec.set, 401);
        max_dev = std::max(max_dev, std::abs(res.theta_fw - grid));
        max_gap = std::max(max_gap, res.duality_gap);
    }
    std::cout << "trials: " << trials << "\n"
              << "max |theta_solver - theta_grid|: " << fmt("%.6g", max_dev)
              << "\n"
              << "max duality gap: " << fmt("%.6g", max_gap) << "\n";
    if (max_dev > 1e-3) {
        std::cout << "deviation exceeds 1e-3\n";
        return kExitVerification;
    }
    std::cout << "within tolerance\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"multiobjective Frank-Wolfe solver and experiment harness"};
    app.require_subcommand(1);

    std::string problem_path, out_dir, history_path, model_name, example_name;
    int max_iters_val = 0;
    double tol_val = 0.0;
    bool record_tilde = false;
    std::string window_val;
    int trials = 50;
    std::uint64_t seed = 1;

    auto* c_run = app.add_subcommand("run", "solve a problem file, write history CSV + summary");
    c_run->add_option("problem", problem_path, "problem file (JSON)")->required();
    c_run->add_option("--out", out_dir, "output directory")->required();
    auto* o_max_iters = c_run->add_option("--max-iters", max_iters_val, "iteration cap override");
    auto* o_tol = c_run->add_option("--tol", tol_val, "stationarity tolerance override");
    c_run->add_flag("--record-theta-tilde", record_tilde,
                    "record the scaled-gap proxy per iterate");

    auto* c_example = app.add_subcommand(
        "example", "run a packaged benchmark, write CSV + SVG + rate report");
    c_example->add_option("name", example_name, "one of: 1a, 1b, 3, 4")->required();
    c_example->add_option("--out", out_dir, "output directory")->required();

    auto* c_rates = app.add_subcommand("rates", "fit a decay model to a history CSV");
    c_rates->add_option("history", history_path, "history CSV")->required();
    c_rates->add_option("--model", model_name, "geometric or power")->required();
    auto* o_window =
        c_rates->add_option("--window", window_val, "restrict the fit to iterations a:b");

    auto* c_verify = app.add_subcommand(
        "verify", "re-check the per-iteration guarantees on a finished run");
    c_verify->add_option("history", history_path, "history CSV")->required();
    c_verify->add_option("problem", problem_path, "problem file (JSON)")->required();

    auto* c_oracle = app.add_subcommand(
        "oracle-check", "compare the subproblem solver against a brute-force grid");
    c_oracle->add_option("problem", problem_path, "problem file (JSON)")->required();
    c_oracle->add_option("--trials", trials, "number of random base points");
    c_oracle->add_option("--seed", seed, "random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_run->parsed()) {
            std::optional<int> max_iters;
            std::optional<double> tol;
            if (o_max_iters->count()) max_iters = max_iters_val;
            if (o_tol->count()) tol = tol_val;
            return cmd_run(problem_path, out_dir, max_iters, tol, record_tilde);
        }
        if (c_example->parsed()) return cmd_example(example_name, out_dir);
        if (c_rates->parsed()) {
            std::optional<std::string> window_text;
            if (o_window->count()) window_text = window_val;
            return cmd_rates(history_path, model_name, window_text);
        }
        if (c_verify->parsed()) return cmd_verify(history_path, problem_path);
        if (c_oracle->parsed()) return cmd_oracle_check(problem_path, trials, seed);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const InvalidPairingError& e) {
        std::cerr << "pairing error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MissingDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace mfw
