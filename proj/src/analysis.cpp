#include "mfw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "mfw/errors.hpp"
#include "mfw/subproblem.hpp"

namespace mfw {

namespace {

double euclidean(const Vector& v) { return lp_norm(v, 2.0); }

// Signed constraint excess; <= 0 means feasible.
double feasibility_excess(const FeasibleSet& set, const Vector& x) {
    if (std::holds_alternative<NormBall>(set)) {
        const auto& ball = std::get<NormBall>(set);
        return lp_norm(sub(x, ball.center), ball.p) - ball.radius;
    }
    const auto& poly = std::get<HalfspacePolytope>(set);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.b.size(); ++i)
        worst = std::max(worst, dot(matrix_row(poly.A, i), x) - poly.b[i]);
    return worst;
}

}  // namespace

ReferencePoint reference_from_point(const MultiObjective& objective,
                                    const FeasibleSet& set,
                                    const Vector& x_star, double tol) {
    if (x_star.size() != static_cast<std::size_t>(objective.dim))
        throw std::invalid_argument("reference point has wrong dimension");
    if (!(tol > 0))
        throw std::invalid_argument("reference tolerance must be positive");
    if (!contains(set, x_star, 1e-8))
        throw std::invalid_argument("reference point is not feasible");
    MinMaxResult sub = solve_minmax(gradients(objective, x_star), x_star, set,
                                    std::min(tol, 1e-10));
    if (std::abs(sub.theta_fw) > tol)
        throw std::invalid_argument(
            "reference point is not stationary: |theta| = " +
            std::to_string(std::abs(sub.theta_fw)));
    ReferencePoint ref;
    ref.x_star = x_star;
    ref.F_star = evaluate(objective, x_star);
    ref.refined = false;
    ref.achieved_theta = std::abs(sub.theta_fw);
    ref.fingerprint = problem_fingerprint(objective, set);
    return ref;
}

ReferencePoint refine_reference(const MultiObjective& objective,
                                const FeasibleSet& set, double tol,
                                const std::optional<Vector>& start,
                                int max_iters) {
    if (!(tol > 0)) throw std::invalid_argument("refine tolerance must be positive");
    if (max_iters < 1) throw std::invalid_argument("refine iteration cap must be >= 1");
    RunConfig cfg;
    cfg.max_iters = max_iters;
    cfg.theta_tol = tol;
    cfg.subproblem_tol = std::min(1e-10, tol);
    cfg.x0 = start;
    RunHistory hist = run(objective, set, cfg);
    if (hist.termination == Termination::solver_failure)
        throw SolverFailure("reference refinement failed: " + hist.failure_message);
    const IterateRecord& last = hist.records.back();
    if (hist.termination != Termination::converged)
        throw PartialReferenceError(
            "reference refinement stalled at |theta| = " +
                std::to_string(std::abs(last.theta_fw)) + " after " +
                std::to_string(last.k) + " iterations",
            std::abs(last.theta_fw));
    ReferencePoint ref;
    ref.x_star = last.x;
    ref.F_star = last.F;
    ref.refined = true;
    ref.achieved_theta = std::abs(last.theta_fw);
    ref.fingerprint = hist.fingerprint;
    return ref;
}

MeritSeries merit_series(const RunHistory& history, const ReferencePoint& ref) {
    if (!history.fingerprint.empty() && !ref.fingerprint.empty() &&
        history.fingerprint != ref.fingerprint)
        throw InvalidPairingError("history fingerprint " + history.fingerprint +
                                  " does not match reference fingerprint " +
                                  ref.fingerprint);
    if (history.records.empty())
        throw InvalidPairingError("history has no iterates");
    double f_scale = 0.0;
    for (double v : ref.F_star) f_scale = std::max(f_scale, std::abs(v));
    const double neg_tol = 1e-9 * (1.0 + f_scale) + 10.0 * ref.achieved_theta;

    MeritSeries series;
    series.k.reserve(history.records.size());
    series.h.reserve(history.records.size());
    for (const IterateRecord& rec : history.records) {
        if (rec.F.size() != ref.F_star.size())
            throw InvalidPairingError("objective count mismatch between history and reference");
        double h = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < rec.F.size(); ++j)
            h = std::min(h, rec.F[j] - ref.F_star[j]);
        if (h < -neg_tol)
            throw InvalidPairingError(
                "merit is negative (" + std::to_string(h) +
                " at k=" + std::to_string(rec.k) +
                "); the reference does not dominate this run");
        series.k.push_back(rec.k);
        series.h.push_back(std::max(h, 0.0));
    }
    // The gap that survives the min is the one whose F_j* the limit point
    // nearly attains, so cancellation noise scales with the smallest |F_j*|,
    // not with h(x^0).
    double f_min = std::numeric_limits<double>::infinity();
    for (double v : ref.F_star) f_min = std::min(f_min, std::abs(v));
    series.noise_floor =
        std::max(16.0 * std::numeric_limits<double>::epsilon() * f_min,
                 10.0 * ref.achieved_theta);
    return series;
}

RateFit fit_rate(const MeritSeries& series, RateModel model,
                 const std::optional<std::pair<int, int>>& window) {
    if (window && window->first > window->second)
        throw std::invalid_argument("rate window is empty");
    std::vector<int> ks;
    std::vector<double> hs;
    for (std::size_t i = 0; i < series.k.size(); ++i) {
        const int k = series.k[i];
        const double h = series.h[i];
        if (h <= series.noise_floor) continue;
        if (model == RateModel::power && k < 1) continue;
        if (model == RateModel::geometric && k < 0) continue;
        if (window && (k < window->first || k > window->second)) continue;
        ks.push_back(k);
        hs.push_back(h);
    }
    // Exact finite termination can leave very short series; five points is the
    // least we accept for a two-parameter log fit.
    if (ks.size() < 5)
        throw InsufficientDataError(
            "rate fit needs at least 5 usable merit points, found " +
            std::to_string(ks.size()));
    std::size_t begin = 0;
    if (!window) {
        // Fit the tail: the asymptotic regime, past any transient.
        std::size_t take = static_cast<std::size_t>(
            std::ceil(0.6 * static_cast<double>(ks.size())));
        take = std::max<std::size_t>(take, 10);
        begin = ks.size() - std::min(take, ks.size());
    }
    std::vector<double> xs, ys;
    xs.reserve(ks.size() - begin);
    ys.reserve(ks.size() - begin);
    for (std::size_t i = begin; i < ks.size(); ++i) {
        xs.push_back(model == RateModel::power
                         ? std::log(static_cast<double>(ks[i]))
                         : static_cast<double>(ks[i]));
        ys.push_back(std::log(hs[i]));
    }
    LinearFit fit = linear_fit(xs, ys);
    RateFit out;
    out.model = model;
    out.r2 = fit.r2;
    out.intercept = fit.intercept;
    out.points_used = static_cast<int>(xs.size());
    out.first_k = ks[begin];
    out.last_k = ks.back();
    if (model == RateModel::geometric) {
        out.ratio = std::exp(fit.slope);
        out.exponent = 0.0;
    } else {
        out.exponent = fit.slope;
        out.ratio = 0.0;
    }
    return out;
}

std::vector<double> theta_best_series(const RunHistory& history) {
    const auto& recs = history.records;
    std::vector<double> best;
    if (recs.size() < 2) return best;
    best.reserve(recs.size() - 1);
    for (std::size_t k = 1; k < recs.size(); ++k) {
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t i = k / 2; i <= k; ++i)
            b = std::min(b, std::abs(recs[i].theta_fw));
        best.push_back(b);
    }
    return best;
}

long InequalityReport::total_violations() const {
    long n = 0;
    for (const CheckResult& c : checks) n += c.violations;
    return n;
}

bool InequalityReport::passed() const { return total_violations() == 0; }

namespace {

void record_violation(CheckResult& c, double excess, long k) {
    ++c.violations;
    if (excess > c.worst) c.worst = excess;
    if (c.first_k < 0) c.first_k = k;
}

}  // namespace

InequalityReport verify_inequalities(const MultiObjective& objective,
                                     const FeasibleSet& set,
                                     const RunHistory& history,
                                     const VerifyContext& ctx, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("verification tolerance must be positive");
    if (history.records.empty())
        throw InvalidPairingError("history has no iterates to verify");
    const auto& recs = history.records;
    const std::size_t K = recs.size() - 1;
    const double L = smoothness_constant(objective);
    const double mu = strong_convexity_constant(objective);

    std::optional<MeritSeries> merits;
    double href_err = 0.0;
    if (ctx.reference) {
        merits = merit_series(history, *ctx.reference);
        href_err = 10.0 * ctx.reference->achieved_theta;
    }
    const bool have_tilde =
        !recs.empty() && recs.front().theta_tilde_value.has_value();
    const bool euclidean_modulus =
        ctx.uniform_convexity && ctx.uniform_convexity->norm_p == 2.0;

    InequalityReport report;

    {  // F_j(x^{k+1}) <= F_j(x^k) + (theta_k / 2) gamma_k
        CheckResult c{"per-step-descent", 0, 0, 0.0, -1, false, ""};
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t j = 0; j < recs[k].F.size(); ++j) {
                const double rhs = recs[k].F[j] +
                                   0.5 * recs[k].theta_fw * recs[k].gamma;
                const double slack = tol * (1.0 + std::abs(recs[k].F[j]));
                const double excess = recs[k + 1].F[j] - rhs - slack;
                ++c.checked;
                if (excess > 0) record_violation(c, excess, recs[k].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // h(x^k) <= L D^2 / 2 for k >= 1
        CheckResult c{"post-step-merit-cap", 0, 0, 0.0, -1, false, ""};
        if (!merits || !ctx.euclidean_diameter) {
            c.skipped = true;
            c.note = merits ? "no diameter available" : "no reference available";
        } else {
            const double D = *ctx.euclidean_diameter;
            const double cap = 0.5 * L * D * D;
            const double slack = tol * (1.0 + cap) + href_err;
            for (std::size_t k = 1; k <= K; ++k) {
                ++c.checked;
                const double excess = merits->h[k] - cap - slack;
                if (excess > 0) record_violation(c, excess, recs[k].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // (mu/2) ||x^k - x*||^2 <= |theta_k| when mu > 0
        CheckResult c{"strong-convexity-distance", 0, 0, 0.0, -1, false, ""};
        if (!(mu > 0)) {
            c.skipped = true;
            c.note = "objective is not strongly convex";
        } else if (!ctx.reference) {
            c.skipped = true;
            c.note = "no reference available";
        } else {
            // A refined reference sits within delta of the true efficient
            // point, with (mu/2) delta^2 <= achieved_theta.
            const double delta =
                std::sqrt(2.0 * ctx.reference->achieved_theta / mu);
            for (std::size_t k = 0; k <= K; ++k) {
                const double dist = euclidean(sub(recs[k].x, ctx.reference->x_star));
                const double lhs = 0.5 * mu * dist * dist;
                const double slack = tol * (1.0 + std::abs(recs[k].theta_fw)) +
                                     mu * delta * dist + 0.5 * mu * delta * delta;
                ++c.checked;
                const double excess = lhs - std::abs(recs[k].theta_fw) - slack;
                if (excess > 0) record_violation(c, excess, recs[k].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // |theta_k| >= (alpha/4) ||d_k||^q |theta~_k|
        CheckResult c{"gap-product-lower-bound", 0, 0, 0.0, -1, false, ""};
        if (!ctx.uniform_convexity) {
            c.skipped = true;
            c.note = "set has no uniform-convexity certificate";
        } else if (!have_tilde) {
            c.skipped = true;
            c.note = "theta-tilde was not recorded";
        } else if (!euclidean_modulus) {
            c.skipped = true;
            c.note = "modulus norm is not Euclidean";
        } else {
            const double alpha = ctx.uniform_convexity->alpha;
            const double q = ctx.uniform_convexity->q;
            for (std::size_t k = 0; k <= K; ++k) {
                if (!recs[k].theta_tilde_value) continue;
                const double rhs = 0.25 * alpha *
                                   std::pow(recs[k].d_norm, q) *
                                   std::abs(*recs[k].theta_tilde_value);
                const double slack = tol * (1.0 + rhs);
                ++c.checked;
                const double excess = rhs - std::abs(recs[k].theta_fw) - slack;
                if (excess > 0) record_violation(c, excess, recs[k].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // h_{k+1} <= [1 - min{1/2, r_k}] h_k
        CheckResult c{"merit-contraction", 0, 0, 0.0, -1, false, ""};
        if (!ctx.uniform_convexity) {
            c.skipped = true;
            c.note = "set has no uniform-convexity certificate";
        } else if (!have_tilde) {
            c.skipped = true;
            c.note = "theta-tilde was not recorded";
        } else if (!merits) {
            c.skipped = true;
            c.note = "no reference available";
        } else if (!euclidean_modulus) {
            c.skipped = true;
            c.note = "modulus norm is not Euclidean";
        } else {
            const double alpha = ctx.uniform_convexity->alpha;
            const double q = ctx.uniform_convexity->q;
            const double denom = std::pow(2.0, (4.0 + q) / q) * L;
            for (std::size_t k = 0; k < K; ++k) {
                if (!recs[k].theta_tilde_value) continue;
                const double hk = merits->h[k];
                if (hk <= merits->noise_floor) continue;  // both sides are noise
                const double rk = std::pow(hk, (q - 2.0) / q) *
                                  std::pow(alpha * std::abs(*recs[k].theta_tilde_value), 2.0 / q) /
                                  denom;
                const double factor = 1.0 - std::min(0.5, rk);
                const double slack = tol * (1.0 + hk) + href_err;
                ++c.checked;
                const double excess = merits->h[k + 1] - factor * hk - slack;
                if (excess > 0) record_violation(c, excess, recs[k].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // sum_{i=m}^K theta_i^2 <= 2 L D^2 h(x^m) for every m >= 1
        CheckResult c{"theta-square-sum", 0, 0, 0.0, -1, false, ""};
        if (!merits || !ctx.euclidean_diameter) {
            c.skipped = true;
            c.note = merits ? "no diameter available" : "no reference available";
        } else {
            const double D = *ctx.euclidean_diameter;
            double suffix = 0.0;
            std::vector<double> suffix_at(K + 1, 0.0);
            for (std::size_t k = K + 1; k-- > 0;) {
                suffix += recs[k].theta_fw * recs[k].theta_fw;
                suffix_at[k] = suffix;
            }
            for (std::size_t m = 1; m <= K; ++m) {
                const double bound = 2.0 * L * D * D * merits->h[m];
                const double slack = tol * (1.0 + bound) +
                                     2.0 * L * D * D * href_err;
                ++c.checked;
                const double excess = suffix_at[m] - bound - slack;
                if (excess > 0) record_violation(c, excess, recs[m].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // sum_{i=m}^K min{|theta_i|, theta_i^2 / (L ||d_i||^2)} <= 2 h(x^m)
        CheckResult c{"theta-min-sum", 0, 0, 0.0, -1, false, ""};
        if (!merits) {
            c.skipped = true;
            c.note = "no reference available";
        } else {
            double suffix = 0.0;
            std::vector<double> suffix_at(K + 1, 0.0);
            for (std::size_t k = K + 1; k-- > 0;) {
                const double at = std::abs(recs[k].theta_fw);
                const double d2 = recs[k].d_norm * recs[k].d_norm;
                const double term =
                    d2 > 0 ? std::min(at, at * at / (L * d2)) : 0.0;
                suffix += term;
                suffix_at[k] = suffix;
            }
            for (std::size_t m = 1; m <= K; ++m) {
                const double bound = 2.0 * merits->h[m];
                const double slack = tol * (1.0 + bound) + 2.0 * href_err;
                ++c.checked;
                const double excess = suffix_at[m] - bound - slack;
                if (excess > 0) record_violation(c, excess, recs[m].k);
            }
        }
        report.checks.push_back(c);
    }

    {  // every iterate stays feasible
        CheckResult c{"feasibility", 0, 0, 0.0, -1, false, ""};
        for (std::size_t k = 0; k <= K; ++k) {
            ++c.checked;
            const double excess = feasibility_excess(set, recs[k].x) - 1e-8;
            if (excess > 0) record_violation(c, excess, recs[k].k);
        }
        report.checks.push_back(c);
    }

    return report;
}

long envelope_crossover(const EnvelopeParams& p) {
    if (!(p.c0 > 0) || !(p.c1 > 0) || p.c1 >= 1.0 || !(p.c2 > 0) || !(p.beta > 0))
        throw std::invalid_argument("envelope constants must satisfy c0,c2,beta > 0, 0 < c1 < 1");
    const double target = std::pow(p.c1 / p.c2, 1.0 / p.beta) / p.c0;
    const double log_base = std::log(target) / std::log(1.0 - p.c1);
    const double floored = std::floor(log_base) + 2.0;
    if (floored <= 1.0) return 1;
    if (floored > 1e15) throw std::invalid_argument("envelope crossover overflows");
    return static_cast<long>(floored);
}

double recursion_envelope(const EnvelopeParams& p, long k) {
    if (k < 1) throw std::invalid_argument("envelope index must be >= 1");
    const long k0 = envelope_crossover(p);
    if (k < k0) return p.c0 * std::pow(1.0 - p.c1, static_cast<double>(k - 1));
    // From k0 on, only the power branch is a theorem: a sequence that starts
    // below the phase threshold (c1/c2)^{1/beta} skips the geometric phase and
    // can sit above c0(1-c1)^{k-1} at k = k0 while still obeying the
    // recursion. The sequence is non-increasing, so c0 stays a valid cap.
    const double poly = std::pow(
        (p.c1 / p.c2) / (1.0 + p.c1 * p.beta * static_cast<double>(k - k0)),
        1.0 / p.beta);
    return std::min(poly, p.c0);
}

EnvelopeParams strong_convexity_envelope(double L, double D, double mu,
                                         double alpha, double q) {
    if (!(L > 0) || !(D > 0) || !(mu > 0) || !(alpha > 0) || !(q >= 2))
        throw std::invalid_argument("envelope inputs must be positive with q >= 2");
    EnvelopeParams p;
    p.c0 = 0.5 * L * D * D;
    p.c1 = 0.5;
    p.c2 = std::pow(alpha * alpha * mu / 8.0, 1.0 / q) / (2.0 * L);
    p.beta = (q - 1.0) / q;
    return p;
}

double zeta_constant(double alpha, double q, double c_lower) {
    if (!(alpha > 0) || !(q >= 2) || !(c_lower > 0))
        throw std::invalid_argument("zeta inputs must be positive with q >= 2");
    return std::pow(alpha * c_lower, 2.0 / q) / std::pow(2.0, (4.0 + q) / q);
}

double contraction_factor_q2(double L, double zeta) {
    if (!(L > 0) || !(zeta > 0))
        throw std::invalid_argument("contraction inputs must be positive");
    return std::max(0.5, 1.0 - zeta / L);
}

EnvelopeParams gap_lower_envelope(double L, double D, double alpha, double q,
                                  double c_lower) {
    if (!(L > 0) || !(D > 0) || !(alpha > 0) || !(q > 2) || !(c_lower > 0))
        throw std::invalid_argument("gap envelope needs positive inputs and q > 2");
    EnvelopeParams p;
    p.c0 = 0.5 * L * D * D;
    p.c1 = 0.5;
    p.c2 = zeta_constant(alpha, q, c_lower) / L;
    p.beta = (q - 2.0) / q;
    return p;
}

}  // namespace mfw
