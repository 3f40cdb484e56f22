#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfw/feasible_sets.hpp"
#include "mfw/objectives.hpp"
#include "mfw/solver.hpp"

namespace mfw {

// A certified efficient point used as the anchor for merit values
// h(x) = min_j [F_j(x) - F_j(x*)].
struct ReferencePoint {
    Vector x_star;
    Vector F_star;
    bool refined = false;        // true when obtained by running the solver
    double achieved_theta = 0.0; // |theta| certificate at x_star
    std::string fingerprint;     // problem identity, used for pairing checks
};

// Wrap a known efficient point. Verifies feasibility and near-stationarity
// (|theta(x_star)| <= tol); throws std::invalid_argument otherwise.
ReferencePoint reference_from_point(const MultiObjective& objective,
                                    const FeasibleSet& set,
                                    const Vector& x_star,
                                    double tol = 1e-10);

// Produce a reference by running the solver to high accuracy. Throws
// PartialReferenceError (carrying the best |theta| reached) when the
// iteration cap is hit before the tolerance.
ReferencePoint refine_reference(const MultiObjective& objective,
                                const FeasibleSet& set,
                                double tol = 1e-13,
                                const std::optional<Vector>& start = std::nullopt,
                                int max_iters = 200000);

// Merit values h_k = min_j [F_j(x^k) - F_j(x^*)] along a run, paired with
// iteration indices. Values below noise_floor are unreliable for fitting.
struct MeritSeries {
    std::vector<int> k;
    std::vector<double> h;
    double noise_floor = 0.0;
};

// Throws InvalidPairingError when the history and reference belong to
// different problems (fingerprint mismatch) or when merits come out
// significantly negative (reference does not dominate the run).
MeritSeries merit_series(const RunHistory& history, const ReferencePoint& ref);

enum class RateModel { geometric, power };

struct RateFit {
    RateModel model;
    double ratio = 0.0;      // geometric: h_{k+1} ~ ratio * h_k
    double exponent = 0.0;   // power: h_k ~ C * k^exponent
    double r2 = 0.0;
    double intercept = 0.0;  // of the underlying log-space fit
    int points_used = 0;
    int first_k = 0;
    int last_k = 0;
};

// Fit a decay model to the tail of a merit series. Points at or below the
// noise floor are discarded; the power model additionally needs k >= 1.
// window (if given) restricts to first <= k <= last before tail selection;
// when absent the last 60% of usable points are fitted. Fewer than 5
// usable points raise InsufficientDataError.
RateFit fit_rate(const MeritSeries& series, RateModel model,
                 const std::optional<std::pair<int, int>>& window = std::nullopt);

// best (smallest) |theta| over the half-open trailing window i in
// [floor(k/2), k], for each k >= 1. Entry t is the value for k = t + 1.
std::vector<double> theta_best_series(const RunHistory& history);

// One verified inequality family.
struct CheckResult {
    std::string name;
    long checked = 0;     // individual comparisons performed
    long violations = 0;
    double worst = 0.0;   // largest violation excess above the slack
    long first_k = -1;    // iteration of the first violation
    bool skipped = false;
    std::string note;
};

struct InequalityReport {
    std::vector<CheckResult> checks;
    long total_violations() const;
    bool passed() const;
};

// Optional problem-level constants for the checks that need them.
struct VerifyContext {
    const ReferencePoint* reference = nullptr;   // enables merit-based checks
    std::optional<double> euclidean_diameter;    // D, for cap/sum checks
    std::optional<UniformConvexityInfo> uniform_convexity;
};

// Re-evaluate the per-iteration guarantees on a finished run:
//   per-step-descent        F_j(x^{k+1}) <= F_j(x^k) + (theta_k/2) gamma_k
//   post-step-merit-cap     h(x^k) <= L D^2 / 2                (k >= 1)
//   strong-convexity-distance  (mu/2)||x^k - x*||^2 <= |theta_k|  (mu > 0)
//   gap-product-lower-bound |theta_k| >= (alpha/4)||d_k||^q |theta~_k|
//   merit-contraction       h_{k+1} <= [1 - min{1/2, r_k}] h_k
//   theta-square-sum        sum_{i=m}^K theta_i^2 <= 2 L D^2 h(x^m)
//   theta-min-sum           sum_{i=m}^K min{|theta_i|, theta_i^2/(L||d_i||^2)} <= 2 h(x^m)
//   feasibility             x^k in X
// Checks whose inputs are missing are reported with skipped = true.
InequalityReport verify_inequalities(const MultiObjective& objective,
                                     const FeasibleSet& set,
                                     const RunHistory& history,
                                     const VerifyContext& ctx,
                                     double tol = 1e-9);

// Decay envelope for sequences obeying
//   h_{k+1} <= [1 - min{c1, c2 h_k^beta}] h_k,  h_1 <= c0.
struct EnvelopeParams {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double beta = 0.0;
};

// Index where the envelope switches from the geometric branch to the
// polynomial branch.
long envelope_crossover(const EnvelopeParams& p);

// Envelope value at index k >= 1: c0 (1-c1)^{k-1} up to the crossover,
// [(c1/c2) / (1 + c1 beta (k - k0))]^{1/beta} past it (min of the two at k0).
double recursion_envelope(const EnvelopeParams& p, long k);

// Envelope constants for a strongly convex objective over an
// (alpha,q)-uniformly convex set: c0 = L D^2/2, c1 = 1/2,
// c2 = (1/(2L)) (alpha^2 mu / 8)^{1/q}, beta = (q-1)/q.
EnvelopeParams strong_convexity_envelope(double L, double D, double mu,
                                         double alpha, double q);

// zeta = (alpha * c)^{2/q} / 2^{(4+q)/q} where c = inf_k |theta~(x^k)|.
double zeta_constant(double alpha, double q, double c_lower);

// Per-step merit contraction factor max{1/2, 1 - zeta/L} (q = 2 case).
double contraction_factor_q2(double L, double zeta);

// Envelope constants when the gap proxy |theta~| stays bounded away from
// zero and q > 2: c0 = L D^2/2, c1 = 1/2, c2 = zeta/L, beta = (q-2)/q.
EnvelopeParams gap_lower_envelope(double L, double D, double alpha, double q,
                                  double c_lower);

}  // namespace mfw
