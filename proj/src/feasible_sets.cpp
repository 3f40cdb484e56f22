#include "mfw/feasible_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfw/errors.hpp"
#include "mfw/simplex.hpp"

namespace mfw {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

Vector polytope_row(const HalfspacePolytope& s, std::size_t i) {
  return matrix_row(s.A, i);
}

}  // namespace

NormBall make_norm_ball(double p, double radius, Vector center) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("norm ball: p must be >= 1 (or inf)");
  if (!(radius > 0.0)) throw std::invalid_argument("norm ball: radius must be positive");
  if (center.empty()) throw std::invalid_argument("norm ball: empty center");
  return NormBall{p, radius, std::move(center)};
}

HalfspacePolytope make_polytope(Matrix A, Vector b, std::vector<Vector> vertices,
                                std::optional<double> diameter_hint) {
  if (A.rows == 0 || A.cols == 0)
    throw std::invalid_argument("polytope: empty constraint matrix");
  if (A.rows != b.size())
    throw std::invalid_argument("polytope: row count mismatch");
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  for (const auto& v : vertices) {
    if (v.size() != A.cols)
      throw std::invalid_argument("polytope: vertex dimension mismatch");
    for (std::size_t i = 0; i < A.rows; ++i)
      if (dot(polytope_row({A, b, {}, {}}, i), v) > b[i] + 1e-9 * scale)
        throw std::invalid_argument("polytope: listed vertex violates constraints");
  }
  HalfspacePolytope s{std::move(A), std::move(b), std::move(vertices), diameter_hint};
  if (s.vertices.empty()) {
    // Boundedness probe: every +/- coordinate direction must have a finite
    // support value.
    for (std::size_t j = 0; j < s.A.cols; ++j) {
      for (double dir : {1.0, -1.0}) {
        LPProblem lp;
        lp.c.assign(s.A.cols, 0.0);
        lp.c[j] = dir;
        lp.A = s.A;
        lp.b = s.b;
        LPSolution sol = simplex_solve(lp);
        if (sol.status == LPStatus::infeasible)
          throw std::invalid_argument("polytope: constraints are infeasible");
        if (sol.status == LPStatus::unbounded)
          throw std::invalid_argument("polytope: unbounded feasible set");
      }
    }
  }
  return s;
}

HalfspacePolytope l1_ball_polytope(std::size_t n, double radius, Vector center) {
  if (n == 0 || n > 7)
    throw std::invalid_argument("l1_ball_polytope: dimension must be in [1, 7]");
  if (!(radius > 0.0)) throw std::invalid_argument("l1_ball_polytope: radius must be positive");
  if (center.size() != n) throw std::invalid_argument("l1_ball_polytope: center size mismatch");
  const std::size_t rows = std::size_t(1) << n;
  Matrix A(rows, n);
  Vector b(rows);
  for (std::size_t mask = 0; mask < rows; ++mask) {
    double rhs = radius;
    for (std::size_t j = 0; j < n; ++j) {
      double s = (mask >> j) & 1 ? -1.0 : 1.0;
      A(mask, j) = s;
      rhs += s * center[j];
    }
    b[mask] = rhs;
  }
  std::vector<Vector> verts;
  for (std::size_t j = 0; j < n; ++j) {
    for (double s : {1.0, -1.0}) {
      Vector v = center;
      v[j] += s * radius;
      verts.push_back(std::move(v));
    }
  }
  return make_polytope(std::move(A), std::move(b), std::move(verts));
}

HalfspacePolytope box_polytope(const Vector& lo, const Vector& hi) {
  const std::size_t n = lo.size();
  if (n == 0 || n != hi.size()) throw std::invalid_argument("box_polytope: bad bounds");
  if (n > 7) throw std::invalid_argument("box_polytope: dimension must be <= 7");
  for (std::size_t j = 0; j < n; ++j)
    if (!(lo[j] < hi[j])) throw std::invalid_argument("box_polytope: lo must be < hi");
  Matrix A(2 * n, n);
  Vector b(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    A(2 * j, j) = 1.0;
    b[2 * j] = hi[j];
    A(2 * j + 1, j) = -1.0;
    b[2 * j + 1] = -lo[j];
  }
  std::vector<Vector> verts;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? hi[j] : lo[j];
    verts.push_back(std::move(v));
  }
  return make_polytope(std::move(A), std::move(b), std::move(verts));
}

std::size_t ambient_dim(const FeasibleSet& set) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, NormBall>)
          return s.center.size();
        else
          return s.A.cols;
      },
      set);
}

bool contains(const FeasibleSet& set, const Vector& x, double tol) {
  if (x.size() != ambient_dim(set))
    throw std::invalid_argument("contains: dimension mismatch");
  if (const auto* ball = std::get_if<NormBall>(&set)) {
    return lp_norm(sub(x, ball->center), ball->p) <= ball->radius + tol;
  }
  const auto& poly = std::get<HalfspacePolytope>(set);
  for (std::size_t i = 0; i < poly.A.rows; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < poly.A.cols; ++j) lhs += poly.A(i, j) * x[j];
    if (lhs > poly.b[i] + tol) return false;
  }
  return true;
}

LmoResult lmo(const FeasibleSet& set, const Vector& direction) {
  const std::size_t n = ambient_dim(set);
  if (direction.size() != n) throw std::invalid_argument("lmo: dimension mismatch");
  double dmax = 0.0;
  for (double g : direction) dmax = std::max(dmax, std::abs(g));

  if (const auto* ball = std::get_if<NormBall>(&set)) {
    const Vector& u = ball->center;
    const double R = ball->radius;
    if (dmax == 0.0) return {u, 0.0, true};
    Vector y = u;
    if (std::isinf(ball->p)) {
      for (std::size_t i = 0; i < n; ++i) y[i] -= R * sgn(direction[i]);
    } else if (ball->p == 1.0) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(direction[i]) > std::abs(direction[best])) best = i;
      y[best] -= R * sgn(direction[best]);
    } else {
      const double qd = dual_exponent(ball->p);
      double S = 0.0;
      for (double g : direction) S += std::pow(std::abs(g) / dmax, qd);
      const double Z = std::pow(S, 1.0 / ball->p);
      for (std::size_t i = 0; i < n; ++i) {
        double t = std::pow(std::abs(direction[i]) / dmax, qd - 1.0);
        y[i] -= R * sgn(direction[i]) * t / Z;
      }
    }
    return {y, dot(direction, y), false};
  }

  const auto& poly = std::get<HalfspacePolytope>(set);
  if (!poly.vertices.empty()) {
    std::size_t best = 0;
    double bestval = dot(direction, poly.vertices[0]);
    for (std::size_t i = 1; i < poly.vertices.size(); ++i) {
      double v = dot(direction, poly.vertices[i]);
      if (v < bestval) {
        bestval = v;
        best = i;
      }
    }
    return {poly.vertices[best], bestval, dmax == 0.0};
  }
  LPProblem lp;
  lp.c = direction;
  lp.A = poly.A;
  lp.b = poly.b;
  LPSolution sol = simplex_solve(lp);
  if (sol.status != LPStatus::optimal)
    throw SolverFailure("lmo: LP over the polytope failed");
  return {sol.x, sol.objective, dmax == 0.0};
}

double diameter(const FeasibleSet& set) {
  if (const auto* ball = std::get_if<NormBall>(&set)) return 2.0 * ball->radius;
  const auto& poly = std::get<HalfspacePolytope>(set);
  if (!poly.vertices.empty()) {
    double d = 0.0;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < poly.vertices.size(); ++j)
        d = std::max(d, lp_norm(sub(poly.vertices[i], poly.vertices[j]), 2.0));
    return d;
  }
  if (poly.diameter_hint) return *poly.diameter_hint;
  throw MissingDataError("diameter: polytope has neither vertices nor a declared diameter");
}

double euclidean_diameter(const FeasibleSet& set) {
  if (const auto* ball = std::get_if<NormBall>(&set)) {
    const double n = double(ball->center.size());
    const double inv_p = std::isinf(ball->p) ? 0.0 : 1.0 / ball->p;
    return 2.0 * ball->radius * std::pow(n, std::max(0.0, 0.5 - inv_p));
  }
  return diameter(set);
}

std::optional<UniformConvexityInfo> uniform_convexity_params(const FeasibleSet& set) {
  const auto* ball = std::get_if<NormBall>(&set);
  if (!ball) return std::nullopt;
  const double p = ball->p;
  if (std::isinf(p) || p == 1.0) return std::nullopt;
  // Unit-ball constants; scaling the ball by R scales the modulus by R^{1-q}
  // (displacements grow by R while the admissible bump only grows linearly).
  // For p > 2 the sharp small-gap constant is 2^{3-p}/p: Clarkson's inequality
  // gives ||m||^p <= 1 - (|x-y|_p/2)^p at the midpoint, and (1-t)^{1/p} <=
  // 1 - t/p turns that into an admissible bump of |x-y|_p^p/(p 2^p); the
  // symmetric boundary pair (a, b), (a, -b) displaced along e1 attains it, so
  // anything larger (e.g. 2/p) is violated at gamma = 1/2.
  const double R = ball->radius;
  if (p <= 2.0) return UniformConvexityInfo{(p - 1.0) / R, 2.0, p};
  return UniformConvexityInfo{std::pow(2.0, 3.0 - p) / p * std::pow(R, 1.0 - p), p, p};
}

Vector uc_displaced_point(const Vector& x, const Vector& y, double gamma,
                          const Vector& z, const UniformConvexityInfo& info) {
  if (x.size() != y.size() || x.size() != z.size())
    throw std::invalid_argument("uc_displaced_point: dimension mismatch");
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("uc_displaced_point: gamma outside [0,1]");
  const double step = lp_norm(sub(y, x), info.norm_p);
  const double coef = gamma * (1.0 - gamma) * 0.5 * info.alpha * std::pow(step, info.q);
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] + gamma * (y[i] - x[i]) + coef * z[i];
  return out;
}

UcSampleReport check_uniform_convexity_sample(
    const FeasibleSet& set, int trials, std::uint64_t seed,
    std::optional<UniformConvexityInfo> override_info) {
  if (trials <= 0) throw std::invalid_argument("uc check: trials must be positive");
  std::optional<UniformConvexityInfo> info =
      override_info ? override_info : uniform_convexity_params(set);
  if (!info)
    throw MissingDataError("uc check: set has no uniform convexity constants");

  const std::size_t n = ambient_dim(set);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto membership_excess = [&](const Vector& pt) -> double {
    if (const auto* ball = std::get_if<NormBall>(&set))
      return lp_norm(sub(pt, ball->center), ball->p) - ball->radius;
    const auto& poly = std::get<HalfspacePolytope>(set);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.A.rows; ++i) {
      double lhs = -poly.b[i];
      for (std::size_t j = 0; j < poly.A.cols; ++j) lhs += poly.A(i, j) * pt[j];
      worst = std::max(worst, lhs);
    }
    return worst;
  };

  UcSampleReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Vector x = random_feasible_point(set, rng);
    Vector y = random_feasible_point(set, rng);
    double gamma = unif(rng);
    Vector z(n);
    for (auto& v : z) v = gauss(rng);
    double zn = lp_norm(z, info->norm_p);
    if (zn == 0.0) {
      z.assign(n, 0.0);
      z[0] = 1.0;
      zn = 1.0;
    }
    for (auto& v : z) v /= zn;

    Vector disp = uc_displaced_point(x, y, gamma, z, *info);
    double excess = membership_excess(disp);
    if (excess > 1e-9) {
      if (rep.violations == 0) {
        rep.first_bad_x = x;
        rep.first_bad_y = y;
        rep.first_bad_z = z;
        rep.first_bad_gamma = gamma;
      }
      ++rep.violations;
      rep.max_violation = std::max(rep.max_violation, excess);
    }
  }
  return rep;
}

Vector random_feasible_point(const FeasibleSet& set, std::mt19937_64& rng) {
  const std::size_t n = ambient_dim(set);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (const auto* ball = std::get_if<NormBall>(&set)) {
    Vector dir(n);
    double norm = 0.0;
    while (norm == 0.0) {
      for (auto& v : dir) v = gauss(rng);
      norm = lp_norm(dir, ball->p);
    }
    const double r = ball->radius * std::pow(unif(rng), 1.0 / double(n));
    Vector pt = ball->center;
    for (std::size_t i = 0; i < n; ++i) pt[i] += r * dir[i] / norm;
    return pt;
  }
  const auto& poly = std::get<HalfspacePolytope>(set);
  if (poly.vertices.empty())
    throw MissingDataError("random_feasible_point: polytope needs a vertex list");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(poly.vertices.size());
  double tot = 0.0;
  for (auto& v : w) {
    v = expo(rng);
    tot += v;
  }
  Vector pt(n, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    axpy(pt, w[i] / tot, poly.vertices[i]);
  return pt;
}

}  // namespace mfw
