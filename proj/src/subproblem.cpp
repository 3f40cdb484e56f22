#include "mfw/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mfw/errors.hpp"
#include "mfw/simplex.hpp"

namespace mfw {

namespace {

Vector combine(const Matrix& G, const Vector& lambda) {
  Vector g(G.cols, 0.0);
  for (std::size_t j = 0; j < G.rows; ++j)
    for (std::size_t i = 0; i < G.cols; ++i) g[i] += lambda[j] * G(j, i);
  return g;
}

double max_inner(const Matrix& G, const Vector& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < G.rows; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < G.cols; ++i) s += G(j, i) * d[i];
    best = std::max(best, s);
  }
  return best;
}

// Maximize a concave function on [a, b] to interval width tol.
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Vector project_simplex(Vector v) {
  Vector u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double t = (cum - 1.0) / double(i + 1);
    if (t < u[i]) tau = t;
  }
  for (auto& x : v) x = std::max(0.0, x - tau);
  return v;
}

// h(lambda) = min_y <g(lambda), y - x> evaluated through the set's lmo.
double dual_value(const FeasibleSet& set, const Vector& g, const Vector& x) {
  return lmo(set, g).value - dot(g, x);
}

// Argmax over [0,1] of h(l) = min_y <l g_0 + (1-l) g_1, y - x>. By Danskin,
// h'(l) = <g_0 - g_1, y(l) - x> with y(l) the lmo point, and h is concave, so
// the derivative's sign change can be bisected to machine precision. Golden
// search on h itself stalls at sqrt(eps) accuracy in l, which is not enough
// to certify duality gaps near 1e-10.
double best_lambda2(const Matrix& G, const Vector& x, const FeasibleSet& set) {
  const Vector g0 = matrix_row(G, 0), g1 = matrix_row(G, 1);
  const Vector dg = sub(g0, g1);
  auto phi = [&](double l) {
    Vector g = add(scaled(g0, l), scaled(g1, 1.0 - l));
    if (lp_norm(g, 2.0) == 0.0) return 0.0;  // stationary mixture
    return dot(dg, sub(lmo(set, g).point, x));
  };
  if (phi(1.0) >= 0.0) return 1.0;
  if (phi(0.0) <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Exact m = 3 weights by nesting the same idea. Parameterize the simplex as
// lambda(a, b) = (a, (1-a)b, (1-a)(1-b)); each slice of h is concave (affine
// reparameterization), so the inner argmax over b and the outer argmax over a
// are both derivative-sign bisections. Danskin gives the slopes from the lmo
// point: dH/db ~ s_1 - s_2 and dH/da = s_0 - b s_1 - (1-b) s_2 with
// s_j = <g_j, y(lambda) - x>, the latter valid at the inner argmax because the
// inner interval does not move with a. Requires a unique lmo point, i.e. a
// smooth set; kinked balls are rerouted before reaching here.
Vector best_lambda3(const Matrix& G, const Vector& x, const FeasibleSet& set) {
  const Vector g0 = matrix_row(G, 0), g1 = matrix_row(G, 1), g2 = matrix_row(G, 2);
  double gscale = 0.0;
  for (const auto* g : {&g0, &g1, &g2}) gscale = std::max(gscale, lp_norm(*g, 2.0));

  Vector stationary_at;  // set when a mixture with g(lambda) ~ 0 is found

  // s_j at lambda(a, b); empty when the mixture is already stationary, in
  // which case h(lambda) ~ 0 is a global maximum and the search can stop.
  auto slopes = [&](double a, double b) -> Vector {
    Vector g = scaled(g0, a);
    axpy(g, (1.0 - a) * b, g1);
    axpy(g, (1.0 - a) * (1.0 - b), g2);
    if (lp_norm(g, 2.0) <= 1e-14 * gscale) {
      stationary_at = {a, (1.0 - a) * b, (1.0 - a) * (1.0 - b)};
      return {};
    }
    Vector d = sub(lmo(set, g).point, x);
    return {dot(g0, d), dot(g1, d), dot(g2, d)};
  };

  // Maximize H(a, .); returns the argmax b and the slopes there.
  auto inner = [&](double a) -> std::pair<double, Vector> {
    Vector s1 = slopes(a, 1.0);
    if (s1.empty() || s1[1] - s1[2] >= 0.0) return {1.0, std::move(s1)};
    Vector s0 = slopes(a, 0.0);
    if (s0.empty() || s0[1] - s0[2] <= 0.0) return {0.0, std::move(s0)};
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
      double mid = 0.5 * (lo + hi);
      Vector s = slopes(a, mid);
      if (s.empty()) return {mid, std::move(s)};
      (s[1] - s[2] > 0.0 ? lo : hi) = mid;
    }
    double b = 0.5 * (lo + hi);
    return {b, slopes(a, b)};
  };

  auto outer_slope = [&](double a, double& b_out) -> double {
    auto [b, s] = inner(a);
    b_out = b;
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    return s[0] - b * s[1] - (1.0 - b) * s[2];
  };

  auto lambda_at = [&](double a, double b) -> Vector {
    return {a, (1.0 - a) * b, (1.0 - a) * (1.0 - b)};
  };

  double b_out = 0.0;
  double d1 = outer_slope(1.0, b_out);
  if (std::isnan(d1)) return stationary_at;
  if (d1 >= 0.0) return {1.0, 0.0, 0.0};
  double d0 = outer_slope(0.0, b_out);
  if (std::isnan(d0)) return stationary_at;
  if (d0 <= 0.0) return lambda_at(0.0, b_out);
  double lo = 0.0, hi = 1.0, a = 0.0;
  for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
    a = 0.5 * (lo + hi);
    double d = outer_slope(a, b_out);
    if (std::isnan(d)) return stationary_at;
    (d > 0.0 ? lo : hi) = a;
  }
  a = 0.5 * (lo + hi);
  outer_slope(a, b_out);
  if (!stationary_at.empty()) return stationary_at;
  return lambda_at(a, b_out);
}

struct AscentResult {
  Vector lambda;   // best dual weights seen
  Vector y;        // best primal point seen
  double h = 0.0;  // dual value at lambda
  double p = 0.0;  // primal value at y
};

// Projected supergradient ascent with iterate averaging over the weight
// simplex; terminates on the primal-dual gap.
AscentResult dual_ascent(const Matrix& G, const Vector& x, const FeasibleSet& set,
                         double tol, Vector lambda0, int cap = 100000) {
  const std::size_t m = G.rows;
  Vector lam = project_simplex(std::move(lambda0));
  Vector lam_sum(m, 0.0);

  AscentResult best;
  best.h = -std::numeric_limits<double>::infinity();
  best.p = std::numeric_limits<double>::infinity();
  double c0 = 0.0;

  auto probe = [&](const Vector& lambda) {
    Vector g = combine(G, lambda);
    LmoResult res = lmo(set, g);
    Vector s(m);
    for (std::size_t j = 0; j < m; ++j)
      s[j] = dot(matrix_row(G, j), sub(res.point, x));
    double h = dot(g, sub(res.point, x));
    double p = *std::max_element(s.begin(), s.end());
    if (h > best.h) {
      best.h = h;
      best.lambda = lambda;
    }
    if (p < best.p) {
      best.p = p;
      best.y = res.point;
    }
    return s;
  };

  for (int t = 1; t <= cap; ++t) {
    Vector s = probe(lam);
    if (t == 1) {
      double smax = 1.0;
      for (double v : s) smax = std::max(smax, std::abs(v));
      c0 = 1.0 / smax;
    }
    if (best.p - best.h <= tol) return best;
    double step = c0 / std::sqrt(double(t));
    Vector next = lam;
    axpy(next, step, s);
    lam = project_simplex(std::move(next));
    for (std::size_t j = 0; j < m; ++j) lam_sum[j] += lam[j];
    if (t % 64 == 0) {
      Vector avg = scaled(lam_sum, 1.0 / double(t));
      probe(project_simplex(std::move(avg)));
      if (best.p - best.h <= tol) return best;
    }
  }
  if (best.p - best.h <= std::max(tol, 1e-9)) return best;
  throw SolverFailure("dual ascent: gap " + std::to_string(best.p - best.h) +
                      " above tolerance after iteration cap");
}

// Minimum-norm point in the affine hull of the selected rows:
// solve [Q 1; 1^T 0] [w; nu] = [0; 1] by Gaussian elimination.
Vector affine_minimizer(const std::vector<Vector>& pts) {
  const std::size_t k = pts.size();
  std::vector<std::vector<double>> M(k + 1, std::vector<double>(k + 2, 0.0));
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      M[i][j] = dot(pts[i], pts[j]);
      scale = std::max(scale, std::abs(M[i][j]));
    }
  for (std::size_t i = 0; i < k; ++i) {
    M[i][k] = 1.0;
    M[k][i] = 1.0;
  }
  M[k][k + 1] = 1.0;
  scale = std::max(scale, 1.0);

  const std::size_t nn = k + 1;
  for (std::size_t col = 0; col < nn; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < nn; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    if (std::abs(M[piv][col]) < 1e-14 * scale) {
      // Degenerate Gram system (e.g. affinely dependent points): regularize.
      for (std::size_t i = 0; i < k; ++i) M[i][i] += 1e-12 * scale;
      piv = col;
      for (std::size_t r = col; r < nn; ++r)
        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    std::swap(M[col], M[piv]);
    for (std::size_t r = 0; r < nn; ++r) {
      if (r == col || M[r][col] == 0.0) continue;
      double f = M[r][col] / M[col][col];
      for (std::size_t cc = col; cc < k + 2; ++cc) M[r][cc] -= f * M[col][cc];
    }
  }
  Vector w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = M[i][k + 1] / M[i][i];
  return w;
}

MinNormResult wolfe_min_norm(const Matrix& G) {
  const std::size_t m = G.rows;
  std::vector<Vector> P(m);
  for (std::size_t j = 0; j < m; ++j) P[j] = matrix_row(G, j);

  std::size_t start = 0;
  double best = dot(P[0], P[0]);
  for (std::size_t j = 1; j < m; ++j) {
    double v = dot(P[j], P[j]);
    if (v < best) {
      best = v;
      start = j;
    }
  }
  std::vector<std::size_t> S{start};
  Vector w{1.0};
  Vector xv = P[start];

  for (int major = 0; major < 200 * int(m) + 50; ++major) {
    const double xx = dot(xv, xv);
    std::size_t j = 0;
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      double v = dot(xv, P[i]);
      if (v < inner) {
        inner = v;
        j = i;
      }
    }
    if (inner >= xx - 1e-12 * std::max(1.0, xx)) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 100; ++minor) {
      std::vector<Vector> pts;
      for (std::size_t idx : S) pts.push_back(P[idx]);
      Vector v = affine_minimizer(pts);
      double vmin = *std::min_element(v.begin(), v.end());
      if (vmin >= -1e-12) {
        w = v;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < S.size(); ++i)
        if (v[i] < w[i])
          theta = std::min(theta, w[i] / (w[i] - v[i]));
      for (std::size_t i = 0; i < S.size(); ++i)
        w[i] = (1.0 - theta) * w[i] + theta * v[i];
      // Drop points forced to zero weight, keeping at least one.
      for (std::size_t i = S.size(); i-- > 0 && S.size() > 1;) {
        if (w[i] <= 1e-12) {
          S.erase(S.begin() + i);
          w.erase(w.begin() + i);
        }
      }
      double tot = std::accumulate(w.begin(), w.end(), 0.0);
      for (auto& wi : w) wi /= tot;
    }
    xv.assign(G.cols, 0.0);
    for (std::size_t i = 0; i < S.size(); ++i) axpy(xv, w[i], P[S[i]]);
  }

  MinNormResult out;
  out.g_star = xv;
  out.lambda.assign(m, 0.0);
  for (std::size_t i = 0; i < S.size(); ++i) out.lambda[S[i]] += w[i];
  return out;
}

}  // namespace

MinMaxResult solve_minmax(const Matrix& G, const Vector& x, const FeasibleSet& set,
                          double tol, const Vector* warm_lambda) {
  const std::size_t m = G.rows;
  const std::size_t n = ambient_dim(set);
  if (m == 0) throw std::invalid_argument("solve_minmax: no gradients");
  if (G.cols != n || x.size() != n)
    throw std::invalid_argument("solve_minmax: dimension mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_minmax: tol must be positive");
  if (!contains(set, x, 1e-8))
    throw std::invalid_argument("solve_minmax: x is not feasible");

  // Kinked balls (p = 1 or infinity) have set-valued lmo's at ties, and with
  // several gradients the optimum is typically a mixture of tied corners that
  // a single lmo call cannot produce. Solve those over the equivalent
  // polytope, whose epigraph LP recovers such points exactly.
  if (const auto* ball = std::get_if<NormBall>(&set);
      ball && m >= 2 && ambient_dim(set) <= 7 &&
      (ball->p == 1.0 || std::isinf(ball->p))) {
    FeasibleSet poly;
    if (ball->p == 1.0) {
      poly = l1_ball_polytope(n, ball->radius, ball->center);
    } else {
      Vector lo = ball->center, hi = ball->center;
      for (auto& v : lo) v -= ball->radius;
      for (auto& v : hi) v += ball->radius;
      poly = box_polytope(lo, hi);
    }
    return solve_minmax(G, x, poly, tol, warm_lambda);
  }

  double gscale = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    gscale = std::max(gscale, lp_norm(matrix_row(G, j), 2.0));

  auto stationary_result = [&](Vector lambda) {
    MinMaxResult r;
    r.p_fw = x;
    r.d_fw.assign(n, 0.0);
    r.theta_fw = 0.0;
    r.lambda = std::move(lambda);
    r.duality_gap = 0.0;
    r.stationary = true;
    return r;
  };

  if (gscale <= 1e-15)
    return stationary_result(Vector(m, 1.0 / double(m)));

  Vector lambda;
  Vector y;
  double theta_raw = 0.0;

  const bool is_polytope = std::holds_alternative<HalfspacePolytope>(set);
  if (is_polytope) {
    const auto& poly = std::get<HalfspacePolytope>(set);
    // Epigraph reformulation over (y, t): minimize t subject to
    // <g_j, y> - t <= <g_j, x> and the polytope rows.
    LPProblem lp;
    lp.c.assign(n + 1, 0.0);
    lp.c[n] = 1.0;
    lp.A = Matrix(m + poly.A.rows, n + 1);
    lp.b.assign(m + poly.A.rows, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) lp.A(j, i) = G(j, i);
      lp.A(j, n) = -1.0;
      lp.b[j] = dot(matrix_row(G, j), x);
    }
    for (std::size_t r = 0; r < poly.A.rows; ++r) {
      for (std::size_t i = 0; i < n; ++i) lp.A(m + r, i) = poly.A(r, i);
      lp.b[m + r] = poly.b[r];
    }
    LPSolution sol = simplex_solve(lp);
    if (sol.status != LPStatus::optimal)
      throw SolverFailure("solve_minmax: epigraph LP not optimal");
    y.assign(sol.x.begin(), sol.x.begin() + n);
    lambda.assign(m, 0.0);
    double lsum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      lambda[j] = std::max(0.0, sol.ineq_duals[j]);
      lsum += lambda[j];
    }
    if (lsum > 1e-9)
      for (auto& l : lambda) l /= lsum;
    else
      lambda.assign(m, 1.0 / double(m));
  } else {
    if (m == 1) {
      lambda = {1.0};
    } else if (m == 2) {
      double lstar = best_lambda2(G, x, set);
      lambda = {lstar, 1.0 - lstar};
    } else if (m == 3) {
      lambda = best_lambda3(G, x, set);
    } else {
      Vector lam0 = warm_lambda && warm_lambda->size() == m
                        ? *warm_lambda
                        : Vector(m, 1.0 / double(m));
      AscentResult a = dual_ascent(G, x, set, tol, std::move(lam0));
      lambda = a.lambda;
      y = a.y;
    }
  }

  Vector glam = combine(G, lambda);
  if (lp_norm(glam, 2.0) <= 1e-13 * gscale)
    return stationary_result(std::move(lambda));

  if (y.empty()) y = lmo(set, glam).point;
  theta_raw = max_inner(G, sub(y, x));
  double h = dual_value(set, glam, x);
  double gap = std::max(0.0, theta_raw - h);

  // LP duals can be ambiguous at degenerate vertices; if the gap check fails,
  // recover lambda from the dual directly.
  if (gap > tol && is_polytope && m == 2) {
    double lstar = best_lambda2(G, x, set);
    lambda = {lstar, 1.0 - lstar};
    glam = combine(G, lambda);
    if (lp_norm(glam, 2.0) <= 1e-13 * gscale)
      return stationary_result(std::move(lambda));
    h = dual_value(set, glam, x);
    gap = std::max(0.0, theta_raw - h);
  } else if (gap > tol && is_polytope) {
    AscentResult a = dual_ascent(G, x, set, tol, lambda);
    lambda = a.lambda;
    glam = combine(G, lambda);
    h = a.h;
    gap = std::max(0.0, theta_raw - h);
  }
  if (gap > std::max(tol, 1e-12 * std::max(1.0, std::abs(theta_raw))))
    throw SolverFailure("solve_minmax: duality gap " + std::to_string(gap) +
                        " above tolerance");

  MinMaxResult r;
  r.p_fw = std::move(y);
  r.d_fw = sub(r.p_fw, x);
  r.theta_fw = std::min(theta_raw, 0.0);
  r.lambda = std::move(lambda);
  r.duality_gap = gap;
  r.stationary = std::abs(r.theta_fw) <= tol;
  return r;
}

ThetaTildeResult theta_tilde(const Matrix& G) {
  const std::size_t m = G.rows;
  if (m == 0 || G.cols == 0) throw std::invalid_argument("theta_tilde: empty gradients");
  if (m == 1) return {-lp_norm(matrix_row(G, 0), 2.0), {1.0}};
  MinNormResult w = min_norm_point(G);
  return {-lp_norm(w.g_star, 2.0), w.lambda};
}

MinNormResult min_norm_point(const Matrix& G) {
  const std::size_t m = G.rows;
  if (m == 0 || G.cols == 0) throw std::invalid_argument("min_norm_point: empty gradients");
  if (m == 1) return {matrix_row(G, 0), {1.0}};
  if (m == 2) {
    Vector g0 = matrix_row(G, 0), g1 = matrix_row(G, 1);
    Vector diff = sub(g0, g1);
    double den = dot(diff, diff);
    double t = den > 0.0 ? std::clamp(dot(g1, sub(g1, g0)) / den, 0.0, 1.0) : 1.0;
    Vector g = add(scaled(g0, t), scaled(g1, 1.0 - t));
    return {g, {t, 1.0 - t}};
  }
  return wolfe_min_norm(G);
}

}  // namespace mfw
