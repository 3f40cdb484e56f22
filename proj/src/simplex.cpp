#include "mfw/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfw/errors.hpp"

namespace mfw {

namespace {

constexpr double kPivotEps = 1e-11;
// Must sit well below the duality-gap tolerances callers verify against
// (1e-10); the Harris ratio test keeps the tableau well-scaled enough for
// reduced costs to be meaningful at this resolution.
constexpr double kCostEps = 1e-12;
constexpr int kMaxPivots = 50000;

struct Tableau {
  // columns: u (n), v (n), slacks (r), artificials (rows); last entry is rhs
  std::size_t n = 0, r = 0, e = 0;
  std::size_t ncols = 0;
  std::vector<std::vector<double>> row;  // active constraint rows
  std::vector<int> basis;                // basic column per row
  std::vector<char> active;
  std::vector<double> z;                 // reduced cost row, size ncols
  double zval = 0.0;                     // objective of current basis

  std::size_t slack_col(std::size_t i) const { return 2 * n + i; }
  std::size_t art_col(std::size_t i) const { return 2 * n + r + i; }
};

void pivot(Tableau& t, std::size_t pr, std::size_t pc) {
  auto& prow = t.row[pr];
  const double piv = prow[pc];
  for (double& v : prow) v /= piv;
  for (std::size_t i = 0; i < t.row.size(); ++i) {
    if (i == pr || !t.active[i]) continue;
    double f = t.row[i][pc];
    if (f == 0.0) continue;
    auto& ri = t.row[i];
    for (std::size_t j = 0; j < ri.size(); ++j) ri[j] -= f * prow[j];
    ri[pc] = 0.0;
  }
  double f = t.z[pc];
  if (f != 0.0) {
    for (std::size_t j = 0; j < t.ncols; ++j) t.z[j] -= f * prow[j];
    t.z[pc] = 0.0;
    t.zval -= f * prow[t.ncols];
  }
  t.basis[pr] = int(pc);
}

// Entering column: lowest-index eligible column with a negative reduced cost
// (Bland). Leaving row: two-pass Harris test — bound the step length allowing
// a small per-row feasibility slack, then take the numerically largest pivot
// element within the bound. A strict minimum-ratio pivot can be forced onto a
// microscopic element (e.g. a near-zero gradient row of an epigraph LP), which
// blows up the tableau; the slack lets a well-scaled row leave instead. After
// many pivots we drop the slack and fall back to pure Bland to rule out
// cycling on degenerate vertices.
bool simplex_iterate(Tableau& t, const std::vector<char>& eligible, int& pivots,
                     bool& unbounded) {
  unbounded = false;
  constexpr int kBlandAfter = 2000;
  while (true) {
    std::size_t enter = t.ncols;
    for (std::size_t j = 0; j < t.ncols; ++j) {
      if (!eligible[j]) continue;
      if (t.z[j] < -kCostEps) {
        enter = j;
        break;
      }
    }
    if (enter == t.ncols) return true;  // optimal

    const bool harris = pivots < kBlandAfter;
    double theta_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.row.size(); ++i) {
      if (!t.active[i]) continue;
      double a = t.row[i][enter];
      if (a <= kPivotEps) continue;
      double rhs = std::max(t.row[i][t.ncols], 0.0);
      double slack = harris ? 1e-9 * (1.0 + rhs) : 0.0;
      theta_max = std::min(theta_max, (rhs + slack) / a);
    }
    if (theta_max == std::numeric_limits<double>::infinity()) {
      unbounded = true;
      return false;
    }
    std::size_t leave = t.row.size();
    double best_piv = -1.0;
    for (std::size_t i = 0; i < t.row.size(); ++i) {
      if (!t.active[i]) continue;
      double a = t.row[i][enter];
      if (a <= kPivotEps) continue;
      double ratio = std::max(t.row[i][t.ncols], 0.0) / a;
      if (ratio > theta_max) continue;
      if (harris ? (a > best_piv)
                 : (leave == t.row.size() || t.basis[i] < t.basis[leave])) {
        best_piv = a;
        leave = i;
      }
    }
    if (leave == t.row.size()) {
      unbounded = true;
      return false;
    }
    pivot(t, leave, enter);
    if (++pivots > kMaxPivots)
      throw SolverFailure("simplex: pivot limit exceeded");
  }
}

void rebuild_cost_row(Tableau& t, const std::vector<double>& cost) {
  t.z.assign(cost.begin(), cost.end());
  t.zval = 0.0;
  for (std::size_t i = 0; i < t.row.size(); ++i) {
    if (!t.active[i]) continue;
    double cb = cost[t.basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < t.ncols; ++j) t.z[j] -= cb * t.row[i][j];
    t.zval -= cb * t.row[i][t.ncols];
  }
}

}  // namespace

LPSolution simplex_solve(const LPProblem& lp) {
  const std::size_t n = lp.c.size();
  const std::size_t r = lp.A.rows;
  const std::size_t e = lp.Aeq.rows;
  if (n == 0) throw std::invalid_argument("simplex: no variables");
  if (n > 80 || r + e > 160)
    throw std::invalid_argument("simplex: problem above desk scale");
  if ((r > 0 && lp.A.cols != n) || lp.b.size() != r)
    throw std::invalid_argument("simplex: inequality shape mismatch");
  if ((e > 0 && lp.Aeq.cols != n) || lp.beq.size() != e)
    throw std::invalid_argument("simplex: equality shape mismatch");

  const std::size_t rows = r + e;
  Tableau t;
  t.n = n;
  t.r = r;
  t.e = e;
  t.ncols = 2 * n + r + rows;
  t.row.assign(rows, std::vector<double>(t.ncols + 1, 0.0));
  t.basis.assign(rows, 0);
  t.active.assign(rows, 1);

  std::vector<double> sign(rows, 1.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const bool ineq = i < r;
    const double rhs = ineq ? lp.b[i] : lp.beq[i - r];
    const double sgn = rhs < 0.0 ? -1.0 : 1.0;
    sign[i] = sgn;
    for (std::size_t j = 0; j < n; ++j) {
      double a = ineq ? lp.A(i, j) : lp.Aeq(i - r, j);
      t.row[i][j] = sgn * a;
      t.row[i][n + j] = -sgn * a;
    }
    if (ineq) t.row[i][t.slack_col(i)] = sgn;
    t.row[i][t.art_col(i)] = 1.0;
    t.row[i][t.ncols] = sgn * rhs;
    t.basis[i] = int(t.art_col(i));
  }

  LPSolution sol;
  int pivots = 0;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost1(t.ncols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) cost1[t.art_col(i)] = 1.0;
  rebuild_cost_row(t, cost1);
  std::vector<char> eligible(t.ncols, 1);
  for (std::size_t i = 0; i < rows; ++i) eligible[t.art_col(i)] = 0;
  bool unbounded = false;
  simplex_iterate(t, eligible, pivots, unbounded);
  double infeas = -t.zval;  // phase-1 objective value
  if (infeas > 1e-8 * std::max(1.0, lp_norm(lp.b, 1.0) + lp_norm(lp.beq, 1.0))) {
    sol.status = LPStatus::infeasible;
    sol.iterations = pivots;
    return sol;
  }

  // Drive residual artificials out of the basis; an all-zero row is redundant
  // and gets dropped.
  for (std::size_t i = 0; i < rows; ++i) {
    if (t.basis[i] < int(t.art_col(0))) continue;
    std::size_t pc = t.ncols;
    for (std::size_t j = 0; j < t.art_col(0); ++j) {
      if (std::abs(t.row[i][j]) > 1e-9) {
        pc = j;
        break;
      }
    }
    if (pc == t.ncols) {
      t.active[i] = 0;
      continue;
    }
    pivot(t, i, pc);
  }

  // Phase 2 on the real costs.
  std::vector<double> cost2(t.ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost2[j] = lp.c[j];
    cost2[n + j] = -lp.c[j];
  }
  rebuild_cost_row(t, cost2);
  if (!simplex_iterate(t, eligible, pivots, unbounded)) {
    sol.status = LPStatus::unbounded;
    sol.iterations = pivots;
    return sol;
  }

  sol.status = LPStatus::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!t.active[i]) continue;
    int bc = t.basis[i];
    double val = t.row[i][t.ncols];
    if (bc < int(n))
      sol.x[bc] += val;
    else if (bc < int(2 * n))
      sol.x[bc - n] -= val;
  }
  sol.objective = dot(lp.c, sol.x);
  sol.ineq_duals.assign(r, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    if (t.active[i]) sol.ineq_duals[i] = std::max(0.0, t.z[t.slack_col(i)]);
  sol.eq_duals.assign(e, 0.0);
  for (std::size_t i = 0; i < e; ++i)
    if (t.active[r + i]) sol.eq_duals[i] = sign[r + i] * t.z[t.art_col(r + i)];
  sol.iterations = pivots;
  return sol;
}

}  // namespace mfw
