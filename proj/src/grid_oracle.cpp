#include "mfw/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfw {

double grid_oracle_minmax(const Matrix& G, const Vector& x, const FeasibleSet& set,
                          int points_per_axis) {
  if (ambient_dim(set) != 2)
    throw std::invalid_argument("grid oracle: only 2-D sets are supported");
  if (G.cols != 2 || x.size() != 2)
    throw std::invalid_argument("grid oracle: dimension mismatch");
  if (points_per_axis < 2)
    throw std::invalid_argument("grid oracle: need at least 2 points per axis");

  // Bounding box and projection anchor.
  Vector lo(2), hi(2), anchor(2);
  if (const auto* ball = std::get_if<NormBall>(&set)) {
    for (int j = 0; j < 2; ++j) {
      lo[j] = ball->center[j] - ball->radius;
      hi[j] = ball->center[j] + ball->radius;
    }
    anchor = ball->center;
  } else {
    const auto& poly = std::get<HalfspacePolytope>(set);
    lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    hi = {-lo[0], -lo[1]};
    anchor = {0.0, 0.0};
    std::vector<Vector> support;
    if (!poly.vertices.empty()) {
      support = poly.vertices;
    } else {
      for (int j = 0; j < 2; ++j)
        for (double s : {1.0, -1.0}) {
          Vector dir(2, 0.0);
          dir[j] = s;
          support.push_back(lmo(set, dir).point);
        }
    }
    for (const auto& v : support) {
      for (int j = 0; j < 2; ++j) {
        lo[j] = std::min(lo[j], v[j]);
        hi[j] = std::max(hi[j], v[j]);
      }
      anchor[0] += v[0] / double(support.size());
      anchor[1] += v[1] / double(support.size());
    }
  }

  auto objective = [&](const Vector& y) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < G.rows; ++j) {
      double s = G(j, 0) * (y[0] - x[0]) + G(j, 1) * (y[1] - x[1]);
      best = std::max(best, s);
    }
    return best;
  };

  // Radial projection of an infeasible node onto the boundary, toward the
  // anchor (center / vertex centroid), which lies in the set's interior for
  // the geometries handled here.
  auto project = [&](const Vector& pt, Vector& out) -> bool {
    if (const auto* ball = std::get_if<NormBall>(&set)) {
      Vector d = sub(pt, ball->center);
      double nrm = lp_norm(d, ball->p);
      if (nrm == 0.0) return false;
      out = add(ball->center, scaled(d, ball->radius / nrm));
      return true;
    }
    const auto& poly = std::get<HalfspacePolytope>(set);
    Vector d = sub(pt, anchor);
    double tmax = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.A.rows; ++i) {
      double ad = poly.A(i, 0) * d[0] + poly.A(i, 1) * d[1];
      double slack = poly.b[i] - (poly.A(i, 0) * anchor[0] + poly.A(i, 1) * anchor[1]);
      if (ad > 1e-15) tmax = std::min(tmax, slack / ad);
    }
    if (!std::isfinite(tmax) || tmax <= 0.0) return false;
    out = add(anchor, scaled(d, tmax));
    return true;
  };

  double best = std::numeric_limits<double>::infinity();
  const int N = points_per_axis;
  Vector pt(2), proj(2);
  for (int i = 0; i < N; ++i) {
    pt[0] = lo[0] + (hi[0] - lo[0]) * double(i) / double(N - 1);
    for (int j = 0; j < N; ++j) {
      pt[1] = lo[1] + (hi[1] - lo[1]) * double(j) / double(N - 1);
      if (contains(set, pt, 1e-9)) {
        best = std::min(best, objective(pt));
      } else if (project(pt, proj)) {
        best = std::min(best, objective(proj));
      }
    }
  }
  return best;
}

}  // namespace mfw
