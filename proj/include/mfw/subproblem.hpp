#pragma once

#include <vector>

#include "mfw/feasible_sets.hpp"
#include "mfw/numerics.hpp"

namespace mfw {

// Solution of  min_{y in X} max_j <g_j, y - x>.
struct MinMaxResult {
  Vector p_fw;         // minimizing point
  Vector d_fw;         // p_fw - x
  double theta_fw = 0; // max_j <g_j, d_fw>, clamped into (-inf, 0]
  Vector lambda;       // simplex weights of the dual solution
  double duality_gap = 0;
  bool stationary = false;
};

// G holds the gradients row-wise (m x n); x must be feasible.  Polytopes go
// through an epigraph LP (lambda from the LP duals), and kinked balls
// (p = 1 or infinity) with m >= 2 are rerouted through their polytope form.
// Smooth balls are solved through the concave dual over the weight simplex:
// exact linear minimization for m = 1, derivative bisection for m <= 3 and
// projected supergradient ascent with averaging beyond.  warm_lambda seeds
// the ascent.
MinMaxResult solve_minmax(const Matrix& G, const Vector& x, const FeasibleSet& set,
                          double tol = 1e-10, const Vector* warm_lambda = nullptr);

struct ThetaTildeResult {
  double value = 0.0;  // <= 0
  Vector lambda;
};
// min over the Euclidean unit ball of the worst inner product, i.e. the
// negative distance from the origin to the convex hull of the rows of G.
ThetaTildeResult theta_tilde(const Matrix& G);

struct MinNormResult {
  Vector g_star;
  Vector lambda;
};
// Minimum-norm point of conv{rows of G}: closed-form segment projection for
// m <= 2, Wolfe's algorithm otherwise.
MinNormResult min_norm_point(const Matrix& G);

}  // namespace mfw
