#pragma once

#include "mfw/feasible_sets.hpp"
#include "mfw/numerics.hpp"

namespace mfw {

// Brute-force value of min_{y in X} max_j <g_j, y - x> for 2-D sets: a dense
// axis-aligned grid over the bounding box, with infeasible nodes replaced by
// their radial projection onto the boundary.  Independent of the LP/dual
// machinery; used as a cross-check oracle.
double grid_oracle_minmax(const Matrix& G, const Vector& x, const FeasibleSet& set,
                          int points_per_axis = 401);

}  // namespace mfw
