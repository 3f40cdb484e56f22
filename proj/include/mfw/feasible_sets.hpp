#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "mfw/numerics.hpp"

namespace mfw {

// ||x - center||_p <= radius, with p in [1, inf].
struct NormBall {
  double p = 2.0;
  double radius = 1.0;
  Vector center;
};

// { y : A y <= b }.  Vertices are optional; without them the linear
// minimization oracle falls back to an LP solve and the Euclidean diameter
// must be declared by the caller.
struct HalfspacePolytope {
  Matrix A;
  Vector b;
  std::vector<Vector> vertices;
  std::optional<double> diameter_hint;
};

using FeasibleSet = std::variant<NormBall, HalfspacePolytope>;

NormBall make_norm_ball(double p, double radius, Vector center);
// Validates vertex membership and boundedness (via LP probes when no vertex
// list is supplied).
HalfspacePolytope make_polytope(Matrix A, Vector b,
                                std::vector<Vector> vertices = {},
                                std::optional<double> diameter_hint = {});
// The l1 ball as an explicit polytope: 2^n sign rows, vertices
// center +/- radius*e_i ordered (+e1, -e1, +e2, -e2, ...).
HalfspacePolytope l1_ball_polytope(std::size_t n, double radius, Vector center);
HalfspacePolytope box_polytope(const Vector& lo, const Vector& hi);

std::size_t ambient_dim(const FeasibleSet& set);
bool contains(const FeasibleSet& set, const Vector& x, double tol = 1e-9);

struct LmoResult {
  Vector point;
  double value = 0.0;      // <direction, point>
  bool degenerate = false; // zero direction: any feasible point is optimal
};
// argmin over the set of <direction, y>; vertex enumeration keeps the lowest
// optimal index, which makes the result deterministic.
LmoResult lmo(const FeasibleSet& set, const Vector& direction);

// Diameter in the set's own norm for balls (2R); max pairwise vertex distance
// for polytopes.
double diameter(const FeasibleSet& set);
// Diameter in the ambient Euclidean norm.
double euclidean_diameter(const FeasibleSet& set);

// Constants (alpha, q) valid in the ||.||_p norm tagged along.
struct UniformConvexityInfo {
  double alpha = 0.0;
  double q = 2.0;
  double norm_p = 2.0;
};
std::optional<UniformConvexityInfo> uniform_convexity_params(const FeasibleSet& set);

// x + gamma (y - x) + gamma (1-gamma) (alpha/2) ||y-x||_p^q z
Vector uc_displaced_point(const Vector& x, const Vector& y, double gamma,
                          const Vector& z, const UniformConvexityInfo& info);

struct UcSampleReport {
  int trials = 0;
  int violations = 0;
  double max_violation = 0.0;  // worst membership excess over the tolerance
  Vector first_bad_x, first_bad_y, first_bad_z;
  double first_bad_gamma = 0.0;
};
// Samples random (x, y, gamma, z) triples and checks the displaced point for
// membership (tolerance 1e-9).  An override makes it possible to test
// deliberately wrong constants.
UcSampleReport check_uniform_convexity_sample(
    const FeasibleSet& set, int trials, std::uint64_t seed,
    std::optional<UniformConvexityInfo> override_info = {});

Vector random_feasible_point(const FeasibleSet& set, std::mt19937_64& rng);

}  // namespace mfw
