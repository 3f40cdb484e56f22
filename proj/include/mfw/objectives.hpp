#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mfw/numerics.hpp"

namespace mfw {

// F(x) = 0.5 * ||A x - b||^2.  Smoothness and strong convexity constants are
// the extreme eigenvalues of A^T A.
struct QuadraticComponent {
  Matrix A;
  Vector b;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  // (mu, L)
  std::pair<double, double> curvature() const;
};

// One objective component: value/gradient callbacks plus declared constants.
struct Component {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double smoothness = 0.0;        // L_j > 0
  double strong_convexity = 0.0;  // mu_j >= 0 (0 when merely convex)
};

Component make_component(const QuadraticComponent& q);

struct MultiObjective {
  std::vector<Component> components;
  // Retained when every component is quadratic; used for serialization and
  // problem fingerprints.  Empty for callback-built objectives.
  std::vector<QuadraticComponent> quadratics;
  std::size_t dim = 0;

  std::size_t size() const { return components.size(); }
};

MultiObjective make_multiobjective(std::vector<QuadraticComponent> parts);
MultiObjective make_multiobjective(std::vector<Component> parts, std::size_t dim);

// (F_1(x), ..., F_m(x))
Vector evaluate(const MultiObjective& f, const Vector& x);
// m x n matrix with gradient of F_j in row j.
Matrix gradients(const MultiObjective& f, const Vector& x);
// L = max_j L_j
double smoothness_constant(const MultiObjective& f);
// mu = min_j mu_j (0 as soon as one component is not strongly convex)
double strong_convexity_constant(const MultiObjective& f);

}  // namespace mfw
