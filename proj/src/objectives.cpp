#include "mfw/objectives.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfw {

double QuadraticComponent::value(const Vector& x) const {
  Vector r = sub(matvec(A, x), b);
  return 0.5 * dot(r, r);
}

Vector QuadraticComponent::gradient(const Vector& x) const {
  Vector r = sub(matvec(A, x), b);
  return matvec_t(A, r);
}

std::pair<double, double> QuadraticComponent::curvature() const {
  auto [lo, hi] = spectral_bounds(gram(A));
  return {std::max(lo, 0.0), hi};
}

Component make_component(const QuadraticComponent& q) {
  auto [mu, L] = q.curvature();
  Component c;
  c.value = [q](const Vector& x) { return q.value(x); };
  c.gradient = [q](const Vector& x) { return q.gradient(x); };
  c.smoothness = L;
  c.strong_convexity = mu;
  return c;
}

MultiObjective make_multiobjective(std::vector<QuadraticComponent> parts) {
  if (parts.empty()) throw std::invalid_argument("objectives: need at least one component");
  const std::size_t n = parts[0].A.cols;
  MultiObjective f;
  for (const auto& q : parts) {
    if (q.A.cols != n || q.A.rows != q.b.size())
      throw std::invalid_argument("objectives: inconsistent quadratic shapes");
    f.components.push_back(make_component(q));
  }
  f.quadratics = std::move(parts);
  f.dim = n;
  return f;
}

MultiObjective make_multiobjective(std::vector<Component> parts, std::size_t dim) {
  if (parts.empty()) throw std::invalid_argument("objectives: need at least one component");
  if (dim == 0) throw std::invalid_argument("objectives: dimension must be positive");
  for (const auto& c : parts) {
    if (!c.value || !c.gradient)
      throw std::invalid_argument("objectives: component callbacks missing");
    if (!(c.smoothness > 0.0))
      throw std::invalid_argument("objectives: smoothness constant must be positive");
    if (c.strong_convexity < 0.0)
      throw std::invalid_argument("objectives: strong convexity must be >= 0");
  }
  MultiObjective f;
  f.components = std::move(parts);
  f.dim = dim;
  return f;
}

Vector evaluate(const MultiObjective& f, const Vector& x) {
  if (x.size() != f.dim) throw std::invalid_argument("evaluate: dimension mismatch");
  Vector out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = f.components[j].value(x);
  return out;
}

Matrix gradients(const MultiObjective& f, const Vector& x) {
  if (x.size() != f.dim) throw std::invalid_argument("gradients: dimension mismatch");
  Matrix g(f.size(), f.dim);
  for (std::size_t j = 0; j < f.size(); ++j) {
    Vector gj = f.components[j].gradient(x);
    if (gj.size() != f.dim)
      throw std::invalid_argument("gradients: component returned wrong dimension");
    for (std::size_t i = 0; i < f.dim; ++i) g(j, i) = gj[i];
  }
  return g;
}

double smoothness_constant(const MultiObjective& f) {
  double L = 0.0;
  for (const auto& c : f.components) L = std::max(L, c.smoothness);
  return L;
}

double strong_convexity_constant(const MultiObjective& f) {
  double mu = f.components[0].strong_convexity;
  for (const auto& c : f.components) mu = std::min(mu, c.strong_convexity);
  return mu;
}

}  // namespace mfw
