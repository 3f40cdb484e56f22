#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mfw {

using Vector = std::vector<double>;

// Dense row-major matrix.  Everything in this project is desk scale
// (dimensions <= 64), so no attempt is made at blocking or views.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix identity(std::size_t n);
};

Matrix matrix_from_rows(const std::vector<Vector>& rows);
Vector matrix_row(const Matrix& m, std::size_t i);

double dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, double s);
// y += alpha * x
void axpy(Vector& y, double alpha, const Vector& x);

Vector matvec(const Matrix& m, const Vector& x);
// m^T x
Vector matvec_t(const Matrix& m, const Vector& x);
// m^T m
Matrix gram(const Matrix& m);

// ||v||_p for p >= 1; p may be +infinity.
double lp_norm(const Vector& v, double p);

// p/(p-1) for p > 1; infinity maps to 1 and p -> 1+ diverges (rejected).
double dual_exponent(double p);

// (lambda_min, lambda_max) of a symmetric matrix via cyclic Jacobi sweeps.
std::pair<double, double> spectral_bounds(const Matrix& m, double tol = 1e-12);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares on (xs, ys).  Requires >= 3 points and non-constant
// xs.  A perfect constant fit reports r2 = 1.
LinearFit linear_fit(const Vector& xs, const Vector& ys);

}  // namespace mfw
