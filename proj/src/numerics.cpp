#include "mfw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfw/errors.hpp"

namespace mfw {

namespace {
constexpr std::size_t kDeskScale = 64;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matrix_from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix_from_rows: no rows");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols)
      throw std::invalid_argument("matrix_from_rows: ragged rows");
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector matrix_row(const Matrix& m, std::size_t i) {
  Vector r(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j) r[j] = m(i, j);
  return r;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scaled(const Vector& a, double s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

void axpy(Vector& y, double alpha, const Vector& x) {
  if (y.size() != x.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

Vector matvec(const Matrix& m, const Vector& x) {
  if (m.cols != x.size()) throw std::invalid_argument("matvec: size mismatch");
  Vector r(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * x[j];
  return r;
}

Vector matvec_t(const Matrix& m, const Vector& x) {
  if (m.rows != x.size()) throw std::invalid_argument("matvec_t: size mismatch");
  Vector r(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[j] += m(i, j) * x[i];
  return r;
}

Matrix gram(const Matrix& m) {
  Matrix g(m.cols, m.cols, 0.0);
  for (std::size_t i = 0; i < m.cols; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m.rows; ++k) s += m(k, i) * m(k, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

double lp_norm(const Vector& v, double p) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("lp_norm: p must be >= 1");
  if (v.empty()) return 0.0;
  double amax = 0.0;
  for (double x : v) amax = std::max(amax, std::abs(x));
  if (amax == 0.0) return 0.0;
  if (std::isinf(p)) return amax;
  if (p == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : v) {
      double t = x / amax;
      s += t * t;
    }
    return amax * std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / amax, p);
  return amax * std::pow(s, 1.0 / p);
}

double dual_exponent(double p) {
  if (std::isnan(p) || p <= 1.0)
    throw std::invalid_argument("dual_exponent: p must be > 1");
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::pair<double, double> spectral_bounds(const Matrix& m, double tol) {
  if (m.rows != m.cols) throw std::invalid_argument("spectral_bounds: not square");
  if (m.rows == 0) throw std::invalid_argument("spectral_bounds: empty matrix");
  if (m.rows > kDeskScale)
    throw std::invalid_argument("spectral_bounds: dimension above desk scale (64)");
  double scale = 0.0;
  for (double x : m.data) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i + 1; j < m.cols; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("spectral_bounds: matrix not symmetric");

  Matrix a = m;
  const std::size_t n = a.rows;
  if (n == 1) return {a(0, 0), a(0, 0)};

  auto offdiag = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  const double stop = tol * std::max(1.0, scale);
  for (int sweep = 0; sweep < 100 && offdiag() > stop; ++sweep) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= stop * 1e-3) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  double lo = a(0, 0), hi = a(0, 0);
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, a(i, i));
    hi = std::max(hi, a(i, i));
  }
  return {lo, hi};
}

LinearFit linear_fit(const Vector& xs, const Vector& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: size mismatch");
  const std::size_t n = xs.size();
  if (n < 3) throw InsufficientDataError("linear_fit: fewer than 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw InsufficientDataError("linear_fit: xs are all identical");

  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - (f.slope * xs[i] + f.intercept);
    ss_res += e * e;
  }
  if (syy <= 1e-30 || ss_res <= 1e-30 * std::max(1.0, syy)) {
    f.r2 = 1.0;  // perfect fit, including the constant-data case
  } else {
    f.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return f;
}

}  // namespace mfw
