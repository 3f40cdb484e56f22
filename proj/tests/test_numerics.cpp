#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfw/errors.hpp"
#include "mfw/numerics.hpp"

using namespace mfw;

static const double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("vector arithmetic") {
    Vector a{1.0, 2.0, 3.0};
    Vector b{4.0, -1.0, 0.5};

    CHECK(dot(a, b) == doctest::Approx(3.5).epsilon(1e-15));

    Vector s = add(a, b);
    CHECK(s[0] == 5.0);
    CHECK(s[1] == 1.0);
    CHECK(s[2] == 3.5);

    Vector d = sub(a, b);
    CHECK(d[0] == -3.0);
    CHECK(d[1] == 3.0);
    CHECK(d[2] == 2.5);

    Vector sc = scaled(a, -2.0);
    CHECK(sc[0] == -2.0);
    CHECK(sc[1] == -4.0);
    CHECK(sc[2] == -6.0);

    Vector y{1.0, 1.0, 1.0};
    axpy(y, 0.5, a);
    CHECK(y[0] == 1.5);
    CHECK(y[1] == 2.0);
    CHECK(y[2] == 2.5);
}

TEST_CASE("matrix products") {
    Matrix m = matrix_from_rows({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(m.rows == 2);
    CHECK(m.cols == 2);
    CHECK(m(1, 0) == 3.0);

    Vector r1 = matrix_row(m, 1);
    CHECK(r1[0] == 3.0);
    CHECK(r1[1] == 4.0);

    Vector x{1.0, -1.0};
    Vector mx = matvec(m, x);
    CHECK(mx[0] == -1.0);
    CHECK(mx[1] == -1.0);

    Vector mtx = matvec_t(m, x);
    CHECK(mtx[0] == -2.0);
    CHECK(mtx[1] == -2.0);

    // m^T m = [[10, 14], [14, 20]]
    Matrix g = gram(m);
    CHECK(g(0, 0) == doctest::Approx(10.0));
    CHECK(g(0, 1) == doctest::Approx(14.0));
    CHECK(g(1, 0) == doctest::Approx(14.0));
    CHECK(g(1, 1) == doctest::Approx(20.0));

    Matrix id = Matrix::identity(3);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(1, 1) == 1.0);
    CHECK(id(2, 1) == 0.0);
}

TEST_CASE("lp norms") {
    Vector v{3.0, -4.0};
    CHECK(lp_norm(v, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lp_norm(v, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(lp_norm(v, kInf) == doctest::Approx(4.0).epsilon(1e-15));
    // ||(1,1)||_3 = 2^(1/3)
    CHECK(lp_norm(Vector{1.0, 1.0}, 3.0) ==
          doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
    CHECK(lp_norm(Vector{0.0, 0.0}, 2.0) == 0.0);
}

TEST_CASE("dual exponents") {
    CHECK(dual_exponent(2.0) == doctest::Approx(2.0));
    CHECK(dual_exponent(3.0) == doctest::Approx(1.5));
    CHECK(dual_exponent(kInf) == doctest::Approx(1.0));
    CHECK_THROWS_AS(dual_exponent(1.0), std::invalid_argument);
}

TEST_CASE("spectral bounds of a symmetric matrix") {
    // eigenvalues of [[2,1],[1,2]] are 1 and 3
    Matrix m = matrix_from_rows({{2.0, 1.0}, {1.0, 2.0}});
    auto [lo, hi] = spectral_bounds(m);
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(hi == doctest::Approx(3.0).epsilon(1e-10));

    Matrix dg = matrix_from_rows({{1.0, 0.0}, {0.0, 0.0}});
    auto [dlo, dhi] = spectral_bounds(dg);
    CHECK(dlo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dhi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("least squares line fit") {
    // exact line y = 2x + 1
    Vector xs{0.0, 1.0, 2.0, 3.0};
    Vector ys{1.0, 3.0, 5.0, 7.0};
    LinearFit fit = linear_fit(xs, ys);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-14));

    // noisy points still give slope between the extremes
    Vector ys2{1.0, 2.5, 5.5, 7.0};
    LinearFit fit2 = linear_fit(xs, ys2);
    CHECK(fit2.slope > 1.5);
    CHECK(fit2.slope < 2.5);
    CHECK(fit2.r2 < 1.0);
    CHECK(fit2.r2 > 0.9);

    CHECK_THROWS_AS(linear_fit(Vector{1.0, 2.0}, Vector{1.0, 2.0}),
                    InsufficientDataError);
    CHECK_THROWS_AS(linear_fit(Vector{1.0, 1.0, 1.0}, Vector{1.0, 2.0, 3.0}),
                    InsufficientDataError);
}
