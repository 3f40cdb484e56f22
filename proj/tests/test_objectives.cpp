#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mfw/numerics.hpp"
#include "mfw/objectives.hpp"

using namespace mfw;

namespace {

QuadraticComponent quad(Matrix A, Vector b) {
    QuadraticComponent q;
    q.A = std::move(A);
    q.b = std::move(b);
    return q;
}

}  // namespace

TEST_CASE("quadratic value and gradient, identity A") {
    // F(x) = 0.5 ||x - b||^2 when A = I
    QuadraticComponent q = quad(Matrix::identity(2), Vector{-0.6, -0.6});
    Vector x{0.3, 0.7};
    CHECK(q.value(x) == doctest::Approx(1.25).epsilon(1e-15));
    Vector g = q.gradient(x);
    CHECK(g[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(1.3).epsilon(1e-15));

    auto [mu, L] = q.curvature();
    CHECK(mu == doctest::Approx(1.0));
    CHECK(L == doctest::Approx(1.0));
}

TEST_CASE("quadratic gradient matches finite differences") {
    QuadraticComponent q = quad(matrix_from_rows({{2.0, 1.0}, {0.5, -1.5}}),
                                Vector{0.3, -0.7});
    Vector x{0.4, -0.2};
    Vector g = q.gradient(x);
    const double eps = 1e-6;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vector xp = x, xm = x;
        xp[i] += eps;
        xm[i] -= eps;
        const double fd = (q.value(xp) - q.value(xm)) / (2.0 * eps);
        CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("rank-deficient quadratic has zero strong convexity") {
    QuadraticComponent q = quad(matrix_from_rows({{1.0, 0.0}, {0.0, 0.0}}),
                                Vector{-1.1, 0.0});
    auto [mu, L] = q.curvature();
    CHECK(mu == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(L == doctest::Approx(1.0).epsilon(1e-12));
    // F(0,0) = 0.5 * 1.1^2
    CHECK(q.value(Vector{0.0, 0.0}) == doctest::Approx(0.605).epsilon(1e-15));
}

TEST_CASE("multiobjective aggregation over quadratics") {
    MultiObjective f = make_multiobjective(
        {quad(Matrix::identity(2), Vector{-0.6, -0.6}),
         quad(Matrix::identity(2), Vector{-0.5, -0.5})});
    CHECK(f.size() == 2);
    CHECK(f.dim == 2);
    CHECK(f.quadratics.size() == 2);

    Vector x{0.3, 0.7};
    Vector values = evaluate(f, x);
    CHECK(values[0] == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(values[1] == doctest::Approx(1.04).epsilon(1e-15));

    Matrix G = gradients(f, x);
    CHECK(G.rows == 2);
    CHECK(G.cols == 2);
    CHECK(G(0, 0) == doctest::Approx(0.9));
    CHECK(G(1, 1) == doctest::Approx(1.2));

    CHECK(smoothness_constant(f) == doctest::Approx(1.0));
    CHECK(strong_convexity_constant(f) == doctest::Approx(1.0));
}

TEST_CASE("mixed curvature: mu is the weakest component") {
    MultiObjective f = make_multiobjective(
        {quad(matrix_from_rows({{2.0, 0.0}, {0.0, 1.0}}), Vector{0.0, 0.0}),
         quad(matrix_from_rows({{1.0, 0.0}, {0.0, 0.0}}), Vector{-1.0, 0.0})});
    // L = max eigenvalue of any A^T A = 4; mu = 0 from the singular component
    CHECK(smoothness_constant(f) == doctest::Approx(4.0));
    CHECK(strong_convexity_constant(f) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("callback components carry declared constants") {
    Component c;
    c.value = [](const Vector& x) { return x[0] * x[0] + x[1]; };
    c.gradient = [](const Vector& x) { return Vector{2.0 * x[0], 1.0}; };
    c.smoothness = 2.0;
    c.strong_convexity = 0.5;
    MultiObjective f = make_multiobjective(std::vector<Component>{c}, 2);
    CHECK(f.quadratics.empty());
    CHECK(f.dim == 2);
    CHECK(evaluate(f, Vector{2.0, 1.0})[0] == doctest::Approx(5.0));
    CHECK(gradients(f, Vector{2.0, 1.0})(0, 0) == doctest::Approx(4.0));
    CHECK(smoothness_constant(f) == doctest::Approx(2.0));
    CHECK(strong_convexity_constant(f) == doctest::Approx(0.5));
}

TEST_CASE("make_component wraps a quadratic faithfully") {
    QuadraticComponent q = quad(matrix_from_rows({{1.0, 2.0}, {0.0, 1.0}}),
                                Vector{0.5, -0.5});
    Component c = make_component(q);
    Vector x{0.2, 0.1};
    CHECK(c.value(x) == doctest::Approx(q.value(x)).epsilon(1e-15));
    Vector g1 = c.gradient(x), g2 = q.gradient(x);
    CHECK(g1[0] == doctest::Approx(g2[0]));
    CHECK(g1[1] == doctest::Approx(g2[1]));
    auto [mu, L] = q.curvature();
    CHECK(c.smoothness == doctest::Approx(L));
    CHECK(c.strong_convexity == doctest::Approx(mu));
}
