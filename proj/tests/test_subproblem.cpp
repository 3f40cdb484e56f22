#include <doctest.h>

#include <cmath>
#include <random>

#include "mfw/feasible_sets.hpp"
#include "mfw/grid_oracle.hpp"
#include "mfw/numerics.hpp"
#include "mfw/subproblem.hpp"

using namespace mfw;

namespace {

Matrix random_gradients(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Matrix G(m, n);
    for (double& v : G.data) v = coef(rng);
    return G;
}

double worst_inner(const Matrix& G, const Vector& y, const Vector& x) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < G.rows; ++j)
        worst = std::max(worst, dot(matrix_row(G, j), sub(y, x)));
    return worst;
}

}  // namespace

TEST_CASE("single gradient reduces to the support function") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    Matrix G = matrix_from_rows({{3.0, 4.0}});
    MinMaxResult res = solve_minmax(G, Vector{0.0, 0.0}, ball);
    CHECK(res.theta_fw == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(res.p_fw[0] == doctest::Approx(-0.6).epsilon(1e-12));
    CHECK(res.p_fw[1] == doctest::Approx(-0.8).epsilon(1e-12));
    CHECK(res.lambda.size() == 1);
    CHECK(res.lambda[0] == doctest::Approx(1.0));
    CHECK(res.duality_gap <= 1e-10);
}

TEST_CASE("two symmetric gradients split the weight evenly") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    Matrix G = matrix_from_rows({{1.0, 0.0}, {0.0, 1.0}});
    MinMaxResult res = solve_minmax(G, Vector{0.0, 0.0}, ball);
    // optimum y = -(1,1)/sqrt(2), both inner products equal
    CHECK(res.theta_fw == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-10));
    CHECK(res.lambda[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.lambda[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.duality_gap <= 1e-10);
}

TEST_CASE("opposed gradients force a stationary point") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    Matrix G = matrix_from_rows({{1.0, 0.5}, {-1.0, -0.5}});
    MinMaxResult res = solve_minmax(G, Vector{0.2, 0.1}, ball);
    // any movement helps one objective and hurts the other equally
    CHECK(res.theta_fw == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("all-zero gradients report stationarity") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    Matrix G(2, 2, 0.0);
    MinMaxResult res = solve_minmax(G, Vector{0.3, 0.1}, ball);
    CHECK(res.stationary);
    CHECK(res.theta_fw == 0.0);
}

TEST_CASE("polytope path agrees with hand optimum") {
    FeasibleSet set{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})};
    Matrix G = matrix_from_rows({{1.0, 1.0}});
    MinMaxResult res = solve_minmax(G, Vector{0.0, 0.0}, set);
    CHECK(res.theta_fw == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(res.duality_gap <= 1e-10);
    CHECK(res.lambda[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ball and polytope forms of the cross-polytope agree") {
    FeasibleSet as_ball = make_norm_ball(1.0, 1.0, Vector{0.0, 0.0});
    FeasibleSet as_poly{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})};
    std::mt19937_64 rng(99);
    for (int t = 0; t < 25; ++t) {
        const std::size_t m = 1 + t % 3;
        Matrix G = random_gradients(rng, m, 2);
        Vector x = random_feasible_point(as_poly, rng);
        MinMaxResult a = solve_minmax(G, x, as_ball);
        MinMaxResult b = solve_minmax(G, x, as_poly);
        CHECK(a.theta_fw == doctest::Approx(b.theta_fw).epsilon(1e-8));
    }
}

TEST_CASE("certified gaps against the brute-force grid") {
    std::mt19937_64 rng(2024);
    FeasibleSet sets[] = {make_norm_ball(2.0, 1.0, Vector{0.0, 0.0}),
                          FeasibleSet{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})}};
    for (const FeasibleSet& set : sets) {
        for (int t = 0; t < 10; ++t) {
            const std::size_t m = 1 + t % 3;
            Matrix G = random_gradients(rng, m, 2);
            Vector x = random_feasible_point(set, rng);
            MinMaxResult res = solve_minmax(G, x, set);
            CHECK(res.duality_gap <= 1e-10);
            CHECK(res.theta_fw <= 0.0);
            CHECK(contains(set, res.p_fw, 1e-8));
            // primal value at the reported point matches theta
            CHECK(worst_inner(G, res.p_fw, x) ==
                  doctest::Approx(res.theta_fw).epsilon(1e-9));
            const double grid = grid_oracle_minmax(G, x, set, 201);
            CHECK(std::abs(res.theta_fw - grid) <= 5e-3);
        }
    }
}

TEST_CASE("dual weights stay on the simplex") {
    std::mt19937_64 rng(5150);
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    for (int t = 0; t < 20; ++t) {
        Matrix G = random_gradients(rng, 3, 2);
        Vector x = random_feasible_point(ball, rng);
        MinMaxResult res = solve_minmax(G, x, ball);
        double total = 0.0;
        for (double l : res.lambda) {
            CHECK(l >= -1e-12);
            total += l;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("distance-to-hull value for one gradient") {
    Matrix G = matrix_from_rows({{3.0, -4.0}});
    ThetaTildeResult r = theta_tilde(G);
    CHECK(r.value == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(r.lambda[0] == doctest::Approx(1.0));
}

TEST_CASE("distance-to-hull value for a segment") {
    Matrix G = matrix_from_rows({{1.0, 0.0}, {0.0, 1.0}});
    ThetaTildeResult r = theta_tilde(G);
    CHECK(r.value == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-10));
    CHECK(r.lambda[0] == doctest::Approx(0.5).epsilon(1e-8));

    // hull through the origin
    Matrix O = matrix_from_rows({{1.0, 0.5}, {-1.0, -0.5}});
    CHECK(theta_tilde(O).value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("segment projection closed form") {
    Matrix G = matrix_from_rows({{2.0, 0.0}, {0.0, 1.0}});
    MinNormResult r = min_norm_point(G);
    CHECK(r.g_star[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(r.g_star[1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(r.lambda[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.lambda[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("hull containing the origin yields the zero point") {
    Matrix G = matrix_from_rows({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}});
    MinNormResult r = min_norm_point(G);
    CHECK(lp_norm(r.g_star, 2.0) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("projection optimality certificate on random hulls") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 3 + t % 3;
        const std::size_t n = 2 + t % 3;
        Matrix G = random_gradients(rng, m, n);
        MinNormResult r = min_norm_point(G);

        // weights on the simplex reconstruct the point
        double total = 0.0;
        Vector mix(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(r.lambda[j] >= -1e-10);
            total += r.lambda[j];
            axpy(mix, r.lambda[j], matrix_row(G, j));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(mix[i] == doctest::Approx(r.g_star[i]).epsilon(1e-7));

        // variational inequality <g*, g_j - g*> >= 0 for every vertex
        for (std::size_t j = 0; j < m; ++j)
            CHECK(dot(r.g_star, sub(matrix_row(G, j), r.g_star)) >= -1e-8);

        // consistency with the signed distance value
        ThetaTildeResult tt = theta_tilde(G);
        CHECK(-tt.value == doctest::Approx(lp_norm(r.g_star, 2.0)).epsilon(1e-8));
    }
}
