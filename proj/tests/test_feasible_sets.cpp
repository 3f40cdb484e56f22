#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "mfw/feasible_sets.hpp"

using namespace mfw;

TEST_CASE("lmo on the Euclidean unit ball") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    LmoResult r = lmo(ball, Vector{3.0, 4.0});
    CHECK(r.point[0] == doctest::Approx(-0.6).epsilon(1e-14));
    CHECK(r.point[1] == doctest::Approx(-0.8).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(-5.0).epsilon(1e-14));
    CHECK_FALSE(r.degenerate);

    LmoResult z = lmo(ball, Vector{0.0, 0.0});
    CHECK(z.degenerate);
}

TEST_CASE("lmo on a shifted, scaled ball") {
    FeasibleSet ball = make_norm_ball(2.0, 2.0, Vector{1.0, -1.0});
    LmoResult r = lmo(ball, Vector{1.0, 0.0});
    CHECK(r.point[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r.point[1] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("lmo on the l3 unit ball") {
    FeasibleSet ball = make_norm_ball(3.0, 1.0, Vector{0.0, 0.0});
    LmoResult r = lmo(ball, Vector{1.0, 1.0});
    // support value is -||g||_{3/2} = -2^{2/3}
    CHECK(r.value == doctest::Approx(-std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));
    CHECK(r.point[0] == doctest::Approx(-std::pow(2.0, -1.0 / 3.0)).epsilon(1e-13));
    CHECK(r.point[1] == doctest::Approx(r.point[0]).epsilon(1e-13));
    CHECK(lp_norm(r.point, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cross-polytope construction and deterministic lmo tie-break") {
    HalfspacePolytope poly = l1_ball_polytope(2, 1.0, Vector{0.0, 0.0});
    CHECK(poly.A.rows == 4);
    CHECK(poly.vertices.size() == 4);
    // vertex order +e1, -e1, +e2, -e2
    CHECK(poly.vertices[0][0] == 1.0);
    CHECK(poly.vertices[1][0] == -1.0);
    CHECK(poly.vertices[2][1] == 1.0);
    CHECK(poly.vertices[3][1] == -1.0);

    FeasibleSet set = poly;
    // direction (1,1): both -e1 and -e2 give value -1, lowest index wins
    LmoResult r = lmo(set, Vector{1.0, 1.0});
    CHECK(r.value == doctest::Approx(-1.0));
    CHECK(r.point[0] == -1.0);
    CHECK(r.point[1] == 0.0);
}

TEST_CASE("membership tests") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    CHECK(contains(ball, Vector{0.6, 0.8}));
    CHECK_FALSE(contains(ball, Vector{0.8, 0.8}));

    FeasibleSet poly = l1_ball_polytope(2, 1.0, Vector{0.0, 0.0});
    CHECK(contains(poly, Vector{0.5, 0.5}));
    CHECK(contains(poly, Vector{0.5, 0.5 + 1e-10}));  // within tolerance
    CHECK_FALSE(contains(poly, Vector{0.6, 0.5}));
}

TEST_CASE("diameters") {
    CHECK(diameter(make_norm_ball(2.0, 2.0, Vector{0.0, 0.0})) == doctest::Approx(4.0));
    CHECK(euclidean_diameter(make_norm_ball(2.0, 1.0, Vector{3.0, 3.0})) ==
          doctest::Approx(2.0));
    // farthest cross-polytope vertices are opposite tips
    CHECK(euclidean_diameter(FeasibleSet{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})}) ==
          doctest::Approx(2.0));
    CHECK(euclidean_diameter(FeasibleSet{box_polytope(Vector{0.0, 0.0}, Vector{1.0, 1.0})}) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("polytope validation") {
    // vertex outside its own halfspaces is rejected
    Matrix A = matrix_from_rows({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
    Vector b{1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(make_polytope(A, b, {Vector{2.0, 0.0}}), std::invalid_argument);

    // unbounded slab without vertices is rejected by the LP probes
    Matrix slab = matrix_from_rows({{1.0, 0.0}, {-1.0, 0.0}});
    CHECK_THROWS_AS(make_polytope(slab, Vector{1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("uniform convexity constants per set") {
    auto l2 = uniform_convexity_params(make_norm_ball(2.0, 1.0, Vector{0.0, 0.0}));
    REQUIRE(l2.has_value());
    CHECK(l2->alpha == doctest::Approx(1.0));
    CHECK(l2->q == doctest::Approx(2.0));
    CHECK(l2->norm_p == doctest::Approx(2.0));

    // 2^{3-p}/p at p=3; the once-common 2/p is falsified by the symmetric
    // boundary pair (a, b), (a, -b) displaced along e1 at gamma = 1/2
    auto l3 = uniform_convexity_params(make_norm_ball(3.0, 1.0, Vector{0.0, 0.0}));
    REQUIRE(l3.has_value());
    CHECK(l3->alpha == doctest::Approx(1.0 / 3.0));
    CHECK(l3->q == doctest::Approx(3.0));
    CHECK(l3->norm_p == doctest::Approx(3.0));

    CHECK_FALSE(uniform_convexity_params(make_norm_ball(1.0, 1.0, Vector{0.0, 0.0})));
    CHECK_FALSE(uniform_convexity_params(
        FeasibleSet{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})}));
}

TEST_CASE("p > 2 modulus above 2^{3-p}/p escapes the ball") {
    FeasibleSet ball = make_norm_ball(3.0, 1.0, Vector{0.0, 0.0});
    const double b = 0.6;
    const double a = std::pow(1.0 - b * b * b, 1.0 / 3.0);
    Vector x{a, b}, y{a, -b}, z{1.0, 0.0};
    UniformConvexityInfo inflated{2.0 / 3.0, 3.0, 3.0};
    CHECK_FALSE(contains(ball, uc_displaced_point(x, y, 0.5, z, inflated), 1e-9));
    UniformConvexityInfo safe{1.0 / 3.0, 3.0, 3.0};
    CHECK(contains(ball, uc_displaced_point(x, y, 0.5, z, safe), 1e-12));
}

TEST_CASE("modulus constant scales down with the radius") {
    FeasibleSet big = make_norm_ball(2.0, 2.0, Vector{0.0, 0.0});
    auto info = uniform_convexity_params(big);
    REQUIRE(info.has_value());
    CHECK(info->alpha == doctest::Approx(0.5));
    // the scaled constant must keep displaced points inside the bigger ball
    UcSampleReport rep = check_uniform_convexity_sample(big, 500, 11);
    CHECK(rep.violations == 0);

    auto l3 = uniform_convexity_params(make_norm_ball(3.0, 2.0, Vector{0.0, 0.0}));
    REQUIRE(l3.has_value());
    CHECK(l3->alpha == doctest::Approx((1.0 / 3.0) * std::pow(2.0, -2.0)));
}

TEST_CASE("displaced point formula") {
    UniformConvexityInfo info{1.0, 2.0, 2.0};
    Vector p = uc_displaced_point(Vector{0.0, 0.0}, Vector{1.0, 0.0}, 0.5,
                                  Vector{0.0, 1.0}, info);
    // x + gamma d + gamma(1-gamma)(alpha/2)||d||^2 z = (0.5, 0.125)
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.125));
}

TEST_CASE("sampled membership of displaced points") {
    FeasibleSet ball = make_norm_ball(2.0, 1.0, Vector{0.0, 0.0});
    UcSampleReport ok = check_uniform_convexity_sample(ball, 500, 7);
    CHECK(ok.trials == 500);
    CHECK(ok.violations == 0);

    // an inflated modulus must produce points outside the ball
    UniformConvexityInfo wrong{4.0, 2.0, 2.0};
    UcSampleReport bad = check_uniform_convexity_sample(ball, 500, 7, wrong);
    CHECK(bad.violations > 0);
    CHECK(bad.max_violation > 0.0);
}

TEST_CASE("random feasible points stay feasible") {
    std::mt19937_64 rng(42);
    FeasibleSet sets[] = {
        make_norm_ball(2.0, 1.0, Vector{0.0, 0.0}),
        make_norm_ball(3.0, 0.5, Vector{1.0, -1.0}),
        FeasibleSet{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})},
        FeasibleSet{box_polytope(Vector{-1.0, 0.0}, Vector{1.0, 2.0})},
    };
    for (const FeasibleSet& s : sets)
        for (int t = 0; t < 50; ++t)
            CHECK(contains(s, random_feasible_point(s, rng)));
}

TEST_CASE("ambient dimension") {
    CHECK(ambient_dim(make_norm_ball(2.0, 1.0, Vector{0.0, 0.0, 0.0})) == 3);
    CHECK(ambient_dim(FeasibleSet{l1_ball_polytope(2, 1.0, Vector{0.0, 0.0})}) == 2);
}
