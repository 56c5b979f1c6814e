#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sigmalab/bounds.hpp"
#include "sigmalab/error.hpp"
#include "sigmalab/specfun.hpp"

using namespace sigmalab;

namespace {

const double ln2 = std::numbers::ln2;

PointSet pts2(const std::vector<Vec>& p, Space space = Space::Torus) { return PointSet(2, space, p); }

}  // namespace

TEST_SUITE("bounds")
{
TEST_CASE("multiscale product")
{
    const PointSet X = pts2({{0, 0}, {0.01, 0}, {0, 0.03}, {0.2, 0.2}});
    // l1 distances from node 0: 0.01, 0.03, 0.4; scale 0.05 keeps the first two
    CHECK(multiscale_product(X, 0, 0.05, LpNorm::one()) == doctest::Approx(0.2 * 0.6));
    CHECK(multiscale_product(X, 3, 0.05, LpNorm::one()) == 1);
    // torus wrap: 0.49 and -0.49 are 0.02 apart
    const PointSet W = pts2({{0.49, 0}, {-0.49, 0}});
    CHECK(multiscale_product(W, 0, 0.04, LpNorm::two()) == doctest::Approx(0.5));
    CHECK_THROWS_AS(multiscale_product(X, 9, 0.05, LpNorm::one()), Error);
}

TEST_CASE("well-separated cube")
{
    const PointSet X = pts2({{0, 0}, {0.3, 0.1}});
    // beta = 1/(2 ln 2): e^{1/(2 beta)} = 2 and the lower bound vanishes
    const BoundReport Z = wellsep_cube(10, X, 1 / (2 * ln2), OperatorKind::Discrete);
    CHECK(Z.applicable);
    CHECK(Z.lower == 0);
    // beta = 1/(2 ln 1.19): sqrt(2 - 1.19) = 0.9
    const double beta = 1 / (2 * std::log(1.19));
    // m = 30: beta d / m = 0.19 <= 0.3, |Q_30 cap Z^2| = 61^2, |Q_30| = 60^2
    const BoundReport R = wellsep_cube(30, X, beta, OperatorKind::Discrete);
    CHECK(R.applicable);
    CHECK(R.lower == doctest::Approx(0.9 * 61).epsilon(1e-12));
    CHECK(*R.upper == doctest::Approx(std::sqrt(1.19) * 61).epsilon(1e-12));
    const BoundReport C = wellsep_cube(30, X, beta, OperatorKind::Continuous);
    CHECK(C.lower == doctest::Approx(0.9 * 60).epsilon(1e-12));

    // Delta_inf = 0.1 < beta d / m = 2 beta / 10 for beta > 0.5
    const BoundReport N = wellsep_cube(10, pts2({{0, 0}, {0.1, 0.05}}), 1 / ln2, OperatorKind::Discrete);
    CHECK_FALSE(N.applicable);
    CHECK(N.lower == 0);
    CHECK_FALSE(N.upper.has_value());
    REQUIRE(N.find("Delta_inf >= beta d / m") != nullptr);
    CHECK_FALSE(N.find("Delta_inf >= beta d / m")->pass);
    CHECK_THROWS_AS(wellsep_cube(10, X, 0.5, OperatorKind::Discrete), Error);

    // the discrete operator measures separation on the torus
    const PointSet W = pts2({{0.49, 0}, {-0.49, 0.01}});
    CHECK_FALSE(wellsep_cube(20, W, 1 / ln2, OperatorKind::Discrete).applicable);
    CHECK(wellsep_cube(20, W, 1 / ln2, OperatorKind::Continuous).applicable);
}

TEST_CASE("well-separated ball")
{
    const PointSet X = pts2({{0, 0}, {0.2, 0}});
    const BoundReport R = wellsep_ball(10, X, 1.5, OperatorKind::Discrete);
    CHECK(R.applicable);
    CHECK(R.lower == doctest::Approx(std::sqrt(0.4279524500 * 100)).epsilon(1e-9));
    CHECK_FALSE(R.upper.has_value());
    CHECK_FALSE(wellsep_ball(5, X, 1.5, OperatorKind::Discrete).applicable);  // 0.2 < 0.3
    CHECK_THROWS_AS(wellsep_ball(10, X, alpha_critical(2), OperatorKind::Discrete), Error);
    try {
        wellsep_ball(10, X, 0.5, OperatorKind::Continuous);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_minorant);
    }
}

TEST_CASE("super-resolution cube, worked example")
{
    // Two nodes 0.01 apart, beta = 1/ln 2, tau = 1/8, m = 100: nu = 2 and
    // 2 beta d nu / tau = 92.3 <= 100. Scale nu/m = 0.02 gives product 1/2,
    // and |Q_25 cap Z^2| = 51^2.
    const PointSet X = pts2({{0, 0}, {0.01, 0}});
    const BoundReport R = sr_cube(100, X, 0.125, 1 / ln2, OperatorKind::Discrete);
    REQUIRE(R.applicable);
    const double factor = 1 - 0.5 * std::sqrt(2.0);
    CHECK(R.constants.at("nu") == 2);
    CHECK(R.lower == doctest::Approx(factor * 51 * 0.5).epsilon(1e-12));
    const BoundReport C = sr_cube(100, X, 0.125, 1 / ln2, OperatorKind::Continuous);
    CHECK(C.lower == doctest::Approx(factor * 50 * 0.5).epsilon(1e-12));

    CHECK_FALSE(sr_cube(90, X, 0.125, 1 / ln2, OperatorKind::Discrete).applicable);  // 92.3 > 90
    CHECK_FALSE(sr_cube(100, X, 0.2, 1 / ln2, OperatorKind::Discrete).applicable);   // tau > 1/8
    // m < 4s
    std::vector<Vec> many;
    for (int i = 0; i < 30; ++i) many.push_back({0.03 * i - 0.45, 0});
    const BoundReport M = sr_cube(100, pts2(many), 0.125, 1 / ln2, OperatorKind::Discrete);
    CHECK_FALSE(M.applicable);
    CHECK_FALSE(M.find("m >= 4s")->pass);
}

TEST_CASE("super-resolution ball")
{
    const PointSet X = pts2({{0, 0}, {0.01, 0}});
    const double alpha = 1.5, tau = 0.1;
    const BoundReport R = sr_ball(100, X, tau, alpha, OperatorKind::Continuous);
    REQUIRE(R.applicable);  // 2 * 1.5 * 2 / 0.1 = 60 <= 100, m >= 8 sqrt 2
    const double c = std::sqrt(c_alpha(alpha, 2) / std::numbers::pi *
                               volume(FrequencyDomain::continuous(Shape::Ball, alpha / tau, 2)) /
                               static_cast<double>(lattice_count(FrequencyDomain::discrete(Shape::Ball, alpha / tau, 2))));
    CHECK(R.constants.at("c_loc") == doctest::Approx(c).epsilon(1e-12));
    // c^2 2^{-1/2} sqrt(pi 25^2) (0.01/0.02) / sqrt 2
    const double expected = c * c * std::pow(2.0, -0.5) * std::sqrt(std::numbers::pi * 625) * 0.5 / std::sqrt(2.0);
    CHECK(R.lower == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(sr_ball(100, X, tau, 0.7, OperatorKind::Continuous), Error);
}

TEST_CASE("clump theorems")
{
    const PointSet X = pts2({{0, 0}, {0.01, 0}, {0.3, 0.3}, {0.31, 0.3}});
    const BoundReport R = clump_cube(100, X, 0.125, 1 / ln2, OperatorKind::Discrete);
    REQUIRE(R.applicable);
    CHECK(R.constants.at("lambda") == 2);
    // sqrt(2/4) (1 - sqrt2/2) * 51 * (100 * 0.01 / 2)
    CHECK(R.lower == doctest::Approx(std::sqrt(0.5) * (1 - 0.5 * std::sqrt(2.0)) * 51 * 0.5).epsilon(1e-12));

    const PointSet U = pts2({{0, 0}, {0.01, 0}, {0.02, 0}, {0.3, 0.3}, {0.31, 0.3}});
    const BoundReport N = clump_cube(100, U, 0.125, 1 / ln2, OperatorKind::Discrete);
    CHECK_FALSE(N.applicable);
    CHECK(N.note == "clumps have unequal cardinality");

    const BoundReport B = clump_ball(100, X, 0.1, 1.5, OperatorKind::Continuous);
    CHECK(B.applicable);
    CHECK(B.lower > 0);
}

TEST_CASE("hyperplane theorems")
{
    const PointSet X = pts2({{0, 0}, {0.01, 0}}, Space::Euclidean);
    const BoundReport R = hyper_cube(100, X, 0.125, 1 / ln2, OperatorKind::Continuous);
    REQUIRE(R.applicable);
    CHECK(R.constants.at("r") == 1);
    const double eta = R.constants.at("eta");
    CHECK(eta > 0);
    CHECK(eta <= 0.01 + 1e-15);
    // sqrt(2/2) (1 - sqrt2/2)^{2/2} sqrt(|Q_25|) 2^{-1/2} (2 m eta / 2)
    const double expected = (1 - 0.5 * std::sqrt(2.0)) * 50 * std::pow(2.0, -0.5) * (100 * eta);
    CHECK(R.lower == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(hyper_cube(100, X, 0.125, 1 / ln2, OperatorKind::Discrete), Error);
    CHECK_FALSE(hyper_cube(200, X, 0.125, 1 / ln2, OperatorKind::Continuous).applicable);  // eta > 1/m

    // neighborhoods that wrap around the torus are not covered
    const PointSet W = pts2({{0.499, 0}, {-0.499, 0}}, Space::Euclidean);
    const BoundReport V = hyper_cube(100, W, 0.125, 1 / ln2, OperatorKind::Continuous);
    CHECK_FALSE(V.applicable);
    CHECK_FALSE(V.find("neighborhoods do not wrap")->pass);
}

TEST_CASE("tau scan and names")
{
    const PointSet X = pts2({{0, 0}, {0.01, 0}});
    const BoundReport B = best_over_tau(Theorem::SRCube, 100, X, 1 / ln2, OperatorKind::Discrete);
    CHECK(B.applicable);
    for (double tau : {0.125, 0.1, 0.0625})
        CHECK(B.lower >= evaluate_bound(Theorem::SRCube, 100, X, tau, 1 / ln2, OperatorKind::Discrete).lower);
    const BoundReport N = best_over_tau(Theorem::SRCube, 10, X, 1 / ln2, OperatorKind::Discrete);
    CHECK_FALSE(N.applicable);
    CHECK(N.constants.at("tau") == 0.125);

    for (Theorem t : {Theorem::WellSepCube, Theorem::WellSepBall, Theorem::SRCube, Theorem::SRBall,
                      Theorem::ClumpCube, Theorem::ClumpBall, Theorem::HyperCube, Theorem::HyperBall})
        CHECK(theorem_from_string(to_string(t)) == t);
    CHECK_FALSE(theorem_from_string("nope").has_value());
    CHECK(to_string(OperatorKind::Continuous) == "continuous");
    CHECK(default_parameter(Theorem::SRCube, 2) == doctest::Approx(1 / ln2));
    CHECK(default_parameter(Theorem::WellSepBall, 2) == doctest::Approx(1.2197).epsilon(1e-4));
    CHECK(localization_constants(Shape::Cube, 1 / ln2, 0.1, 3).C == doctest::Approx(3 / ln2));
    CHECK(localization_constants(Shape::Cube, 1 / ln2, 0.1, 3).c == doctest::Approx(std::sqrt(2 - std::sqrt(2.0))));
}
}
