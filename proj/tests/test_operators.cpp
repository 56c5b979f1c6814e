#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sigmalab/error.hpp"
#include "sigmalab/operators.hpp"

using namespace sigmalab;

namespace {

const double pi = std::numbers::pi;

PointSet random_points(std::mt19937_64& g, int d, std::size_t s, Space space = Space::Torus)
{
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    std::vector<Vec> pts(s, Vec(d));
    for (auto& p : pts)
        for (double& v : p) v = U(g);
    return PointSet(d, space, pts);
}

}  // namespace

TEST_SUITE("operators")
{
TEST_CASE("matrix examples")
{
    const PointSet X(2, Space::Torus, {{0.0, 0.0}});
    const FourierMatrix Phi = build_matrix(FrequencyDomain::discrete(Shape::Cube, 1, 2), X);
    CHECK(Phi.entries.rows() == 9);
    CHECK(Phi.entries.cols() == 1);
    CHECK(Phi.entries.frobenius() == doctest::Approx(3));

    const PointSet Y(1, Space::Torus, {{0.25}});
    const FourierMatrix P = build_matrix(FrequencyDomain::discrete(Shape::Cube, 1, 1, 2), Y);
    REQUIRE(P.entries.rows() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(P.entries(i, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
        const double omega = -1 + 0.5 * i;
        const cplx expected = std::exp(cplx(0, -2 * pi * omega * 0.25)) / std::sqrt(2.0);
        CHECK(std::abs(P.entries(i, 0) - expected) < 1e-15);
    }
    CHECK_THROWS_AS(build_matrix(FrequencyDomain::continuous(Shape::Cube, 1, 2), X), Error);
}

TEST_CASE("Gram matches Phi^* Phi for every discrete variant")
{
    std::mt19937_64 g(1);
    for (Shape shape : {Shape::Cube, Shape::Ball})
        for (int d = 1; d <= 3; ++d)
            for (int rho : {1, 2}) {
                const PointSet X = random_points(g, d, 6);
                const auto D = FrequencyDomain::discrete(shape, d == 3 ? 3.2 : 6.5, d, rho);
                const GramMatrix G = gram(D, X);
                const FourierMatrix Phi = build_matrix(D, X);
                const CMatrix P = multiply(Phi.entries.adjoint(), Phi.entries);
                for (std::size_t j = 0; j < 6; ++j)
                    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(G.entries(j, k) - P(j, k)) < 1e-10);
                CHECK(G.entries(0, 0).real() == doctest::Approx(static_cast<double>(Phi.rows.size()) / std::pow(rho, d)));
            }
}

TEST_CASE("Gram diagonal of the 5x5 cube")
{
    const PointSet X(2, Space::Torus, {{0.0, 0.0}, {0.3, 0.1}});
    const GramMatrix G = gram(FrequencyDomain::discrete(Shape::Cube, 2, 2), X);
    CHECK(G.entries(0, 0).real() == doctest::Approx(25));
    CHECK(G.provenance == GramProvenance::DiscreteClosedForm);
}

TEST_CASE("continuous cube Gram")
{
    const double m = 3;
    const PointSet X(1, Space::Euclidean, {{0.0}, {1 / (2 * m)}, {0.05}});
    const GramMatrix G = gram(FrequencyDomain::continuous(Shape::Cube, m, 1), X);
    CHECK(G.entries(0, 0).real() == doctest::Approx(2 * m));
    CHECK(std::abs(G.entries(0, 1)) < 1e-14);
    // integral of e^{2 pi i w t} over [-m, m] = sin(2 pi m t) / (pi t)
    const double t = -0.05;
    CHECK(G.entries(0, 2).real() == doctest::Approx(std::sin(2 * pi * m * t) / (pi * t)).epsilon(1e-13));

    std::mt19937_64 g(2);
    const PointSet Y = random_points(g, 2, 4, Space::Euclidean);
    const GramMatrix H = gram(FrequencyDomain::continuous(Shape::Cube, 2.5, 2), Y);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            double p = 1;
            for (int l = 0; l < 2; ++l) {
                const double tl = Y[j][l] - Y[k][l];
                p *= tl == 0 ? 5 : std::sin(2 * pi * 2.5 * tl) / (pi * tl);
            }
            CHECK(std::abs(H.entries(j, k) - p) < 1e-12);
        }
}

TEST_CASE("continuous ball Gram")
{
    std::mt19937_64 g(3);
    const PointSet X = random_points(g, 2, 5, Space::Euclidean);
    const double m = 4;
    const GramMatrix G = gram(FrequencyDomain::continuous(Shape::Ball, m, 2), X);
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t k = 0; k < 5; ++k) {
            const double r = std::hypot(X[j][0] - X[k][0], X[j][1] - X[k][1]);
            // integral over the disk = m J_1(2 pi m r) / r
            const double v = r == 0 ? pi * m * m : m * boost::math::cyl_bessel_j(1, 2 * pi * m * r) / r;
            CHECK(std::abs(G.entries(j, k) - v) < 1e-11 * pi * m * m);
        }
    const PointSet Y = random_points(g, 3, 4, Space::Euclidean);
    const GramMatrix H = gram(FrequencyDomain::continuous(Shape::Ball, 2, 3), Y);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < j; ++k) {
            double r2 = 0;
            for (int l = 0; l < 3; ++l) r2 += std::pow(Y[j][l] - Y[k][l], 2);
            const double r = std::sqrt(r2), kk = 2 * pi * 2 * r;
            const double v = (std::sin(kk) - kk * std::cos(kk)) / (2 * pi * pi * r * r * r);
            CHECK(std::abs(H.entries(j, k) - v) < 1e-11 * 32 * pi / 3);
        }
}

TEST_CASE("spectrum matches Eigen SVD and obeys the sandwich")
{
    std::mt19937_64 g(4);
    for (Shape shape : {Shape::Cube, Shape::Ball})
        for (int d : {1, 2}) {
            const PointSet X = random_points(g, d, 7);
            const auto D = FrequencyDomain::discrete(shape, d == 1 ? 20 : 5, d);
            const SpectrumReport R = measure_spectrum(D, X);
            const FourierMatrix Phi = build_matrix(D, X);
            Eigen::MatrixXcd E(Phi.entries.rows(), Phi.entries.cols());
            for (std::size_t j = 0; j < Phi.entries.cols(); ++j)
                for (std::size_t i = 0; i < Phi.entries.rows(); ++i) E(i, j) = Phi.entries(i, j);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E);
            const auto& sv = svd.singularValues();
            CHECK(R.sigma_max == doctest::Approx(sv(0)).epsilon(1e-12));
            CHECK(R.sigma_min == doctest::Approx(sv(sv.size() - 1)).epsilon(1e-10));
            CHECK(R.route == SpectrumRoute::Direct);
            CHECK(sigma_sandwich_check(D, X.size(), R).ok);

            // Gram route agrees
            const SpectrumReport Q = sigma_extremes(gram(D, X));
            CHECK(Q.sigma_max == doctest::Approx(R.sigma_max).epsilon(1e-10));
            CHECK(Q.sigma_min == doctest::Approx(R.sigma_min).epsilon(1e-6));
        }
}

TEST_CASE("min-norm interpolant")
{
    const auto D = FrequencyDomain::discrete(Shape::Cube, 3, 2);
    const PointSet one(2, Space::Torus, {{0.1, 0.2}});
    const CVec w1{cplx(1, 0)};
    const TrigPolynomial F = min_norm_interpolant(D, one, w1);
    CHECK(F.l2_norm() == doctest::Approx(1 / std::sqrt(49.0)));
    CHECK(std::abs(F(one[0]) - 1.0) < 1e-13);

    const PointSet tri(2, Space::Torus, {{0.0, 0.0}, {0.01, 0.0}, {0.0, 0.01}});
    const auto D2 = FrequencyDomain::discrete(Shape::Ball, 8, 2);
    const CVec zero(3, 0.0);
    CHECK(min_norm_interpolant(D2, tri, zero).l2_norm() == doctest::Approx(0).epsilon(1e-300));
    const CVec w{cplx(1, 0), cplx(0, -1), cplx(0.5, 0.5)};
    const TrigPolynomial G = min_norm_interpolant(D2, tri, w);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(G(tri[k]) - w[k]) < 1e-9);
    CHECK(G.support_radius(LpNorm::two()) <= 8);

    CHECK_THROWS_AS(min_norm_interpolant(D2, tri, w1), Error);
    CHECK_THROWS_AS(min_norm_interpolant(FrequencyDomain::discrete(Shape::Ball, 8, 2, 2), tri, w), Error);
    const PointSet dup(1, Space::Torus, {{0.0}, {1e-14}});
    try {
        min_norm_interpolant(FrequencyDomain::discrete(Shape::Cube, 2, 1), dup, CVec{1.0, 0.0});
        FAIL("expected rank deficiency");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::rank_deficient);
    }
}

TEST_CASE("matrix CSV")
{
    CMatrix M(2, 2);
    M(0, 0) = cplx(1, -2);
    M(1, 1) = 0.5;
    std::ostringstream os;
    write_matrix_csv(M, os);
    CHECK(os.str() == "1,-2,0,0\n0,0,0.5,0\n");
}
}
