#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sigmalab/error.hpp"
#include "sigmalab/specfun.hpp"

using namespace sigmalab;

namespace {

const double pi = std::numbers::pi;

// Power series in long double; for x <= 12 the largest term stays below ~5e3,
// so the series itself is good to ~1e-16.
double series_j(double nu, double x)
{
    const long double h = static_cast<long double>(x) / 2;
    long double term = std::pow(h, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1);
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -h * h / (static_cast<long double>(k) * (nu + k));
        sum += term;
        if (std::abs(term) < 1e-24L) break;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_SUITE("specfun")
{
TEST_CASE("bessel_j against the long double series")
{
    CHECK(bessel_j(0, 0) == 1);
    CHECK(bessel_j(0.5, 1) == doctest::Approx(std::sqrt(2 / pi) * std::sin(1.0)).epsilon(1e-14));
    CHECK(bessel_j(0.5, 1) == doctest::Approx(0.6713967071418031).epsilon(1e-14));
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> X(0, 12), N(0, 6);
    for (int i = 0; i < 300; ++i) {
        const double nu = std::round(2 * N(g)) / 2, x = X(g);
        CHECK(std::abs(bessel_j(nu, x) - series_j(nu, x)) < 1e-13);
    }
}

TEST_CASE("Bessel recurrence")
{
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> X(0.1, 60), N(1, 6);
    for (int i = 0; i < 200; ++i) {
        const double nu = N(g), x = X(g);
        const double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
        const double rhs = 2 * nu / x * bessel_j(nu, x);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("first zeros")
{
    CHECK(bessel_first_zero(0.5) == doctest::Approx(pi).epsilon(1e-14));
    for (double nu = 0; nu <= 6; nu += 0.5) {
        const double j = bessel_first_zero(nu);
        CHECK(std::abs(bessel_j(nu, j)) < 1e-11);
        // no earlier sign change
        for (double x = 1e-3; x < j - 1e-6; x += 0.01) CHECK(bessel_j(nu, x) > 0);
        if (nu > 0) CHECK(j > bessel_first_zero(nu - 0.5));
    }
    CHECK_THROWS_AS(bessel_first_zero(7), Error);
}

TEST_CASE("Table 1 zero rows")
{
    // Printed to 4 decimals: j_{d/2-1,1}/pi and j_{d/2,1}/pi for d = 2..10.
    const double row1[] = {0.7655, 1.0000, 1.2197, 1.4303, 1.6347, 1.8346, 2.0309, 2.2243, 2.4154};
    const double row2[] = {1.2197, 1.4303, 1.6347, 1.8346, 2.0309, 2.2243, 2.4154, 2.6046, 2.7920};
    for (int d = 2; d <= 10; ++d) {
        CHECK(std::abs(alpha_critical(d) - row1[d - 2]) <= 1e-4);
        CHECK(std::abs(alpha_saturation(d) - row2[d - 2]) <= 1e-4);
    }
}

TEST_CASE("sphere area")
{
    CHECK(sphere_area(2) == doctest::Approx(2 * pi));
    CHECK(sphere_area(3) == doctest::Approx(4 * pi));
    CHECK(sphere_area(4) == doctest::Approx(2 * pi * pi));
}

TEST_CASE("c_alpha")
{
    const double j11 = bessel_first_zero(1);
    CHECK(c_alpha(j11 / pi, 2) == doctest::Approx(std::pow(2 * pi / j11, 2) / (2 * pi)).epsilon(1e-12));
    // Golden values from a 40-digit arbitrary-precision evaluation.
    CHECK(c_alpha(2, 2) == doctest::Approx(0.4279524500).epsilon(1e-9));
    CHECK(c_alpha(1.5, 2) == doctest::Approx(0.4279524500).epsilon(1e-9));
    CHECK(c_alpha(1, 2) == doctest::Approx(0.7979936006).epsilon(1e-9));
    CHECK(c_alpha(1.2, 3) == doctest::Approx(0.5865832909).epsilon(1e-9));

    CHECK(c_alpha(alpha_critical(2) + 1e-9, 2) < 1e-6);
    CHECK_THROWS_AS(c_alpha(alpha_critical(2), 2), Error);
    try {
        c_alpha(0.5, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_minorant);
    }
    // positive and continuous on the open interval
    for (int d = 2; d <= 6; ++d) {
        const double lo = alpha_critical(d), hi = alpha_saturation(d);
        double prev = c_alpha(lo + 1e-6, d);
        for (int i = 1; i < 400; ++i) {
            const double a = lo + (hi - lo) * i / 400.0;
            const double c = c_alpha(a, d);
            CHECK(c > 0);
            CHECK(std::abs(c - prev) < 0.05 * std::max(1.0, c));
            prev = c;
        }
        CHECK(c_alpha(hi - 1e-7, d) == doctest::Approx(c_alpha_interior_limit(d)).epsilon(1e-4));
    }
}

TEST_CASE("dirichlet and sinc")
{
    CHECK(dirichlet(3, 0) == 7);
    CHECK(std::abs(dirichlet(1, 1.0 / 3)) < 1e-14);
    double direct = 0;
    for (int n = -2; n <= 2; ++n) direct += std::cos(2 * pi * n * 0.1);
    CHECK(dirichlet(2, 0.1) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(dirichlet(2, 0.1) == doctest::Approx(3.2360679775).epsilon(1e-10));
    CHECK(dirichlet(4, 2.0) == 9);

    // L^2(T) norm^2 = 2m+1 by trapezoid quadrature
    for (long m : {0L, 3L, 10L}) {
        const int n = 4096;
        double s = 0;
        for (int i = 0; i < n; ++i) s += std::pow(dirichlet(m, -0.5 + (i + 0.5) / n), 2);
        CHECK(std::abs(s / n - (2 * m + 1)) < 1e-6 * (2 * m + 1));
    }

    CHECK(sinc(0) == 1);
    CHECK(sinc(0.25) == doctest::Approx(2 * std::sqrt(2.0) / pi).epsilon(1e-15));
    CHECK(std::abs(sinc(1)) < 1e-16);
}

TEST_CASE("ball indicator transform")
{
    CHECK(ball_indicator_ft(1, std::vector<double>{0, 0}) == doctest::Approx(pi));
    CHECK(ball_indicator_ft(2, std::vector<double>{0, 0, 0}) == doctest::Approx(32 * pi / 3));

    // d = 2, m = 1, |x| = 0.5: polar quadrature of cos(2 pi rho r cos theta) over the disk.
    auto disk = [](double m, double r) {
        auto inner = [r](double rho) {
            const int n = 512;
            double s = 0;
            for (int i = 0; i < n; ++i) s += std::cos(2 * pi * rho * r * std::cos(2 * pi * i / n));
            return rho * s * 2 * pi / n;
        };
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(inner, 0.0, m, 15, 1e-14);
    };
    CHECK(std::abs(ball_indicator_ft(1, std::vector<double>{0.5, 0}) - disk(1, 0.5)) < 1e-8);
    CHECK(std::abs(ball_indicator_ft(3, std::vector<double>{0.1, -0.2}) - disk(3, std::hypot(0.1, 0.2))) < 1e-8);

    // d = 3 closed form
    const double r = 0.3, m = 2;
    const double k = 2 * pi * m * r;
    const double closed = (std::sin(k) - k * std::cos(k)) / (2 * pi * pi * r * r * r);
    CHECK(ball_indicator_ft(m, std::vector<double>{0, r, 0}) == doctest::Approx(closed).epsilon(1e-12));

    // radial symmetry
    CHECK(ball_indicator_ft(2, std::vector<double>{0.3, 0.4}) ==
          doctest::Approx(ball_indicator_ft(2, std::vector<double>{0.5, 0})).epsilon(1e-14));
}
}
