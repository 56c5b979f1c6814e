#include "sigmalab/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <array>
#include <cmath>
#include <numbers>

#include "sigmalab/error.hpp"
#include "sigmalab/lattice.hpp"

namespace sigmalab {

using std::numbers::pi;

double bessel_j(double nu, double x)
{
    require(nu >= 0 && std::isfinite(nu), "Bessel order must be nonnegative");
    require(x >= 0 && std::isfinite(x), "Bessel argument must be nonnegative and finite");
    if (x == 0) return nu == 0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_j(nu, x);
}

double bessel_first_zero(double nu)
{
    require(nu >= 0 && nu <= 6, "first-zero search supports 0 <= nu <= 6");
    constexpr double step = 0.05;
    double a = nu + 1.0;
    double fa = bessel_j(nu, a);
    double b = a;
    double fb = fa;
    bool bracketed = false;
    for (double x = a + step; x <= nu + 10.0 + 1e-12; x += step) {
        double fx = bessel_j(nu, x);
        if ((fa > 0) != (fx > 0) || fx == 0) {
            b = x;
            fb = fx;
            bracketed = true;
            break;
        }
        a = x;
        fa = fx;
    }
    require(bracketed, "no sign change of J_nu on [nu+1, nu+10]", ErrorKind::numerical);
    if (fb == 0) return b;
    // bisection to the last representable midpoint
    for (int it = 0; it < 200 && b - a > 0; ++it) {
        double c = 0.5 * (a + b);
        if (c <= a || c >= b) break;
        double fc = bessel_j(nu, c);
        if (fc == 0) return c;
        if ((fc > 0) == (fa > 0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
        }
    }
    return std::abs(fa) <= std::abs(bessel_j(nu, b)) ? a : b;
}

double sphere_area(int d)
{
    require(d >= 1, "dimension must be positive");
    return 2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0);
}

namespace {

// j_{nu,1} for nu = 0, 1/2, ..., 6, computed once
double half_order_zero(int twice_nu)
{
    static const std::array<double, 13> table = [] {
        std::array<double, 13> t{};
        for (int i = 0; i < 13; ++i) t[i] = bessel_first_zero(i / 2.0);
        return t;
    }();
    return table.at(static_cast<std::size_t>(twice_nu));
}

}  // namespace

double alpha_critical(int d)
{
    require(d >= 2 && d <= 12, "c(alpha) supports 2 <= d <= 12");
    return half_order_zero(d - 2) / pi;
}

double alpha_saturation(int d)
{
    require(d >= 2 && d <= 12, "c(alpha) supports 2 <= d <= 12");
    return half_order_zero(d) / pi;
}

double c_alpha_saturated(int d)
{
    return std::pow(2.0 / alpha_saturation(d), d) / sphere_area(d);
}

double c_alpha_interior_limit(int d)
{
    return d * c_alpha_saturated(d);
}

double c_alpha(double alpha, int d)
{
    require(d >= 2, "c(alpha) needs d >= 2");
    const double lo = alpha_critical(d);
    const double hi = alpha_saturation(d);
    if (!(alpha > lo))
        throw Error(ErrorKind::no_minorant, "alpha <= j_{d/2-1,1}/pi: no nontrivial minorant exists");
    if (alpha >= hi - 1e-9) return c_alpha_saturated(d);
    const double nu = d / 2.0;
    const double num = -pi * alpha * bessel_j(nu - 1.0, pi * alpha);
    const double ratio = num / (bessel_j(nu, pi * alpha) + num / d);
    return std::pow(2.0 / alpha, d) * ratio / sphere_area(d);
}

double dirichlet(long m, double t)
{
    require(m >= 0, "Dirichlet kernel degree must be nonnegative");
    double s = std::sin(pi * t);
    if (std::abs(s) < 1e-12) {
        // t is an integer up to rounding; D_m(t) = 2m+1 there
        return static_cast<double>(2 * m + 1);
    }
    return std::sin((2.0 * m + 1.0) * pi * t) / s;
}

double sinc(double t)
{
    if (t == 0) return 1.0;
    double x = pi * t;
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

double ball_indicator_ft(double m, std::span<const double> x)
{
    require(m > 0, "ball radius must be positive");
    const int d = static_cast<int>(x.size());
    require(d >= 1, "dimension must be positive");
    double r2 = 0;
    for (double v : x) r2 += v * v;
    const double r = std::sqrt(r2);
    const double vol = unit_ball_volume(d) * std::pow(m, d);
    const double z = 2 * pi * m * r;
    if (z < 1e-6) {
        // J_nu(z) (2/z)^nu Gamma(nu+1) = 1 - z^2/(4(nu+1)) + ...
        const double nu = d / 2.0;
        return vol * (1.0 - z * z / (4.0 * (nu + 1.0)));
    }
    return std::pow(m / r, d / 2.0) * bessel_j(d / 2.0, z);
}

}  // namespace sigmalab
