#pragma once

#include <span>

namespace sigmalab {

/// J_nu(x) for nu >= 0, x >= 0.
double bessel_j(double nu, double x);

/// First positive zero j_{nu,1}, 0 <= nu <= 6.
double bessel_first_zero(double nu);

/// Surface area of the unit sphere S^{d-1}.
double sphere_area(int d);

/// Left endpoint j_{d/2-1,1}/pi: below it no minorant exists.
double alpha_critical(int d);
/// Right endpoint j_{d/2,1}/pi.
double alpha_saturation(int d);

/// Constant c(alpha) for minorants of the ball indicator.
double c_alpha(double alpha, int d);
/// Value taken for alpha >= j_{d/2,1}/pi.
double c_alpha_saturated(int d);
/// Limit of the interior formula as alpha increases to j_{d/2,1}/pi.
double c_alpha_interior_limit(int d);

/// Sum_{n=-m}^{m} e^{2 pi i n t}.
double dirichlet(long m, double t);

/// sin(pi t)/(pi t).
double sinc(double t);

/// Integral of e^{2 pi i omega.x} over the ball of radius m in R^d, d = x.size().
double ball_indicator_ft(double m, std::span<const double> x);

}  // namespace sigmalab
