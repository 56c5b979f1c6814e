#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "sigmalab/geometry.hpp"
#include "sigmalab/lattice.hpp"
#include "sigmalab/linalg.hpp"
#include "sigmalab/trigpoly.hpp"

namespace sigmalab {

/// Entry (omega, k) = rho^{-d/2} e^{-2 pi i omega.x_k}; rows in lattice order.
struct FourierMatrix {
    FrequencyDomain domain;
    Lattice rows;
    CMatrix entries;
};

enum class GramProvenance { DiscreteDirect, DiscreteClosedForm, ContinuousClosedForm };

/// Entry (j,k) = sum or integral over Omega of e^{2 pi i omega.(x_j - x_k)}, rho^{-d} normalized.
struct GramMatrix {
    FrequencyDomain domain;
    CMatrix entries;
    GramProvenance provenance;
};

enum class SpectrumRoute { Gram, Direct };

/// Floors below which sigma_min is not certified: the direct route compares
/// sigma_min/sigma_max, the Gram route lambda_min/lambda_max.
inline constexpr double kDirectFloor = 1e-15;
inline constexpr double kGramFloor = 1e-15;

struct SpectrumReport {
    double sigma_min = 0;
    double sigma_max = 0;
    CVec min_vector;
    int iterations = 0;
    bool floor_hit = false;
    bool converged = true;
    double residual = 0;  // off-diagonal norm at exit (Gram route)
    SpectrumRoute route = SpectrumRoute::Gram;
    std::vector<double> singular_values;  // ascending
};

FourierMatrix build_matrix(const FrequencyDomain& domain, const PointSet& X,
                           std::uint64_t budget = kEnumerationBudget);
GramMatrix gram(const FrequencyDomain& domain, const PointSet& X);

SpectrumReport sigma_extremes(const GramMatrix& G);
SpectrumReport sigma_extremes(const FourierMatrix& Phi);

/// Direct route for discrete domains small enough to materialize, Gram route otherwise.
SpectrumReport measure_spectrum(const FrequencyDomain& domain, const PointSet& X);

struct SandwichCheck {
    bool ok = false;
    double lower_margin = 0;  // sigma_max - sqrt(diag)
    double upper_margin = 0;  // sqrt(s * diag) - sigma_max
};
SandwichCheck sigma_sandwich_check(const FrequencyDomain& domain, std::size_t s, const SpectrumReport& report);

/// Coefficients F = Phi (Phi^* Phi)^{-1} w of the least-norm trigonometric
/// polynomial with f(x_k) = w_k and spectrum in Omega cap Z^d.
TrigPolynomial min_norm_interpolant(const FrequencyDomain& domain, const PointSet& X, std::span<const cplx> w);

inline cplx evaluate_polynomial(const TrigPolynomial& F, std::span<const double> x) { return F(x); }

void write_matrix_csv(const CMatrix& M, std::ostream& os);

}  // namespace sigmalab
