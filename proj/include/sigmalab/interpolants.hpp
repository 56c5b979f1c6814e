#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sigmalab/geometry.hpp"
#include "sigmalab/lattice.hpp"
#include "sigmalab/linalg.hpp"
#include "sigmalab/operators.hpp"
#include "sigmalab/trigpoly.hpp"

namespace sigmalab {

/// Unit l^p vector v with v.u = |u|_{p'}; v_k = |u_k|^{p'-1} sign(u_k) / |u|_{p'}^{p'-1}.
Vec dual_vector(std::span<const double> u, LpNorm p);

/// Integer direction q = trunc(v / (2 alpha)) and the three inequalities it must satisfy.
struct QuantizedDirection {
    std::vector<int> q;
    double q_norm = 0;   // |q|_p
    double q_dot_u = 0;  // q.u
    double u_norm = 0;   // |u|_{p'}
    double gap = 0;      // |1 - e^{2 pi i q.u}|
    bool norm_ok = false;   // |q|_p <= 1/(2 alpha)
    bool dot_ok = false;    // |u|_{p'}/(4 alpha) <= |q.u| <= 1/2
    bool gap_ok = false;    // gap >= sqrt(2)/alpha |u|_{p'}
    bool ok() const { return norm_ok && dot_ok && gap_ok; }
};

/// Requires 0 < |u|_{p'} <= alpha <= 1/(4 d^{1/p}). Throws a numerical error if
/// a certificate fails, which would mean the construction is wrong.
QuantizedDirection quantize_direction(std::span<const double> u, double alpha, LpNorm p);

/// x -> (e^{2 pi i xi.x} - e^{2 pi i xi.u}) / (1 - e^{2 pi i xi.u}), in chart coordinates.
struct PlaneWaveFactor {
    Vec frequency;
    Vec root;
    cplx denominator;

    PlaneWaveFactor(Vec frequency, Vec root);
    cplx operator()(std::span<const double> y) const;
    bool integer_frequency() const;
};

enum class KernelKind { None, Dirichlet, LowPass };

/// Product of plane-wave factors times an optional kernel, all centered at
/// `center`: f(x) = K(x - c) prod_k phi_k(x - c).
struct InterpolantProduct {
    int d = 2;
    Vec center;
    std::vector<PlaneWaveFactor> factors;
    KernelKind kernel = KernelKind::None;
    Shape kernel_shape = Shape::Cube;
    double kernel_radius = 0;
    std::shared_ptr<const TrigPolynomial> dirichlet;  // set for Dirichlet kernels
    double certificate_p = 2;           // exponent of the norm the certificate is stated in
    double bandwidth_certificate = 0;   // kernel radius + sum of factor frequency norms
    double norm_bound = 0;              // analytic bound: sup norm without kernel, L^2 norm with one

    cplx operator()(std::span<const double> x) const;
    bool integer_frequencies() const;
    /// Needs integer frequencies and no low-pass kernel.
    TrigPolynomial to_polynomial() const;
    /// Needs a low-pass kernel.
    BandlimitedFunction to_bandlimited() const;
    /// Parseval norm on the torus for polynomials, exact L^2(R^d) norm otherwise.
    double l2_norm() const;
};

/// Trigonometric polynomial with f(0) = 1 vanishing on U \ {0}; U is given in
/// chart coordinates and must contain the origin. Near points (|u|_{p'} <= r/(2n))
/// are quantized at alpha = r/(2n), far points at alpha = |u|_{p'}.
/// norm_bound = sqrt(2^{|U|-1}) prod_{near} r/(2n|u|_{p'}).
InterpolantProduct neighbor_interpolant_discrete(const PointSet& U, double n, Index r, LpNorm p);

/// Bandlimited f with f(0) = 1 vanishing on every plane of the decomposition
/// (planes in chart coordinates). U (chart coordinates, containing 0) must be covered by the planes. Frequencies n theta_k/(R+1), kernel radius
/// n/(R+1), with R = max(r, R_global). p must be 2 (ball kernel) or inf (cube kernel).
/// Without capping, max eta_k <= (R+1)/(4n) is required. With capping, planes
/// farther than that use frequency theta_k/(4 eta_k) instead, which keeps each
/// factor below sqrt(2) in modulus.
struct ContinuousOptions {
    Index r_global = 0;
    bool cap_frequencies = false;
};
InterpolantProduct neighbor_interpolant_continuous(const PointSet& U, const LocalHyperplaneDecomposition& decomposition,
                                                   double n, LpNorm p, ContinuousOptions options = {});

/// Smallest integer vector parallel to the plane normal with |q|_2 <= max_norm,
/// or an empty vector when there is none.
std::vector<int> integer_normal(const Hyperplane& plane, double max_norm);

/// Polynomial version with integer normals q_k (one per plane, parallel to it),
/// Dirichlet kernel of radius n/(r+1).
/// norm_bound = sqrt(2^r/|Omega_{n/(r+1)}|_*) prod_k 1/(4|q_k|_2 eta_k).
InterpolantProduct neighbor_interpolant_integer_hyperplanes(const PointSet& U,
                                                            const LocalHyperplaneDecomposition& decomposition,
                                                            std::span<const std::vector<int>> normals, double n,
                                                            LpNorm p);

/// g_k for every node: product over the parts of a separated partition of the
/// far set of min-norm interpolants on Omega_{C/tau}. Grid sup norms above
/// c^{-nu} are flagged, not rejected.
struct Localization {
    double C = 0;
    double c = 0;
    Index nu = 0;
    std::vector<TrigPolynomial> g;
    std::vector<double> sup_norm;
    std::vector<bool> flagged;
    std::vector<Index> parts;   // number of factors in g_k
};
Localization localization_polynomials(const PointSet& X, double tau, double m, Shape shape, double param);

/// (1 - ||E||_F) / (sqrt(s) max_k ||f_k||) where E_jk = f_k(x_j) - delta_jk.
/// Rejects families whose residuals exceed 1e-9 or whose spectrum leaves the target.
double duality_lower_bound(std::span<const TrigPolynomial> family, const PointSet& X,
                           const FrequencyDomain& target);
double duality_lower_bound(std::span<const BandlimitedFunction> family, const PointSet& X,
                           const FrequencyDomain& target);

/// f_k = min-norm interpolant of e_k over the discrete target domain.
std::vector<TrigPolynomial> min_norm_family(const FrequencyDomain& target, const PointSet& X);

/// f_k = h(. - x_k) b_k g_k from the super-resolution construction on the torus
/// (target is the discrete ball or cube of radius m).
std::vector<TrigPolynomial> sr_family(double m, const PointSet& X, double tau, Shape shape, double param);

/// f_k = b_k g_k with b_k from the hyperplane construction (continuous target).
std::vector<BandlimitedFunction> hyper_family(double m, const PointSet& X, double tau, Shape shape, double param,
                                              Index r_max = kHyperplaneSearchBudget);

}  // namespace sigmalab
