#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sigmalab/geometry.hpp"
#include "sigmalab/lattice.hpp"
#include "sigmalab/linalg.hpp"

namespace sigmalab {

/// f(x) = sum_omega F(omega) e^{2 pi i omega.x} with omega in Z^d (d <= 4,
/// |omega_l| < 2^15). Terms are kept sorted in lexicographic frequency order.
class TrigPolynomial {
public:
    static constexpr int kMaxDim = 4;

    explicit TrigPolynomial(int d);
    static TrigPolynomial constant(int d, cplx c = 1.0);
    /// |Omega|_*^{-1} sum over Omega cap Z^d, the kernel taking the value 1 at 0.
    static TrigPolynomial dirichlet_kernel(Shape shape, double radius, int d);

    int dim() const { return d_; }
    std::size_t size() const { return terms_.size(); }
    std::vector<int> frequency(std::size_t i) const;
    cplx coefficient(std::size_t i) const { return terms_[i].second; }

    void add(std::span<const int> freq, cplx c);

    cplx operator()(std::span<const double> x) const;
    TrigPolynomial operator*(const TrigPolynomial& g) const;
    /// x -> f(x - t)
    TrigPolynomial translated(std::span<const double> t) const;
    TrigPolynomial scaled(cplx c) const;

    /// L^2(T^d) norm, by Parseval.
    double l2_norm() const;
    /// Largest |omega|_p over coefficients with modulus above threshold (0 for the zero polynomial).
    double support_radius(LpNorm p, double threshold = 1e-12) const;

    /// Values at the grid x_i = -1/2 + i/G in every coordinate, row-major.
    std::vector<cplx> grid_values(int G) const;
    double sup_norm(int G) const;
    /// Grid sup norm, doubling G until the relative change is below 1e-3 or G exceeds max_G.
    double sup_norm_refined(int G0, int max_G) const;

private:
    using Key = std::uint64_t;
    Key pack(std::span<const int> f) const;
    void unpack(Key k, int* f) const;

    int d_;
    std::vector<std::pair<Key, cplx>> terms_;
};

/// sum_j a_j e^{2 pi i xi_j.x} with real frequencies.
struct PlaneWaveSum {
    int d = 1;
    std::vector<double> freqs;  // size() * d
    CVec coeffs;

    std::size_t size() const { return coeffs.size(); }
    std::span<const double> frequency(std::size_t j) const { return {freqs.data() + j * d, static_cast<std::size_t>(d)}; }
    void add(std::span<const double> xi, cplx a);
    cplx operator()(std::span<const double> x) const;
};

PlaneWaveSum to_plane_waves(const TrigPolynomial& f);
PlaneWaveSum multiply(const PlaneWaveSum& f, const TrigPolynomial& g);

/// Normalized low-pass kernel: inverse Fourier transform of |Omega|^{-1} 1_Omega
/// for a ball or cube Omega of the given radius; equal to 1 at the origin.
struct LowPassKernel {
    Shape shape = Shape::Ball;
    double radius = 1;
    int d = 1;

    double volume() const;
    double operator()(std::span<const double> x) const;
    /// |(Omega + a) cap (Omega + b)| for |a - b| given componentwise.
    double overlap(std::span<const double> shift) const;
};

/// x -> K(x - center) * waves(x), an element of the Paley-Wiener space.
struct BandlimitedFunction {
    LowPassKernel kernel;
    Vec center;
    PlaneWaveSum waves;

    cplx operator()(std::span<const double> x) const;
    /// Exact L^2(R^d) norm: cell-by-cell integration of the piecewise constant
    /// spectrum for cube kernels, pairwise overlaps of shifted balls otherwise.
    double l2_norm() const;
    /// l^p radius of a region containing the Fourier support.
    double support_radius(LpNorm p) const;
};

}  // namespace sigmalab
