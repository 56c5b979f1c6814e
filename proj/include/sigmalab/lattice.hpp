#pragma once

#include <cstdint>
#include <vector>

#include "sigmalab/geometry.hpp"

namespace sigmalab {

enum class Shape { Ball, Cube };
enum class Sampling { Discrete, Continuous };

inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

struct FrequencyDomain {
    Shape shape = Shape::Cube;
    double m = 1;
    Sampling mode = Sampling::Discrete;
    int rho = 1;  // oversampling, discrete mode only
    int d = 1;

    static FrequencyDomain discrete(Shape shape, double m, int d, int rho = 1);
    static FrequencyDomain continuous(Shape shape, double m, int d);

    /// l^2 for balls, l^inf for cubes.
    LpNorm norm() const { return shape == Shape::Ball ? LpNorm::two() : LpNorm::inf(); }
    FrequencyDomain with_radius(double radius) const;
    bool discrete_mode() const { return mode == Sampling::Discrete; }
};

/// Lattice frequencies omega = index / rho, stored as integer multi-indices in
/// lexicographic order.
struct Lattice {
    int d = 1;
    int rho = 1;
    std::vector<int> index;  // size() * d entries

    std::size_t size() const { return index.size() / static_cast<std::size_t>(d); }
    double omega(std::size_t i, int l) const { return static_cast<double>(index[i * d + l]) / rho; }
};

/// Largest integer K with K <= m * rho, tolerant of rounding in m.
long lattice_radius(double m, int rho);

Lattice enumerate_lattice(const FrequencyDomain& domain, std::uint64_t budget = kEnumerationBudget);
std::uint64_t lattice_count(const FrequencyDomain& domain, std::uint64_t budget = kEnumerationBudget);
double volume(const FrequencyDomain& domain);

/// Diagonal of the normalized Gram: |Omega|_* / rho^d (discrete) or |Omega|.
double gram_diagonal(const FrequencyDomain& domain);

double unit_ball_volume(int d);

}  // namespace sigmalab
