#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigmalab {

using Vec = std::vector<double>;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

enum class Space { Torus, Euclidean };

/// Exponent p in [1, inf] of an l^p norm.
class LpNorm {
public:
    explicit LpNorm(double p);
    static LpNorm one() { return LpNorm(1.0); }
    static LpNorm two() { return LpNorm(2.0); }
    static LpNorm inf() { return LpNorm(std::numeric_limits<double>::infinity()); }

    double p() const { return p_; }
    bool is_inf() const { return p_ == std::numeric_limits<double>::infinity(); }
    LpNorm dual() const;
    double operator()(std::span<const double> x) const;
    /// d^{1/p}, the factor relating |.|_p to |.|_inf on R^d.
    double dim_factor(int d) const;

    friend bool operator==(LpNorm a, LpNorm b) { return a.p_ == b.p_; }

private:
    double p_;
};

/// Nodes in [-1/2,1/2)^d, pairwise distinct, stored contiguously.
class PointSet {
public:
    PointSet(int d, Space space, const std::vector<Vec>& points);

    int dim() const { return d_; }
    Index size() const { return coords_.size() / static_cast<Index>(d_); }
    Space space() const { return space_; }
    std::span<const double> operator[](Index k) const
    {
        return {coords_.data() + k * static_cast<Index>(d_), static_cast<Index>(d_)};
    }
    std::vector<Vec> points() const;

    PointSet with_space(Space s) const;
    PointSet subset(std::span<const Index> indices) const;

private:
    PointSet() = default;
    int d_ = 0;
    Space space_ = Space::Torus;
    std::vector<double> coords_;
};

/// Representative of t modulo 1 closest to zero.
double wrap(double t);

/// y - x, wrapped per coordinate in torus mode.
Vec displacement(std::span<const double> x, std::span<const double> y, Space space);

double lp_distance(std::span<const double> x, std::span<const double> y, LpNorm p, Space space);

double min_separation(const PointSet& X, LpNorm p);
IndexSet neighborhood(const PointSet& X, Index k, double tau, LpNorm p);
Index local_sparsity(const PointSet& X, double tau, LpNorm p);
/// Sparsity of the sub-configuration given by `subset`; 0 when it is empty.
Index local_sparsity(const PointSet& X, std::span<const Index> subset, double tau, LpNorm p);

std::vector<IndexSet> separated_partition(const PointSet& X, double tau, LpNorm p);
std::vector<IndexSet> separated_partition(const PointSet& X, std::span<const Index> subset, double tau,
                                          LpNorm p);

struct ClumpStructure {
    std::vector<IndexSet> clumps;
    double tau = 0;
    Index lambda = 0;
};

struct ClumpDetection {
    std::optional<ClumpStructure> structure;
    std::string reason;   // empty on success
    IndexSet violating;   // offending component
    bool ok() const { return structure.has_value(); }
};

ClumpDetection detect_clumps(const PointSet& X, double tau, LpNorm p);

struct Hyperplane {
    Vec normal;     // unit Euclidean norm
    double offset;  // plane = {x : normal . x = offset}

    Hyperplane(Vec normal, double offset);
};

double point_hyperplane_distance(std::span<const double> x, const Hyperplane& H);

/// Planes are expressed in the chart centered at the reference node, so the
/// reference sits at the origin and every offset is positive.
struct LocalHyperplaneDecomposition {
    struct Plane {
        Hyperplane plane;
        IndexSet members;
    };
    Index reference_index = 0;
    std::vector<Plane> planes;
    double eta = std::numeric_limits<double>::infinity();

    Index r() const { return planes.size(); }
};

inline constexpr Index kHyperplaneSearchBudget = 12;

LocalHyperplaneDecomposition local_hyperplane_decomposition(const PointSet& X, Index k, double tau, LpNorm p,
                                                            Index r_max,
                                                            Index budget = kHyperplaneSearchBudget);

/// Affine dimension of a finite set and the distance from the origin to its affine span.
struct AffineSpan {
    int dimension = -1;
    double origin_distance = 0;
    Vec foot;  // closest point of the span to the origin
};
AffineSpan affine_span(std::span<const Vec> pts);

struct GenericExponents {
    int gamma;
    int r;
};
GenericExponents generic_exponents(int lambda, int d);

PointSet dilate(const PointSet& X, double delta);

}  // namespace sigmalab
