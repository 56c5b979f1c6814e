#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigmalab/geometry.hpp"
#include "sigmalab/lattice.hpp"

namespace sigmalab {

enum class Theorem { WellSepCube, WellSepBall, SRCube, SRBall, ClumpCube, ClumpBall, HyperCube, HyperBall };
enum class OperatorKind { Discrete, Continuous };

std::string to_string(Theorem t);
std::optional<Theorem> theorem_from_string(const std::string& name);
std::string to_string(OperatorKind op);

Shape theorem_shape(Theorem t);

/// One line of a hypothesis checklist: `actual relation required`.
struct Hypothesis {
    std::string name;
    std::string relation;  // "<=", ">=", "<", ">", "=="
    double required = 0;
    double actual = 0;
    bool pass = false;
};

struct BoundReport {
    Theorem theorem = Theorem::WellSepCube;
    OperatorKind op = OperatorKind::Discrete;
    bool applicable = false;
    std::vector<Hypothesis> hypotheses;
    double lower = 0;
    std::optional<double> upper;
    std::map<std::string, double> constants;
    std::string note;  // reason when a structural precondition (clumps, decomposition) fails

    const Hypothesis* find(const std::string& name) const;
};

/// Product over 0 < |x_j - x_k|_q <= scale of |x_j - x_k|_q / scale, in X's metric.
double multiscale_product(const PointSet& X, Index k, double scale, LpNorm q);

/// Constants (C, c) of the well-separated estimate used for localization at scale tau:
/// cube C = beta d, c = sqrt(2 - e^{1/(2 beta)}); ball C = alpha,
/// c = sqrt(c(alpha)/|B_1| * |B_{alpha/tau}| / |B_{alpha/tau}|_*).
struct LocalizationConstants {
    double C = 0;
    double c = 0;
};
LocalizationConstants localization_constants(Shape shape, double param, double tau, int d);

BoundReport wellsep_cube(double m, const PointSet& X, double beta, OperatorKind op);
BoundReport wellsep_ball(double m, const PointSet& X, double alpha, OperatorKind op);

BoundReport sr_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op);
BoundReport sr_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op);

BoundReport clump_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op);
BoundReport clump_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op);

/// Decompositions of every tau-neighborhood (Euclidean chart at each node);
/// nullopt with a reason when some node has none within r_max or the search budget.
struct DecompositionSet {
    std::optional<std::vector<LocalHyperplaneDecomposition>> decompositions;
    std::string reason;
};
DecompositionSet hyperplane_decompositions(const PointSet& X, double tau, LpNorm p, Index r_max);

/// Continuous operator only. The decomposition covers each tau-neighborhood,
/// which is what the construction of b_k needs.
BoundReport hyper_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op,
                       Index r_max = kHyperplaneSearchBudget);
BoundReport hyper_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op,
                       Index r_max = kHyperplaneSearchBudget);
BoundReport hyper_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op,
                       const DecompositionSet& decompositions);
BoundReport hyper_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op,
                       const DecompositionSet& decompositions);

/// param is beta for cube theorems and alpha for ball theorems; tau is ignored
/// by the well-separated theorems.
BoundReport evaluate_bound(Theorem t, double m, const PointSet& X, double tau, double param, OperatorKind op);

/// Scan tau over 2 C nu'/m * 2^j (nu' = 1..s) capped at 1/(4d) or 1/(4 sqrt d),
/// plus the cap itself, and keep the applicable report with the largest lower bound.
/// Returns the report at the cap when nothing applies.
BoundReport best_over_tau(Theorem t, double m, const PointSet& X, double param, OperatorKind op);

/// Default parameters used when the caller gives none: beta = 1/log 2, alpha = j_{d/2,1}/pi.
double default_parameter(Theorem t, int d);

}  // namespace sigmalab
