#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sigmalab/bounds.hpp"
#include "sigmalab/geometry.hpp"
#include "sigmalab/lattice.hpp"

namespace sigmalab {

enum class ScenarioKind { Line, Triangle, Parabola, Generic, Clumps, Custom };

std::string to_string(ScenarioKind k);
std::optional<ScenarioKind> scenario_from_string(const std::string& name);

/// Coordinates used by generate_scenario (delta is the scale):
///   Line      (i delta, 0, ...), i = 0..lambda-1
///   Triangle  (0,0), (delta,0), (0,delta)
///   Parabola  (a delta, (a delta)^2) with a = i - floor((lambda-1)/2)
///   Generic   delta * u_i, u_i uniform on [-1/m, 1/m]^d, drawn once per (seed, trial)
///   Clumps    `clumps` groups whose centers sit `gap` apart on axis 0, each a Line(lambda) along axis 1
///   Custom    delta * custom points
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::Line;
    int lambda = 2;
    int d = 2;
    double m = 20;
    Shape shape = Shape::Cube;
    Sampling mode = Sampling::Discrete;
    int rho = 1;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    int clumps = 2;
    double gap = 0.25;
    std::vector<Vec> custom;

    FrequencyDomain domain() const;
};

PointSet generate_scenario(const ScenarioSpec& spec, double delta);

/// count points from hi down to lo, geometric, strictly decreasing.
std::vector<double> geometric_grid(double hi, double lo, int count);

struct BoundValue {
    Theorem theorem;
    bool applicable = false;
    double lower = 0;
};

struct SweepRecord {
    double delta = 0;
    double sigma_min = 0;
    double sigma_max = 0;
    bool floor_hit = false;
    std::vector<BoundValue> bounds;
    std::string error;  // non-empty when this point failed
    int lambda = 0;
    int d = 0;
    double m = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
};

/// One record per delta, in grid order. Bounds use best_over_tau with default parameters.
/// Points run on `threads` workers; the output does not depend on the count.
std::vector<SweepRecord> sweep(const ScenarioSpec& spec, const std::vector<double>& deltas,
                               const std::vector<Theorem>& bounds, unsigned threads = 0);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    std::size_t points = 0;
};

/// Least squares of log sigma_min on log delta over records with delta in [lo, hi],
/// skipping floor hits and failed points. Needs at least 4 points.
SlopeFit fit_slope(const std::vector<SweepRecord>& records, double lo, double hi);

inline constexpr double kFitWindowLo = 1e-3;
inline constexpr double kFitWindowHi = 1e-2;

/// delta, sigma_min, floor_hit, then <theorem>_applicable, <theorem>_lower per bound;
/// multi-trial output appends a trial column.
void write_sweep_csv(const std::vector<SweepRecord>& records, const std::vector<Theorem>& bounds, std::ostream& os,
                     bool trial_column = false);

/// d, alpha_critical, alpha_saturation, sqrt_c_saturated, sqrt_c_interior_limit for d = 2..10.
void write_table_prelim_csv(std::ostream& os);

struct ExponentRow {
    int d = 0;
    int lambda = 0;
    std::vector<double> slopes;  // one per trial, NaN when the fit failed
    int mode = 0;
    double max_deviation = 0;    // largest |slope - mode| over trials
    int gamma = 0;
    int r = 0;
};

struct ExponentOptions {
    int d = 2;
    int lambda_max = 10;
    int trials = 5;
    std::uint64_t seed = 1;
    double m = 20;
    Shape shape = Shape::Cube;
    int grid = 24;
    unsigned threads = 0;
};

/// Generic sweeps per (lambda, trial); rounded slopes, mode across trials.
std::vector<ExponentRow> table_exponents(const ExponentOptions& options);
void write_table_exponents_csv(const std::vector<ExponentRow>& rows, std::ostream& os);

/// gnuplot script for a sweep CSV: log-log sigma_min and C delta^k reference lines (C = 1e3).
/// Throws when the CSV header lacks delta or sigma_min.
std::string emit_plotscript(const std::string& csv_path, const std::string& csv_header, const std::vector<int>& slopes);

}  // namespace sigmalab
