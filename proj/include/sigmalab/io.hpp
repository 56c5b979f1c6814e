#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sigmalab/bounds.hpp"
#include "sigmalab/experiments.hpp"
#include "sigmalab/interpolants.hpp"
#include "sigmalab/operators.hpp"

namespace sigmalab {

using Json = nlohmann::ordered_json;

/// Non-finite reals become null.
Json number(double v);

Json to_json(const PointSet& X);
PointSet point_set_from_json(const Json& j);

Json to_json(const FrequencyDomain& D);
Json to_json(const SpectrumReport& S);
Json to_json(const BoundReport& R);
Json to_json(const InterpolantProduct& f);
Json to_json(const SweepRecord& r);

/// Parsed run configuration:
/// {scenario, lambda, m, d, shape, mode, rho, deltas:{min,max,count}, bounds:[...], seed, trials,
///  clumps, gap, points}. Unknown fields are rejected; missing ones take the ScenarioSpec defaults.
struct RunConfig {
    ScenarioSpec scenario;
    std::vector<double> deltas;
    std::vector<Theorem> bounds;
    int trials = 1;
};

/// Throws Error(invalid_argument) on malformed input.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

}  // namespace sigmalab
