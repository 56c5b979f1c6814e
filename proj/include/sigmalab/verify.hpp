#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigmalab {

/// Outcome of one randomized property suite.
struct SuiteResult {
    std::string name;
    bool passed = false;
    std::size_t checked = 0;   // instances actually tested
    std::size_t failures = 0;
    std::string detail;        // first failure, or a summary line
    double seconds = 0;
};

/// s = 1: sigma_min = sigma_max = sqrt(|Omega|_*) (or sqrt|Omega|) to 1e-12 relative.
SuiteResult verify_singleton(std::size_t count, std::uint64_t seed);

/// Closed-form Gram against Phi^* Phi summed directly, entrywise to 1e-9
/// (d in {2,3}, m <= 12, s <= 8).
SuiteResult verify_gram_oracle(std::size_t count, std::uint64_t seed);

/// Measured sigma_min >= reported lower bound - 1e-9 on `per_theorem` applicable
/// instances for each theorem and operator it covers.
SuiteResult verify_bound_soundness(std::size_t per_theorem, std::uint64_t seed);

/// Random (u, alpha, p, d) satisfying the precondition; all three inequalities recomputed from q.
SuiteResult verify_quantization(std::size_t count, std::uint64_t seed);

/// `count` random neighborhood sets per interpolant construction: residuals < 1e-9,
/// norms within the analytic bound (+1e-6), Fourier support within the bandwidth certificate.
SuiteResult verify_interpolants(std::size_t count, std::uint64_t seed);

/// duality_lower_bound <= sigma_min + 1e-9 for min-norm, super-resolution and hyperplane families.
SuiteResult verify_duality(std::size_t count, std::uint64_t seed);

/// Ball/cube monotonicity, translation and frequency-shift invariance (1e-9),
/// and strictly decreasing eigenvalue error over rho = 1, 2, 4, 8.
SuiteResult verify_structural(std::size_t count, std::uint64_t seed);

struct VerifyCounts {
    std::size_t singleton = 50;
    std::size_t gram = 50;
    std::size_t soundness = 200;
    std::size_t quantization = 10000;
    std::size_t interpolants = 100;
    std::size_t duality = 100;
    std::size_t structural = 50;

    /// Every count multiplied by f (at least 1).
    VerifyCounts scaled(double f) const;
};

std::vector<SuiteResult> verify_all(const VerifyCounts& counts, std::uint64_t seed);

}  // namespace sigmalab
