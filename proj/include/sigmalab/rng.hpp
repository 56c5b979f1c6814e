#pragma once

#include <cstdint>
#include <random>

namespace sigmalab {

/// Name recorded in output metadata.
inline constexpr const char* kRngAlgorithm = "mt19937_64 seeded by splitmix64(seed, trial)";

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream per (seed, trial); the draw order of other trials cannot affect it.
inline std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial)
{
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

/// Uniform double in [0,1) from the top 53 bits.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

}  // namespace sigmalab
