#pragma once

#include <cstdint>
#include <random>

#include "ppt/types.hpp"

namespace ppt {

/// Deterministic 64-bit generator used for every Monte Carlo stream.
using McRng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(McRng& rng);

/// Exact Poisson(lambda) draw by sequential CDF inversion. Intended for
/// lambda up to ~50; e^{-lambda} must not underflow.
std::uint64_t sample_poisson(double lambda, McRng& rng);

struct McEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Number of independent sample streams. Fixed so that results do not
/// depend on how many threads run them.
inline constexpr std::size_t kMcShards = 64;

/// Seed of shard `index` derived from the user seed (SplitMix64 mixing).
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

/// Fraction of sampled tuples with prod k_i >= n. Requires samples >= 1e4.
/// `threads == 0` means: PPT_THREADS if set, else hardware concurrency.
McEstimate mc_tail(const PoissonModel& model, std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                   unsigned threads = 0);

/// Worker cap from the PPT_THREADS environment variable, else hardware
/// concurrency (at least 1).
unsigned default_thread_count();

}  // namespace ppt
