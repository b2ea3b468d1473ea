#include "ppt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ppt {

namespace {

constexpr std::uint64_t kMinSamples = 10'000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t run_shard(const PoissonModel& model, std::uint64_t n, std::uint64_t count, std::uint64_t seed) {
    McRng rng(seed);
    const std::size_t m = model.size();
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint64_t k = sample_poisson(model[i], rng);
            if (k == 0) {
                product = 0;
                break;
            }
            product = std::min(product * k, n);
        }
        if (product >= n) {
            ++hits;
        }
    }
    return hits;
}

}  // namespace

double uniform01(McRng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t sample_poisson(double lambda, McRng& rng) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("sample_poisson: lambda must be > 0");
    }
    const double u = uniform01(rng);
    double p = std::exp(-lambda);
    double cdf = p;
    std::uint64_t k = 0;
    // Past lambda + 40 sqrt(lambda) + 40 the remaining mass is far below the
    // 2^-53 resolution of u; the cap stops rounding from looping forever.
    const auto cap = static_cast<std::uint64_t>(lambda + 40.0 * std::sqrt(lambda) + 40.0);
    while (u >= cdf && k < cap) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("PPT_THREADS"); env != nullptr && *env != '\0') {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

McEstimate mc_tail(const PoissonModel& model, std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                   unsigned threads) {
    if (n < 1) {
        throw std::invalid_argument("mc_tail: n must be >= 1");
    }
    if (samples < kMinSamples) {
        throw std::invalid_argument("mc_tail: need at least 10^4 samples");
    }
    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = std::min<unsigned>(threads, kMcShards);

    std::vector<std::uint64_t> hits(kMcShards, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t shard = next++; shard < kMcShards; shard = next++) {
            const std::uint64_t count = samples / kMcShards + (shard < samples % kMcShards ? 1 : 0);
            hits[shard] = run_shard(model, n, count, shard_seed(seed, shard));
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    std::uint64_t total = 0;
    for (std::uint64_t h : hits) {
        total += h;
    }
    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.p_hat = static_cast<double>(total) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
    return est;
}

}  // namespace ppt
