#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace paoi_jam {

/// Seeded random stream. Variates are built from raw 64-bit draws so that a
/// given seed produces the same sequence regardless of the standard library.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Independent sub-stream keyed by `(seed, stream_id)`.
    static RngStream derive(std::uint64_t seed, std::uint64_t stream_id) {
        return RngStream(splitmix64(seed ^ splitmix64(stream_id + 0x9E3779B97F4A7C15ULL)));
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    /// Poisson variate by sequential inversion; intended for small means (< ~30).
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) {
            return 0;
        }
        const double u = uniform();
        double pmf = std::exp(-mean);
        double cdf = pmf;
        std::uint64_t k = 0;
        while (u >= cdf && pmf > 0.0) {
            ++k;
            pmf *= mean / static_cast<double>(k);
            cdf += pmf;
        }
        return k;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace paoi_jam
