#pragma once

// Seed derivation and canonical uniform draws. Every stochastic component
// takes an explicit 64-bit seed; streams for sub-tasks (per-run, per-round,
// graph generation) are derived with splitmix64 so that results are
// reproducible bit-for-bit and independent of scheduling.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace pplay {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream k of a master seed. Used for per-seed runs and named sub-streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform
// that provides the standard mt19937_64 sequence.
inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; used for coefficients that must stay positive.
inline double u01_open_low(std::mt19937_64& rng) {
    return 1.0 - u01(rng);
}

inline double uniform_symmetric(std::mt19937_64& rng, double half_width) {
    return (2.0 * u01(rng) - 1.0) * half_width;
}

// Marsaglia polar method; avoids the spare-caching state of
// std::normal_distribution so the draw count per call is explicit.
inline double standard_normal(std::mt19937_64& rng) {
    for (;;) {
        const double u = 2.0 * u01(rng) - 1.0;
        const double v = 2.0 * u01(rng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

// Point uniformly distributed on the sphere of the given radius.
inline std::vector<double> random_sphere_point(std::mt19937_64& rng, int dim, double radius) {
    if (dim < 1) throw std::invalid_argument("random_sphere_point: dim must be >= 1");
    std::vector<double> p(static_cast<std::size_t>(dim));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto& v : p) {
            v = standard_normal(rng);
            norm_sq += v * v;
        }
    } while (norm_sq == 0.0);
    const double scale = radius / std::sqrt(norm_sq);
    for (auto& v : p) v *= scale;
    return p;
}

}  // namespace pplay
