#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace uavisac {

using Rng = std::mt19937_64;

// Fixed bit-to-double mappings instead of std::*_distribution so that a
// seed pins the exact draw sequence regardless of standard library.

/// Uniform double in [0, 1) with 53-bit resolution.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_range(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n), n >= 1. Multiply-shift on the top 53 bits;
/// bias is < 2^-40 for any n used here.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

/// Standard circular complex Gaussian with E|n|^2 = 1 (Box-Muller).
inline std::complex<double> complex_normal(Rng& rng) {
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-std::log(u1));  // E[r^2] = 1 overall
    const double angle = 2.0 * M_PI * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent sub-stream for (seed, index); used so that trial/cell counts
/// and thread schedules never change what any one stream produces.
inline Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream_index) {
    const std::uint64_t mixed = splitmix64(splitmix64(seed) ^ splitmix64(stream_index + 1));
    return Rng(mixed);
}

}  // namespace uavisac
