#pragma once

#include <cstdint>
#include <random>

namespace msw {

// Seeded random stream. A (seed, stream_id) pair fully determines the draw
// sequence: the engine is mt19937_64 (bit-exact per the standard) and all
// distribution transforms below are written out by hand instead of using
// std:: distributions, whose output is implementation-defined.
//
// Parallel work derives one stream per unit (chain index, projection index),
// so evaluation order and thread count never change the draws.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit mantissa.
    double uniform01();

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal();

    // Gamma(shape, 1) via Marsaglia-Tsang, with the shape<1 boost.
    double gamma(double shape);

    // Beta(a, b) as the ratio of two gamma draws.
    double beta(double a, double b);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Deterministic seed derivation for nested contexts (e.g. one root per flow
// step, which then fans out into per-chain streams).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t salt);

}  // namespace msw
