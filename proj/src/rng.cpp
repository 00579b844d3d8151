#include "msw/rng.hpp"

#include <cmath>
#include <numbers>

namespace msw {

namespace {

// splitmix64 finalizer; good dispersion even for tiny inputs.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(mix64(mix64(seed) + stream_id)) {}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

double RngStream::gamma(double shape) {
    if (shape < 1.0) {
        double u = 1.0 - uniform01();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = 1.0 - uniform01();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

double RngStream::beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    double s = x + y;
    if (s <= 0.0) return 0.5;  // both underflowed to zero
    return x / s;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t salt) {
    return mix64(mix64(root) ^ mix64(salt + 0x5851F42D4C957F2Dull));
}

}  // namespace msw
