#pragma once

#include <cstdint>
#include <vector>

#include "msw/measure.hpp"

namespace msw {

// Projected sub-gradient ascent parameters: T iterations at fixed step size,
// plain ascent without momentum.
struct AscentConfig {
    int steps = 10;          // T
    double step_size = 0.1;  // eta
    std::uint64_t seed = 0;
};

struct MaxSwResult {
    double distance = 0.0;
    Direction direction;  // theta_hat_T
};

// Max-SW: ascend theta on the sphere against the projected W_p, starting from
// a uniform draw, T-1 retraction steps; returns the projected distance at the
// final direction.
MaxSwResult max_sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                   const AscentConfig& cfg);

struct MaxKswResult {
    double distance = 0.0;
    std::vector<Direction> directions;  // orthonormal block
};

// Max-K-SW: per-direction gradient step then Gram-Schmidt re-orthonormalization
// each iteration; a degenerate block entry is redrawn uniformly. Returns
// ((1/K) sum_k W_p^p)^(1/p) at the final block.
MaxKswResult max_ksw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                     int block_size, const AscentConfig& cfg);

}  // namespace msw
