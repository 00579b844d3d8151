#pragma once

#include <span>

#include "msw/measure.hpp"

namespace msw {

// Subgradient of theta -> W_p(theta#mu, theta#nu) for uniform equal-size
// measures. The optimal 1D coupling is the sorted matching; it is held fixed
// while differentiating (envelope theorem), which is exact wherever the
// matching is locally constant. Returns the zero vector when the distance is
// below 1e-12.
Vec grad_direction(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta,
                   double p);

struct SupportGradient {
    double distance = 0.0;  // D = ((1/|S|) sum_theta W_p^p)^(1/p) over the direction set
    Vec grad;               // n x d, row-major: dD/dx_i with matchings held fixed
};

// Gradient of the Monte Carlo estimator D with respect to the supports of mu,
// for a fixed multiset of directions (a chain, a block, or a single argmax).
SupportGradient grad_supports(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              std::span<const Direction> directions, double p);

}  // namespace msw
