#pragma once

#include <cstdint>
#include <functional>

#include "msw/measure.hpp"

namespace msw {

// Test hook: called once per projection, in projection order, with the
// direction and the projected W_p^p it contributed.
using ProjectionObserver = std::function<void(const Direction&, double)>;

// Monte Carlo sliced Wasserstein: ((1/L) sum_l W_p^p(theta_l # mu,
// theta_l # nu))^(1/p), theta_l i.i.d. uniform on the sphere. Projection l
// draws from stream (seed, l+1); evaluation is slot-per-projection with an
// ordered reduction, so the result is independent of the thread count.
double sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p, int projections,
          std::uint64_t seed, int threads = 1, const ProjectionObserver& observer = nullptr);

double sw_pth_power(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                    int projections, std::uint64_t seed, int threads = 1);

// K-SW: L blocks of K orthonormal directions, each block uniform on the
// Stiefel manifold; the p-th power average runs over all LK projections.
// With K = 1 this reproduces sw draw-for-draw.
double ksw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p, int repetitions,
           int block_size, std::uint64_t seed, int threads = 1,
           const ProjectionObserver& observer = nullptr);

double ksw_pth_power(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                     int repetitions, int block_size, std::uint64_t seed, int threads = 1);

}  // namespace msw
