#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msw/distance_spec.hpp"
#include "msw/measure.hpp"

namespace msw {

struct FlowConfig {
    int steps = 300;
    double step_size = 1e-3;  // Euler step, distinct from any ascent step inside the spec
    DistanceSpec distance;
    int score_every = 10;  // exact-W2 logging interval
    std::uint64_t seed = 0;
};

struct TraceRow {
    int step = 0;
    double loss = 0.0;     // estimator value between the current cloud and the target
    double w2 = 0.0;       // exact Wasserstein-2 to the target
    double seconds = 0.0;  // cumulative wall-clock
};

struct FlowTrace {
    std::vector<TraceRow> rows;
    EmpiricalMeasure final_measure;
};

// Euler scheme X <- X - n * step_size * grad_X D(P_X, P_Y). Directions are
// redrawn every step from a per-step substream; scoring evaluations use a
// disjoint substream so logging does not perturb the trajectory. Row 0 always
// records the initial state; afterwards every score_every-th step and the
// final step are recorded.
FlowTrace run_flow(const EmpiricalMeasure& source, const EmpiricalMeasure& target,
                   const FlowConfig& cfg, int threads = 1);

void write_trace_csv(const std::string& path, const FlowTrace& trace);

// n points on the 2D S-curve (sin t, sign(t)(cos t - 1)), t uniform on
// [-3pi/2, 3pi/2], plus noise * N(0, I) jitter.
EmpiricalMeasure make_s_shape(std::size_t n, double noise, std::uint64_t seed);

// Seeded 2D Gaussian mixture over four off-center blobs; stands in for the
// scattered start distribution of the flow experiments.
EmpiricalMeasure make_gaussian_mixture(std::size_t n, std::uint64_t seed);

// n points from N(mean, std^2 I) in R^d.
EmpiricalMeasure make_gaussian_cloud(std::size_t n, std::size_t d, std::uint64_t seed,
                                     const Vec& mean = {}, double stddev = 1.0);

}  // namespace msw
