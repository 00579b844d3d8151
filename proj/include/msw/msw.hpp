#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msw/measure.hpp"
#include "msw/sw_family.hpp"

namespace msw {

enum class TransitionKind {
    RandomWalk,                // vMF centered at the previous direction
    OrthogonalBased,           // uniform on the subsphere orthogonal to it
    InputAwareDeterministic,   // projected sub-gradient step on the projected W_p
    InputAwareVmf,             // vMF centered at that gradient step
};

struct Transition {
    TransitionKind kind = TransitionKind::OrthogonalBased;
    double kappa = 0.0;  // concentration, vMF kinds
    double eta = 0.0;    // ascent step, input-aware kinds

    static Transition random_walk(double kappa) {
        return {TransitionKind::RandomWalk, kappa, 0.0};
    }
    static Transition orthogonal() { return {TransitionKind::OrthogonalBased, 0.0, 0.0}; }
    static Transition input_aware(double eta) {
        return {TransitionKind::InputAwareDeterministic, 0.0, eta};
    }
    static Transition input_aware_vmf(double eta, double kappa) {
        return {TransitionKind::InputAwareVmf, kappa, eta};
    }

    bool needs_measures() const {
        return kind == TransitionKind::InputAwareDeterministic ||
               kind == TransitionKind::InputAwareVmf;
    }
    bool uses_vmf() const {
        return kind == TransitionKind::RandomWalk || kind == TransitionKind::InputAwareVmf;
    }
};

// Full projecting-distribution specification for one MSW evaluation.
struct MswConfig {
    int chains = 1;      // L
    int steps = 1;       // T
    double p = 2.0;
    Transition transition;
    int burn = 0;        // M, discard t <= M
    int thin = 1;        // N, keep t % N == 0
    std::uint64_t seed = 0;
};

// Chain steps are 1-based; step t is kept iff t > M and t % N == 0, so
// (M=0, N=1) keeps everything.
bool step_kept(int t, const MswConfig& cfg);

// nullopt when valid, otherwise the first violation.
std::optional<std::string> validate(const MswConfig& cfg);

// One sampled trajectory theta_1..theta_T with its kept mask.
struct DirectionChain {
    std::vector<Direction> directions;
    std::vector<char> kept;
};

// Samples chain `chain_id` from stream (cfg.seed, chain_id). The measures are
// consulted only by input-aware transitions (invalid-config when absent); the
// sub-gradient there is evaluated with the measures in byte order, which makes
// the chain independent of the argument order.
DirectionChain sample_chain(const MswConfig& cfg, std::size_t d, int chain_id,
                            const EmpiricalMeasure* mu = nullptr,
                            const EmpiricalMeasure* nu = nullptr);

// Monte Carlo MSW: ((1/(LT)) sum_{l,t} W_p^p)^(1/p) over L chains of length T.
// Requires M = 0, N = 1; chains use streams 1..L, so with T = 1 this matches
// sw draw-for-draw.
double msw_estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const MswConfig& cfg,
                    int threads = 1, const ProjectionObserver& observer = nullptr);

// Burned-thinned variant: same chains under the same seed, averaging W_p^p
// only over kept steps and normalizing by the actual kept count.
double msw_estimate_burn_thin(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              const MswConfig& cfg, int threads = 1,
                              const ProjectionObserver& observer = nullptr);

struct VarianceRow {
    int chains = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

// Re-evaluates msw_estimate across `seeds` root seeds for each chain count in
// the grid; reports the empirical mean and sample standard deviation.
std::vector<VarianceRow> estimator_variance_report(const EmpiricalMeasure& mu,
                                                   const EmpiricalMeasure& nu, MswConfig cfg,
                                                   const std::vector<int>& chain_grid, int seeds,
                                                   int threads = 1);

}  // namespace msw
