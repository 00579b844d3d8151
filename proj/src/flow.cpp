#include "msw/flow.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "msw/exact_ot.hpp"
#include "msw/gradients.hpp"
#include "msw/rng.hpp"

namespace msw {

namespace {

constexpr double kDivergenceBound = 1e6;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

FlowTrace run_flow(const EmpiricalMeasure& source, const EmpiricalMeasure& target,
                   const FlowConfig& cfg, int threads) {
    require_valid(source, "source");
    require_valid(target, "target");
    if (source.dim() != target.dim()) throw std::invalid_argument("run_flow: dimension mismatch");
    if (source.size() != target.size() || !source.has_uniform_weights() ||
        !target.has_uniform_weights()) {
        throw std::invalid_argument("run_flow: needs uniform equal-size measures");
    }
    if (cfg.steps < 0) throw std::invalid_argument("run_flow: steps must be >= 0");
    if (cfg.step_size < 0.0 || !std::isfinite(cfg.step_size)) {
        throw std::invalid_argument("run_flow: step size must be finite and >= 0");
    }
    if (cfg.score_every < 1) throw std::invalid_argument("run_flow: score interval must be >= 1");
    if (cfg.distance.kind == DistanceKind::Exact) {
        throw std::invalid_argument("run_flow: the exact spec has no support gradient");
    }

    const std::size_t n = source.size();
    const std::size_t d = source.dim();
    const double scale = static_cast<double>(n) * cfg.step_size;
    auto start = std::chrono::steady_clock::now();

    Vec supports = source.supports();
    FlowTrace trace{{}, source};

    // Update substreams are even salts, scoring substreams odd; logging never
    // shifts the trajectory's draws.
    auto log_row = [&](int step) {
        EmpiricalMeasure current = EmpiricalMeasure::uniform(n, d, supports);
        Evaluation score = evaluate_distance(cfg.distance, current, target,
                                             derive_seed(cfg.seed, 2 * step + 1), threads);
        double w2 = exact_wasserstein(current, target, 2.0);
        trace.rows.push_back({step, score.value, w2, elapsed_seconds(start)});
    };

    log_row(0);
    for (int step = 1; step <= cfg.steps; ++step) {
        EmpiricalMeasure current = EmpiricalMeasure::uniform(n, d, supports);
        Evaluation eval = evaluate_distance(cfg.distance, current, target,
                                            derive_seed(cfg.seed, 2 * step), threads);
        SupportGradient sg = grad_supports(current, target, eval.directions, cfg.distance.p);
        for (std::size_t i = 0; i < supports.size(); ++i) {
            supports[i] -= scale * sg.grad[i];
            if (!std::isfinite(supports[i]) || std::abs(supports[i]) > kDivergenceBound) {
                throw numerical_error("run_flow: diverged at step " + std::to_string(step));
            }
        }
        if (step % cfg.score_every == 0 || step == cfg.steps) log_row(step);
    }

    trace.final_measure = EmpiricalMeasure::uniform(n, d, std::move(supports));
    return trace;
}

void write_trace_csv(const std::string& path, const FlowTrace& trace) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open file for writing");
    out << "step,loss,w2,seconds\n";
    char buf[96];
    for (const TraceRow& r : trace.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.3f\n", r.step, r.loss, r.w2, r.seconds);
        out << buf;
    }
    if (!out) throw io_error(path + ": write failed");
}

EmpiricalMeasure make_s_shape(std::size_t n, double noise, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("make_s_shape: n must be >= 1");
    RngStream rng(seed, 0);
    Vec supports;
    supports.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        double t = (rng.uniform01() - 0.5) * 3.0 * std::numbers::pi;
        double sgn = t < 0.0 ? -1.0 : 1.0;
        double jx = rng.normal();
        double jy = rng.normal();
        supports.push_back(std::sin(t) + noise * jx);
        supports.push_back(sgn * (std::cos(t) - 1.0) + noise * jy);
    }
    return EmpiricalMeasure::uniform(n, 2, std::move(supports));
}

EmpiricalMeasure make_gaussian_mixture(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("make_gaussian_mixture: n must be >= 1");
    static constexpr double centers[4][2] = {{-1.6, 1.6}, {1.6, 1.6}, {-1.6, -1.6}, {1.6, -1.6}};
    RngStream rng(seed, 0);
    Vec supports;
    supports.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double* c = centers[i % 4];
        supports.push_back(c[0] + 0.35 * rng.normal());
        supports.push_back(c[1] + 0.35 * rng.normal());
    }
    return EmpiricalMeasure::uniform(n, 2, std::move(supports));
}

EmpiricalMeasure make_gaussian_cloud(std::size_t n, std::size_t d, std::uint64_t seed,
                                     const Vec& mean, double stddev) {
    if (n < 1 || d < 1) throw std::invalid_argument("make_gaussian_cloud: need n >= 1, d >= 1");
    if (!mean.empty() && mean.size() != d) {
        throw std::invalid_argument("make_gaussian_cloud: mean dimension mismatch");
    }
    RngStream rng(seed, 0);
    Vec supports;
    supports.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double m = mean.empty() ? 0.0 : mean[j];
            supports.push_back(m + stddev * rng.normal());
        }
    }
    return EmpiricalMeasure(n, d, std::move(supports), Vec(n, 1.0 / static_cast<double>(n)));
}

}  // namespace msw
