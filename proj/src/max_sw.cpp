#include "msw/max_sw.hpp"

#include <cmath>

#include "msw/gradients.hpp"
#include "msw/ot1d.hpp"
#include "msw/rng.hpp"
#include "msw/sphere.hpp"

namespace msw {

namespace {

void check_ascent_inputs(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                         const AscentConfig& cfg) {
    require_valid(mu, "mu");
    require_valid(nu, "nu");
    if (mu.dim() != nu.dim()) throw std::invalid_argument("max_sw: dimension mismatch");
    if (p < 1.0) throw std::invalid_argument("max_sw: order p must be >= 1");
    if (cfg.steps < 1) throw std::invalid_argument("max_sw: need at least one iteration");
    if (!(cfg.step_size > 0.0) || !std::isfinite(cfg.step_size)) {
        throw std::invalid_argument("max_sw: step size must be positive and finite");
    }
}

void check_finite(const Vec& g) {
    for (double x : g) {
        if (!std::isfinite(x)) throw numerical_error("max_sw: non-finite gradient");
    }
}

}  // namespace

MaxSwResult max_sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                   const AscentConfig& cfg) {
    check_ascent_inputs(mu, nu, p, cfg);
    RngStream rng(cfg.seed, 0);
    Direction theta = sample_uniform_sphere(mu.dim(), rng);
    for (int t = 1; t < cfg.steps; ++t) {
        Vec g = grad_direction(mu, nu, theta, p);
        check_finite(g);
        Vec moved = theta.coords;
        for (std::size_t k = 0; k < moved.size(); ++k) moved[k] += cfg.step_size * g[k];
        theta = retract_to_sphere(moved);
    }
    double dist = wasserstein_1d(project(mu, theta), project(nu, theta), p);
    return {dist, std::move(theta)};
}

MaxKswResult max_ksw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                     int block_size, const AscentConfig& cfg) {
    check_ascent_inputs(mu, nu, p, cfg);
    if (block_size < 1 || static_cast<std::size_t>(block_size) > mu.dim()) {
        throw std::invalid_argument("max_ksw: need 1 <= K <= d");
    }
    const std::size_t K = static_cast<std::size_t>(block_size);
    RngStream rng(cfg.seed, 0);
    std::vector<Direction> block = sample_stiefel_uniform(mu.dim(), K, rng);

    for (int t = 1; t < cfg.steps; ++t) {
        std::vector<Vec> moved(K);
        for (std::size_t k = 0; k < K; ++k) {
            Vec g = grad_direction(mu, nu, block[k], p);
            check_finite(g);
            moved[k] = block[k].coords;
            for (std::size_t i = 0; i < moved[k].size(); ++i) moved[k][i] += cfg.step_size * g[i];
        }
        // Re-orthonormalize; a collapsed entry is replaced by a fresh uniform
        // draw and the pass restarts.
        for (;;) {
            try {
                block = gram_schmidt(moved);
                break;
            } catch (const std::invalid_argument&) {
                std::size_t bad = K - 1;
                for (std::size_t k = 0; k < K; ++k) {
                    std::vector<Vec> probe(moved.begin(), moved.begin() + k + 1);
                    try {
                        gram_schmidt(probe);
                    } catch (const std::invalid_argument&) {
                        bad = k;
                        break;
                    }
                }
                moved[bad] = sample_uniform_sphere(mu.dim(), rng).coords;
            }
        }
    }

    double sum = 0.0;
    for (const Direction& theta : block) {
        sum += wasserstein_1d_pth_power(project(mu, theta), project(nu, theta), p);
    }
    double dist = std::pow(sum / static_cast<double>(K), 1.0 / p);
    return {dist, std::move(block)};
}

}  // namespace msw
