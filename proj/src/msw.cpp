#include "msw/msw.hpp"

#include <cmath>

#include "msw/gradients.hpp"
#include "msw/ot1d.hpp"
#include "msw/rng.hpp"
#include "msw/sphere.hpp"

namespace msw {

bool step_kept(int t, const MswConfig& cfg) { return t > cfg.burn && t % cfg.thin == 0; }

std::optional<std::string> validate(const MswConfig& cfg) {
    if (cfg.chains < 1) return "chain count L must be >= 1";
    if (cfg.steps < 1) return "time steps T must be >= 1";
    if (cfg.p < 1.0) return "order p must be >= 1";
    if (cfg.burn < 0) return "burned steps M must be >= 0";
    if (cfg.burn >= cfg.steps) return "burned steps M must be < T";
    if (cfg.thin < 1) return "thinning interval N must be >= 1";
    bool any_kept = false;
    for (int t = 1; t <= cfg.steps; ++t) {
        if (step_kept(t, cfg)) {
            any_kept = true;
            break;
        }
    }
    if (!any_kept) return "no chain step survives burning and thinning";
    if (cfg.transition.uses_vmf() && cfg.transition.kappa < 0.0) {
        return "concentration kappa must be >= 0";
    }
    if (cfg.transition.needs_measures() &&
        (!(cfg.transition.eta > 0.0) || !std::isfinite(cfg.transition.eta))) {
        return "ascent step eta must be positive and finite";
    }
    return std::nullopt;
}

namespace {

void require_valid_config(const MswConfig& cfg) {
    if (auto violation = validate(cfg)) {
        throw std::invalid_argument("msw config: " + *violation);
    }
}

// Gradient-step transition location f(theta | eta, mu, nu); measures are
// passed in canonical byte order so both argument orders produce the same
// floating-point result.
Direction input_aware_location(const Direction& theta, double eta, double p,
                               const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    const EmpiricalMeasure* a = &mu;
    const EmpiricalMeasure* b = &nu;
    if (byte_order_less(*b, *a)) std::swap(a, b);
    Vec g = grad_direction(*a, *b, theta, p);
    Vec moved = theta.coords;
    for (std::size_t k = 0; k < moved.size(); ++k) moved[k] += eta * g[k];
    return retract_to_sphere(moved);
}

}  // namespace

DirectionChain sample_chain(const MswConfig& cfg, std::size_t d, int chain_id,
                            const EmpiricalMeasure* mu, const EmpiricalMeasure* nu) {
    require_valid_config(cfg);
    if (cfg.transition.needs_measures() && (mu == nullptr || nu == nullptr)) {
        throw std::invalid_argument("msw config: input-aware transition requires both measures");
    }
    bool needs_sphere_kernel =
        cfg.transition.uses_vmf() || cfg.transition.kind == TransitionKind::OrthogonalBased;
    if (cfg.steps > 1 && needs_sphere_kernel && d < 2) {
        throw std::invalid_argument("msw config: vMF/orthogonal transitions need d >= 2");
    }

    RngStream rng(cfg.seed, static_cast<std::uint64_t>(chain_id));
    DirectionChain chain;
    chain.directions.reserve(cfg.steps);
    chain.kept.reserve(cfg.steps);

    chain.directions.push_back(sample_uniform_sphere(d, rng));
    for (int t = 2; t <= cfg.steps; ++t) {
        const Direction& prev = chain.directions.back();
        switch (cfg.transition.kind) {
            case TransitionKind::RandomWalk:
                chain.directions.push_back(sample_vmf({prev, cfg.transition.kappa}, rng));
                break;
            case TransitionKind::OrthogonalBased: {
                for (;;) {
                    Direction fresh = sample_uniform_sphere(d, rng);
                    if (auto next = project_orthocomplement(fresh.coords, prev)) {
                        chain.directions.push_back(std::move(*next));
                        break;
                    }
                }
                break;
            }
            case TransitionKind::InputAwareDeterministic:
                chain.directions.push_back(
                    input_aware_location(prev, cfg.transition.eta, cfg.p, *mu, *nu));
                break;
            case TransitionKind::InputAwareVmf: {
                Direction loc = input_aware_location(prev, cfg.transition.eta, cfg.p, *mu, *nu);
                chain.directions.push_back(sample_vmf({loc, cfg.transition.kappa}, rng));
                break;
            }
        }
    }
    for (int t = 1; t <= cfg.steps; ++t) chain.kept.push_back(step_kept(t, cfg) ? 1 : 0);
    return chain;
}

namespace {

double estimate_impl(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const MswConfig& cfg,
                     int threads, const ProjectionObserver& observer) {
    require_valid(mu, "mu");
    require_valid(nu, "nu");
    if (mu.dim() != nu.dim()) throw std::invalid_argument("msw: dimension mismatch");
    require_valid_config(cfg);

    struct Slot {
        std::vector<Direction> directions;
        Vec powers;
    };
    std::vector<Slot> slots(cfg.chains);
    parallel_for(static_cast<std::size_t>(cfg.chains), threads, [&](std::size_t l) {
        DirectionChain chain = sample_chain(cfg, mu.dim(), static_cast<int>(l) + 1, &mu, &nu);
        for (std::size_t t = 0; t < chain.directions.size(); ++t) {
            if (!chain.kept[t]) continue;
            const Direction& theta = chain.directions[t];
            double wpp = wasserstein_1d_pth_power(project(mu, theta), project(nu, theta), cfg.p);
            slots[l].powers.push_back(wpp);
            slots[l].directions.push_back(theta);
        }
    });

    double sum = 0.0;
    std::size_t count = 0;
    for (const Slot& s : slots) {
        for (std::size_t k = 0; k < s.powers.size(); ++k) {
            sum += s.powers[k];
            ++count;
            if (observer) observer(s.directions[k], s.powers[k]);
        }
    }
    return std::pow(sum / static_cast<double>(count), 1.0 / cfg.p);
}

}  // namespace

double msw_estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const MswConfig& cfg,
                    int threads, const ProjectionObserver& observer) {
    if (cfg.burn != 0 || cfg.thin != 1) {
        throw std::invalid_argument("msw_estimate: requires M = 0, N = 1 (see burn_thin variant)");
    }
    return estimate_impl(mu, nu, cfg, threads, observer);
}

double msw_estimate_burn_thin(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              const MswConfig& cfg, int threads,
                              const ProjectionObserver& observer) {
    return estimate_impl(mu, nu, cfg, threads, observer);
}

std::vector<VarianceRow> estimator_variance_report(const EmpiricalMeasure& mu,
                                                   const EmpiricalMeasure& nu, MswConfig cfg,
                                                   const std::vector<int>& chain_grid, int seeds,
                                                   int threads) {
    if (seeds < 2) throw std::invalid_argument("estimator_variance_report: need seeds >= 2");
    std::vector<VarianceRow> rows;
    rows.reserve(chain_grid.size());
    const std::uint64_t base = cfg.seed;
    for (int L : chain_grid) {
        cfg.chains = L;
        Vec values(static_cast<std::size_t>(seeds));
        for (int s = 0; s < seeds; ++s) {
            cfg.seed = derive_seed(base, static_cast<std::uint64_t>(s));
            values[s] = msw_estimate(mu, nu, cfg, threads);
        }
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(seeds);
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(seeds - 1);
        rows.push_back({L, mean, std::sqrt(var)});
    }
    return rows;
}

}  // namespace msw
