#include "msw/sw_family.hpp"

#include <cmath>

#include "msw/ot1d.hpp"
#include "msw/rng.hpp"
#include "msw/sphere.hpp"

namespace msw {

namespace {

void check_pair(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p) {
    require_valid(mu, "mu");
    require_valid(nu, "nu");
    if (mu.dim() != nu.dim()) throw std::invalid_argument("sw: dimension mismatch");
    if (p < 1.0) throw std::invalid_argument("sw: order p must be >= 1");
}

struct Slot {
    std::vector<Direction> directions;
    Vec powers;
};

double reduce_mean(const std::vector<Slot>& slots, const ProjectionObserver& observer) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Slot& s : slots) {
        for (std::size_t k = 0; k < s.powers.size(); ++k) {
            sum += s.powers[k];
            ++count;
            if (observer) observer(s.directions[k], s.powers[k]);
        }
    }
    return sum / static_cast<double>(count);
}

double sw_mean_power(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                     int projections, std::uint64_t seed, int threads,
                     const ProjectionObserver& observer) {
    check_pair(mu, nu, p);
    if (projections < 1) throw std::invalid_argument("sw: projection count must be >= 1");

    std::vector<Slot> slots(projections);
    parallel_for(static_cast<std::size_t>(projections), threads, [&](std::size_t l) {
        RngStream rng(seed, l + 1);
        Direction theta = sample_uniform_sphere(mu.dim(), rng);
        double wpp = wasserstein_1d_pth_power(project(mu, theta), project(nu, theta), p);
        slots[l].directions.push_back(std::move(theta));
        slots[l].powers.push_back(wpp);
    });
    return reduce_mean(slots, observer);
}

double ksw_mean_power(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                      int repetitions, int block_size, std::uint64_t seed, int threads,
                      const ProjectionObserver& observer) {
    check_pair(mu, nu, p);
    if (repetitions < 1) throw std::invalid_argument("ksw: repetition count must be >= 1");
    if (block_size < 1 || static_cast<std::size_t>(block_size) > mu.dim()) {
        throw std::invalid_argument("ksw: need 1 <= K <= d");
    }

    std::vector<Slot> slots(repetitions);
    parallel_for(static_cast<std::size_t>(repetitions), threads, [&](std::size_t l) {
        RngStream rng(seed, l + 1);
        auto block = sample_stiefel_uniform(mu.dim(), static_cast<std::size_t>(block_size), rng);
        for (Direction& theta : block) {
            double wpp = wasserstein_1d_pth_power(project(mu, theta), project(nu, theta), p);
            slots[l].powers.push_back(wpp);
            slots[l].directions.push_back(std::move(theta));
        }
    });
    return reduce_mean(slots, observer);
}

}  // namespace

double sw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p, int projections,
          std::uint64_t seed, int threads, const ProjectionObserver& observer) {
    return std::pow(sw_mean_power(mu, nu, p, projections, seed, threads, observer), 1.0 / p);
}

double sw_pth_power(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                    int projections, std::uint64_t seed, int threads) {
    return sw_mean_power(mu, nu, p, projections, seed, threads, nullptr);
}

double ksw(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p, int repetitions,
           int block_size, std::uint64_t seed, int threads, const ProjectionObserver& observer) {
    return std::pow(ksw_mean_power(mu, nu, p, repetitions, block_size, seed, threads, observer),
                    1.0 / p);
}

double ksw_pth_power(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p,
                     int repetitions, int block_size, std::uint64_t seed, int threads) {
    return ksw_mean_power(mu, nu, p, repetitions, block_size, seed, threads, nullptr);
}

}  // namespace msw
