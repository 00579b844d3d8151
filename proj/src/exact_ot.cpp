#include "msw/exact_ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "msw/ot1d.hpp"

namespace msw {

namespace {

void check_assignment_inputs(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p) {
    require_valid(mu, "mu");
    require_valid(nu, "nu");
    if (p < 1.0) throw std::invalid_argument("exact_wasserstein: order p must be >= 1");
    if (mu.dim() != nu.dim()) {
        throw std::invalid_argument("exact_wasserstein: dimension mismatch");
    }
    if (mu.size() != nu.size()) {
        throw std::invalid_argument("exact_wasserstein: supports sizes must match");
    }
    if (!mu.has_uniform_weights() || !nu.has_uniform_weights()) {
        throw std::invalid_argument("exact_wasserstein: weights must be uniform");
    }
}

double pairwise_cost(const EmpiricalMeasure& mu, std::size_t i, const EmpiricalMeasure& nu,
                     std::size_t j, double p) {
    double s = 0.0;
    for (std::size_t k = 0; k < mu.dim(); ++k) {
        double dx = mu.coord(i, k) - nu.coord(j, k);
        s += dx * dx;
    }
    return pow_abs(std::sqrt(s), p);
}

// Minimum assignment cost via the potentials (Jonker-Volgenant style) method.
double hungarian_min_cost(const std::vector<Vec>& cost) {
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    Vec u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);  // match[j] = row assigned to column j
    std::vector<std::size_t> way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        Vec minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = match[j0], j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += cost[match[j] - 1][j - 1];
    return total;
}

}  // namespace

double exact_wasserstein(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p) {
    check_assignment_inputs(mu, nu, p);
    const std::size_t n = mu.size();
    if (n > 2000) {
        throw std::invalid_argument("exact_wasserstein: supports cap (n <= 2000) exceeded");
    }
    std::vector<Vec> cost(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = pairwise_cost(mu, i, nu, j, p);
    }
    double total = hungarian_min_cost(cost);
    return std::pow(std::max(0.0, total) / static_cast<double>(n), 1.0 / p);
}

double brute_force_wasserstein(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p) {
    check_assignment_inputs(mu, nu, p);
    const std::size_t n = mu.size();
    if (n > 7) throw std::invalid_argument("brute_force_wasserstein: supports cap (n <= 7) exceeded");
    std::vector<Vec> cost(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = pairwise_cost(mu, i, nu, j, p);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::pow(best / static_cast<double>(n), 1.0 / p);
}

}  // namespace msw
