#include "msw/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "msw/ot1d.hpp"

namespace msw {

namespace {

constexpr double kZeroDistance = 1e-12;

void check_gradient_inputs(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    if (mu.dim() != nu.dim()) {
        throw std::invalid_argument("gradients: dimension mismatch");
    }
    if (mu.size() != nu.size()) {
        throw std::invalid_argument("gradients: supports sizes must match (uniform matching)");
    }
    if (!mu.has_uniform_weights() || !nu.has_uniform_weights()) {
        throw std::invalid_argument("gradients: weights must be uniform");
    }
}

std::vector<std::size_t> argsort(const Vec& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return idx;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

Vec project_values(const EmpiricalMeasure& m, const Direction& theta) {
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(theta, m.support(i));
    return out;
}

}  // namespace

Vec grad_direction(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta,
                   double p) {
    check_gradient_inputs(mu, nu);
    if (theta.dim() != mu.dim()) {
        throw std::invalid_argument("grad_direction: direction dimension mismatch");
    }
    if (p < 1.0) throw std::invalid_argument("grad_direction: order p must be >= 1");

    const std::size_t n = mu.size();
    const std::size_t d = mu.dim();
    Vec px = project_values(mu, theta);
    Vec py = project_values(nu, theta);
    auto ix = argsort(px);
    auto iy = argsort(py);

    double wpp = 0.0;
    for (std::size_t r = 0; r < n; ++r) wpp += pow_abs(px[ix[r]] - py[iy[r]], p);
    wpp /= static_cast<double>(n);
    double w = std::pow(wpp, 1.0 / p);

    Vec grad(d, 0.0);
    if (w < kZeroDistance) return grad;

    // dW/dtheta = W^{1-p} * (1/n) sum_i |s_i|^{p-1} sign(s_i) delta_i,
    // s_i = theta . delta_i, delta_i the sorted-match displacement.
    double outer = std::pow(w, 1.0 - p) / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t a = ix[r], b = iy[r];
        double s = px[a] - py[b];
        double coef = (p == 2.0) ? s : std::pow(std::abs(s), p - 1.0) * sign(s);
        auto xa = mu.support(a);
        auto yb = nu.support(b);
        for (std::size_t k = 0; k < d; ++k) grad[k] += coef * (xa[k] - yb[k]);
    }
    for (double& g : grad) g *= outer;
    return grad;
}

SupportGradient grad_supports(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              std::span<const Direction> directions, double p) {
    check_gradient_inputs(mu, nu);
    if (directions.empty()) {
        throw std::invalid_argument("grad_supports: direction set must be nonempty");
    }
    if (p < 1.0) throw std::invalid_argument("grad_supports: order p must be >= 1");

    const std::size_t n = mu.size();
    const std::size_t d = mu.dim();
    const double count = static_cast<double>(directions.size());

    // Per-direction accumulation of |s_i|^{p-1} sign(s_i) theta into row i of
    // the pre-factor matrix; matchings are frozen per direction.
    Vec acc(n * d, 0.0);
    double wpp_sum = 0.0;
    for (const Direction& theta : directions) {
        if (theta.dim() != d) throw std::invalid_argument("grad_supports: direction dim mismatch");
        Vec px = project_values(mu, theta);
        Vec py = project_values(nu, theta);
        auto ix = argsort(px);
        auto iy = argsort(py);
        for (std::size_t r = 0; r < n; ++r) {
            std::size_t a = ix[r], b = iy[r];
            double s = px[a] - py[b];
            wpp_sum += pow_abs(s, p);
            double coef = (p == 2.0) ? s : std::pow(std::abs(s), p - 1.0) * sign(s);
            double* row = acc.data() + a * d;
            for (std::size_t k = 0; k < d; ++k) row[k] += coef * theta[k];
        }
    }

    SupportGradient out;
    double mean_wpp = wpp_sum / (count * static_cast<double>(n));
    out.distance = std::pow(mean_wpp, 1.0 / p);
    out.grad.assign(n * d, 0.0);
    if (out.distance < kZeroDistance) return out;

    double outer = std::pow(out.distance, 1.0 - p) / (count * static_cast<double>(n));
    for (std::size_t i = 0; i < n * d; ++i) out.grad[i] = outer * acc[i];
    return out;
}

}  // namespace msw
