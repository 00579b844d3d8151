#include "msw/sphere.hpp"

#include <cmath>

namespace msw {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr long kRejectionCap = 1000000;

Vec gaussian_vector(std::size_t d, RngStream& rng) {
    Vec g(d);
    for (double& x : g) x = rng.normal();
    return g;
}

}  // namespace

Direction retract_to_sphere(const Vec& v) {
    double nrm = norm(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        throw std::invalid_argument("retract_to_sphere: zero or non-finite vector");
    }
    Direction out{v};
    for (double& x : out.coords) x /= nrm;
    return out;
}

Direction sample_uniform_sphere(std::size_t d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("sample_uniform_sphere: dimension must be >= 1");
    for (;;) {
        Vec g = gaussian_vector(d, rng);
        if (norm(g) > kDegenerateNorm) return retract_to_sphere(g);
    }
}

Direction sample_vmf(const VmfParams& params, RngStream& rng) {
    const std::size_t d = params.location.dim();
    const double kappa = params.concentration;
    if (d < 2) throw std::invalid_argument("sample_vmf: dimension must be >= 2");
    if (kappa < 0.0) throw std::invalid_argument("sample_vmf: concentration must be >= 0");
    if (kappa == 0.0) return sample_uniform_sphere(d, rng);

    const double dm1 = static_cast<double>(d - 1);
    const double root = std::sqrt(4.0 * kappa * kappa + dm1 * dm1);
    const double b = (-2.0 * kappa + root) / dm1;
    const double a = (dm1 + 2.0 * kappa + root) / 4.0;
    const double m = 4.0 * a * b / (1.0 + b) - dm1 * std::log(dm1);

    Direction v = sample_uniform_sphere(d - 1, rng);

    double omega = 0.0;
    bool accepted = false;
    for (long iter = 0; iter < kRejectionCap; ++iter) {
        double psi = rng.beta(0.5 * dm1, 0.5 * dm1);
        double denom = 1.0 - (1.0 - b) * psi;
        omega = (1.0 - (1.0 + b) * psi) / denom;
        double t = 2.0 * a * b / denom;
        double u = 1.0 - rng.uniform01();
        if (dm1 * std::log(t) - t + m >= std::log(u)) {
            accepted = true;
            break;
        }
    }
    if (!accepted) throw numerical_error("sample_vmf: rejection loop exceeded iteration cap");

    Vec h(d);
    h[0] = omega;
    double scale = std::sqrt(std::max(0.0, 1.0 - omega * omega));
    for (std::size_t i = 1; i < d; ++i) h[i] = scale * v.coords[i - 1];

    // Householder u = (e1 - location)/||.|| maps e1 onto the location; when
    // the location is e1 itself the correct limit is the identity map.
    Vec u(d);
    u[0] = 1.0 - params.location[0];
    for (std::size_t i = 1; i < d; ++i) u[i] = -params.location[i];
    double unrm = norm(u);
    if (unrm > kDegenerateNorm) {
        for (double& x : u) x /= unrm;
        double proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += u[i] * h[i];
        for (std::size_t i = 0; i < d; ++i) h[i] -= 2.0 * proj * u[i];
    }
    return retract_to_sphere(h);
}

std::vector<Direction> gram_schmidt(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("gram_schmidt: no input vectors");
    const std::size_t d = vectors.front().size();
    if (vectors.size() > d) {
        throw std::invalid_argument("gram_schmidt: more vectors than dimensions");
    }
    std::vector<Direction> out;
    out.reserve(vectors.size());
    for (const Vec& v : vectors) {
        if (v.size() != d) throw std::invalid_argument("gram_schmidt: ragged input");
        Vec r = v;
        for (const Direction& q : out) {
            double c = dot(q, std::span<const double>(r.data(), r.size()));
            for (std::size_t i = 0; i < d; ++i) r[i] -= c * q.coords[i];
        }
        if (norm(r) < kDegenerateNorm) {
            throw std::invalid_argument("gram_schmidt: (near-)linearly dependent input");
        }
        out.push_back(retract_to_sphere(r));
    }
    return out;
}

std::vector<Direction> sample_stiefel_uniform(std::size_t d, std::size_t K, RngStream& rng) {
    if (K < 1 || K > d) {
        throw std::invalid_argument("sample_stiefel_uniform: need 1 <= K <= d");
    }
    for (;;) {
        std::vector<Vec> g;
        g.reserve(K);
        for (std::size_t k = 0; k < K; ++k) g.push_back(gaussian_vector(d, rng));
        try {
            return gram_schmidt(g);
        } catch (const std::invalid_argument&) {
            // measure-zero collision, redraw
        }
    }
}

std::optional<Direction> project_orthocomplement(const Vec& theta_new,
                                                 const Direction& theta_prev) {
    if (theta_new.size() != theta_prev.dim()) {
        throw std::invalid_argument("project_orthocomplement: dimension mismatch");
    }
    double denom = dot(theta_prev, theta_prev);
    double c = dot(theta_prev, std::span<const double>(theta_new.data(), theta_new.size())) / denom;
    Vec r = theta_new;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * theta_prev.coords[i];
    if (norm(r) < kDegenerateNorm) return std::nullopt;
    return retract_to_sphere(r);
}

}  // namespace msw
