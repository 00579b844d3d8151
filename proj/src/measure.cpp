#include "msw/measure.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace msw {

double dot(const Direction& a, const Direction& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
    return s;
}

double dot(const Direction& a, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * v[i];
    return s;
}

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

EmpiricalMeasure::EmpiricalMeasure(std::size_t n, std::size_t d, Vec supports, Vec weights)
    : n_(n), d_(d), supports_(std::move(supports)), weights_(std::move(weights)) {
    if (supports_.size() != n_ * d_) {
        throw std::invalid_argument("EmpiricalMeasure: supports size does not match n*d");
    }
    if (weights_.size() != n_) {
        throw std::invalid_argument("EmpiricalMeasure: weights size does not match n");
    }
}

EmpiricalMeasure EmpiricalMeasure::uniform(std::size_t n, std::size_t d, Vec supports) {
    if (n == 0) throw std::invalid_argument("EmpiricalMeasure: n must be >= 1");
    return EmpiricalMeasure(n, d, std::move(supports), Vec(n, 1.0 / static_cast<double>(n)));
}

bool EmpiricalMeasure::has_uniform_weights(double tol) const {
    double w = 1.0 / static_cast<double>(n_);
    for (double x : weights_) {
        if (std::abs(x - w) > tol) return false;
    }
    return true;
}

std::optional<std::string> validate(const EmpiricalMeasure& mu) {
    if (mu.size() < 1) return "empty support set (n = 0)";
    if (mu.dim() < 1) return "zero-dimensional supports (d = 0)";
    for (double x : mu.supports()) {
        if (!std::isfinite(x)) return "non-finite coordinate";
    }
    double sum = 0.0;
    for (double w : mu.weights()) {
        if (!std::isfinite(w)) return "non-finite weight";
        if (w < 0.0) return "negative weight";
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "weights sum " << sum;
        return os.str();
    }
    return std::nullopt;
}

void require_valid(const EmpiricalMeasure& mu, const char* arg_name) {
    if (auto violation = validate(mu)) {
        throw std::invalid_argument(std::string(arg_name) + ": " + *violation);
    }
}

ProjectedMeasure project(const EmpiricalMeasure& mu, const Direction& theta) {
    if (theta.dim() != mu.dim()) {
        throw std::invalid_argument("project: direction dimension does not match measure");
    }
    ProjectedMeasure out;
    out.values.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) out.values[i] = dot(theta, mu.support(i));
    out.weights = mu.weights();
    return out;
}

bool byte_order_less(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    int c = std::memcmp(a.supports().data(), b.supports().data(),
                        a.supports().size() * sizeof(double));
    if (c != 0) return c < 0;
    c = std::memcmp(a.weights().data(), b.weights().data(), a.weights().size() * sizeof(double));
    return c < 0;
}

}  // namespace msw
