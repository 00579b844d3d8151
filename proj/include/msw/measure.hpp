#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "msw/common.hpp"

namespace msw {

// Unit vector on S^{d-1}. Producers (samplers, retraction) guarantee the
// unit-norm invariant; consumers may assume it.
struct Direction {
    Vec coords;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
};

double dot(const Direction& a, const Direction& b);
double dot(const Direction& a, std::span<const double> v);
double norm(std::span<const double> v);

// Weighted finite point set in R^d. Supports are row-major, one point per
// row, immutable after construction.
class EmpiricalMeasure {
public:
    EmpiricalMeasure(std::size_t n, std::size_t d, Vec supports, Vec weights);

    static EmpiricalMeasure uniform(std::size_t n, std::size_t d, Vec supports);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }
    const Vec& supports() const { return supports_; }
    const Vec& weights() const { return weights_; }
    std::span<const double> support(std::size_t i) const {
        return {supports_.data() + i * d_, d_};
    }
    double coord(std::size_t i, std::size_t j) const { return supports_[i * d_ + j]; }

    bool has_uniform_weights(double tol = 1e-9) const;

private:
    std::size_t n_;
    std::size_t d_;
    Vec supports_;
    Vec weights_;
};

// One-dimensional push-forward theta#mu: projected values plus the original
// weights.
struct ProjectedMeasure {
    Vec values;
    Vec weights;
};

// Returns the first violated invariant, or nullopt when the measure is valid.
std::optional<std::string> validate(const EmpiricalMeasure& mu);

// Throws std::invalid_argument naming the violation; used by operations whose
// precondition is a valid measure.
void require_valid(const EmpiricalMeasure& mu, const char* arg_name);

ProjectedMeasure project(const EmpiricalMeasure& mu, const Direction& theta);

// Total order on measures via lexicographic comparison of their byte
// serialization (n, d, supports, weights). Used to evaluate symmetric
// quantities in a canonical argument order.
bool byte_order_less(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

}  // namespace msw
