#pragma once

#include "msw/measure.hpp"

namespace msw {

// Exact W_p between uniform equal-size measures via minimum-cost assignment
// on the ||x_i - y_j||_2^p cost matrix (Hungarian, O(n^3)). Capped at
// n <= 2000.
double exact_wasserstein(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p);

// Exhaustive minimum over all n! pairings; test oracle, n <= 7.
double brute_force_wasserstein(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p);

}  // namespace msw
