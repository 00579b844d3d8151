#pragma once

#include "msw/measure.hpp"

namespace msw {

// |x|^p with exact special cases for the common orders.
double pow_abs(double x, double p);

// Closed-form 1D Wasserstein distance, quantile form: the two sorted weight
// ladders are merged and |quantile difference|^p is integrated over shared
// segments. Handles non-uniform weights and unequal sizes; for equal-size
// uniform inputs this reduces to the sorted matching.
double wasserstein_1d(const ProjectedMeasure& a, const ProjectedMeasure& b, double p);

// Same integral without the final p-th root. MSW and friends average this.
double wasserstein_1d_pth_power(const ProjectedMeasure& a, const ProjectedMeasure& b, double p);

}  // namespace msw
