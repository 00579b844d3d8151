#include "msw/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msw {

double pow_abs(double x, double p) {
    if (p == 2.0) return x * x;
    if (p == 1.0) return std::abs(x);
    return std::pow(std::abs(x), p);
}

namespace {

struct Ladder {
    Vec values;  // ascending
    Vec bounds;  // cumulative weights, last forced to 1
};

Ladder sorted_ladder(const ProjectedMeasure& m) {
    const std::size_t n = m.values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return m.values[a] < m.values[b]; });
    Ladder lad;
    lad.values.resize(n);
    lad.bounds.resize(n);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lad.values[i] = m.values[idx[i]];
        cum += m.weights[idx[i]];
        lad.bounds[i] = cum;
    }
    lad.bounds[n - 1] = 1.0;  // keep both ladders in sync at the tail
    return lad;
}

void check_inputs(const ProjectedMeasure& a, const ProjectedMeasure& b, double p) {
    if (p < 1.0) throw std::invalid_argument("wasserstein_1d: order p must be >= 1");
    if (a.values.empty() || b.values.empty()) {
        throw std::invalid_argument("wasserstein_1d: empty measure");
    }
    if (a.values.size() != a.weights.size() || b.values.size() != b.weights.size()) {
        throw std::invalid_argument("wasserstein_1d: values/weights length mismatch");
    }
}

}  // namespace

double wasserstein_1d_pth_power(const ProjectedMeasure& a, const ProjectedMeasure& b, double p) {
    check_inputs(a, b, p);
    Ladder la = sorted_ladder(a);
    Ladder lb = sorted_ladder(b);

    double total = 0.0;
    double prev = 0.0;
    std::size_t i = 0, j = 0;
    const std::size_t na = la.values.size(), nb = lb.values.size();
    while (i < na && j < nb) {
        double ba = la.bounds[i];
        double bb = lb.bounds[j];
        double bound = std::min(ba, bb);
        double seg = bound - prev;
        if (seg > 0.0) total += seg * pow_abs(la.values[i] - lb.values[j], p);
        prev = bound;
        if (ba <= bound) ++i;
        if (bb <= bound) ++j;
    }
    return total;
}

double wasserstein_1d(const ProjectedMeasure& a, const ProjectedMeasure& b, double p) {
    return std::pow(wasserstein_1d_pth_power(a, b, p), 1.0 / p);
}

}  // namespace msw
