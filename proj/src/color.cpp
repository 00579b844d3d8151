#include "msw/color.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "msw/rng.hpp"

namespace msw {

namespace {

double sq_dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        double dx = a[c] - b[c];
        s += dx * dx;
    }
    return s;
}

std::array<double, 3> pixel_rgb(const Image& img, std::size_t i) {
    return {static_cast<double>(img.pixels[3 * i]), static_cast<double>(img.pixels[3 * i + 1]),
            static_cast<double>(img.pixels[3 * i + 2])};
}

std::size_t count_distinct_colors(const Image& img) {
    std::unordered_set<std::uint32_t> seen;
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        seen.insert(static_cast<std::uint32_t>(img.pixels[3 * i]) << 16 |
                    static_cast<std::uint32_t>(img.pixels[3 * i + 1]) << 8 |
                    img.pixels[3 * i + 2]);
    }
    return seen.size();
}

}  // namespace

PaletteResult extract_palette(const Image& image, std::size_t k, int iters, std::uint64_t seed,
                              std::vector<double>* wcss_history, int threads) {
    if (image.width <= 0 || image.height <= 0 ||
        image.pixels.size() != image.pixel_count() * 3) {
        throw std::invalid_argument("extract_palette: malformed image");
    }
    if (k < 1) throw std::invalid_argument("extract_palette: k must be >= 1");
    if (iters < 1) throw std::invalid_argument("extract_palette: iters must be >= 1");

    const std::size_t n = image.pixel_count();
    PaletteResult out;
    std::size_t distinct = count_distinct_colors(image);
    if (k > distinct) {
        out.warning = "k clamped from " + std::to_string(k) + " to " + std::to_string(distinct) +
                      " distinct colors";
        k = distinct;
    }

    std::vector<std::array<double, 3>> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = pixel_rgb(image, i);

    // k-means++ seeding
    RngStream rng(seed, 0);
    std::vector<std::array<double, 3>> centers;
    centers.reserve(k);
    centers.push_back(points[static_cast<std::size_t>(rng.uniform01() * n) % n]);
    Vec best_d2(n);
    for (std::size_t i = 0; i < n; ++i) best_d2[i] = sq_dist(points[i], centers[0]);
    while (centers.size() < k) {
        double total = 0.0;
        for (double v : best_d2) total += v;
        std::size_t pick = 0;
        if (total > 0.0) {
            double target = rng.uniform01() * total;
            double cum = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += best_d2[i];
                if (cum >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(rng.uniform01() * n) % n;
        }
        centers.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i) {
            best_d2[i] = std::min(best_d2[i], sq_dist(points[i], centers.back()));
        }
    }

    std::vector<std::uint32_t> assign(n, 0);
    Vec d2(n, 0.0);
    auto assign_all = [&]() {
        parallel_for(n, threads, [&](std::size_t i) {
            double best = std::numeric_limits<double>::infinity();
            std::uint32_t arg = 0;
            for (std::size_t c = 0; c < centers.size(); ++c) {
                double dd = sq_dist(points[i], centers[c]);
                if (dd < best) {
                    best = dd;
                    arg = static_cast<std::uint32_t>(c);
                }
            }
            assign[i] = arg;
            d2[i] = best;
        });
        double wcss = 0.0;
        for (double v : d2) wcss += v;
        return wcss;
    };

    double wcss = assign_all();
    if (wcss_history) wcss_history->push_back(wcss);

    for (int it = 0; it < iters; ++it) {
        std::vector<std::array<double, 3>> sums(centers.size(), {0.0, 0.0, 0.0});
        std::vector<std::size_t> sizes(centers.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = sums[assign[i]];
            for (int c = 0; c < 3; ++c) s[c] += points[i][c];
            ++sizes[assign[i]];
        }
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (sizes[c] == 0) {
                // re-seed from the farthest point
                std::size_t far = 0;
                double fd = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (d2[i] > fd) {
                        fd = d2[i];
                        far = i;
                    }
                }
                centers[c] = points[far];
                d2[far] = 0.0;
            } else {
                for (int ch = 0; ch < 3; ++ch) {
                    centers[c][ch] = sums[c][ch] / static_cast<double>(sizes[c]);
                }
            }
        }
        wcss = assign_all();
        if (wcss_history) wcss_history->push_back(wcss);
    }

    out.palette.centers = std::move(centers);
    out.palette.counts.assign(out.palette.size(), 0);
    for (std::size_t i = 0; i < n; ++i) ++out.palette.counts[assign[i]];
    out.indexed = {image.width, image.height, std::move(assign)};
    return out;
}

EmpiricalMeasure palette_measure(const Palette& palette, bool count_weighted) {
    const std::size_t k = palette.size();
    if (k == 0) throw std::invalid_argument("palette_measure: empty palette");
    Vec supports;
    supports.reserve(k * 3);
    for (const auto& c : palette.centers) {
        supports.push_back(c[0]);
        supports.push_back(c[1]);
        supports.push_back(c[2]);
    }
    if (!count_weighted) return EmpiricalMeasure::uniform(k, 3, std::move(supports));
    double total = 0.0;
    for (std::size_t c : palette.counts) total += static_cast<double>(c);
    Vec weights;
    weights.reserve(k);
    for (std::size_t c : palette.counts) weights.push_back(static_cast<double>(c) / total);
    return EmpiricalMeasure(k, 3, std::move(supports), std::move(weights));
}

namespace {

// Mass-proportional replication: expands k centers into exactly k uniform
// points, each cluster getting floor >= 1 replicas by largest remainder. This
// encodes count weighting while keeping the flow's uniform equal-size
// contract.
std::vector<std::size_t> replica_plan(const std::vector<std::size_t>& counts) {
    const std::size_t k = counts.size();
    double total = 0.0;
    for (std::size_t c : counts) total += static_cast<double>(c);
    std::vector<std::size_t> plan(k, 1);
    std::size_t assigned = k;
    std::vector<std::pair<double, std::size_t>> remainders(k);
    for (std::size_t i = 0; i < k; ++i) {
        double exact = static_cast<double>(counts[i]) / total * static_cast<double>(k);
        std::size_t extra = exact > 1.0 ? static_cast<std::size_t>(exact - 1.0) : 0;
        plan[i] += extra;
        assigned += extra;
        remainders[i] = {exact - std::floor(exact), i};
    }
    std::sort(remainders.rbegin(), remainders.rend());
    for (std::size_t r = 0; assigned < k && r < k; ++r, ++assigned) ++plan[remainders[r].second];
    while (assigned > k) {
        for (std::size_t i = 0; i < k && assigned > k; ++i) {
            if (plan[i] > 1) {
                --plan[i];
                --assigned;
            }
        }
    }
    return plan;
}

EmpiricalMeasure replicated_measure(const Palette& palette, const std::vector<std::size_t>& plan) {
    Vec supports;
    for (std::size_t i = 0; i < palette.size(); ++i) {
        for (std::size_t r = 0; r < plan[i]; ++r) {
            supports.push_back(palette.centers[i][0]);
            supports.push_back(palette.centers[i][1]);
            supports.push_back(palette.centers[i][2]);
        }
    }
    std::size_t n = supports.size() / 3;
    return EmpiricalMeasure::uniform(n, 3, std::move(supports));
}

}  // namespace

Image transfer_colors(const Image& source, const Image& target, const ColorTransferConfig& cfg,
                      int threads, FlowTrace* trace_out, Palette* transferred_out,
                      Palette* source_palette_out, Palette* target_palette_out) {
    PaletteResult src = extract_palette(source, cfg.k, cfg.kmeans_iters, cfg.flow.seed, nullptr,
                                        threads);
    PaletteResult tgt = extract_palette(target, cfg.k, cfg.kmeans_iters,
                                        derive_seed(cfg.flow.seed, 0xC01Bull), nullptr, threads);
    if (src.palette.size() != tgt.palette.size()) {
        // the flow needs equal-size clouds; clamp both to the smaller palette
        std::size_t k = std::min(src.palette.size(), tgt.palette.size());
        src = extract_palette(source, k, cfg.kmeans_iters, cfg.flow.seed, nullptr, threads);
        tgt = extract_palette(target, k, cfg.kmeans_iters, derive_seed(cfg.flow.seed, 0xC01Bull),
                              nullptr, threads);
    }

    Palette transferred = src.palette;
    FlowTrace trace{{}, palette_measure(src.palette)};
    if (!cfg.count_weighted) {
        trace = run_flow(palette_measure(src.palette), palette_measure(tgt.palette), cfg.flow,
                         threads);
        for (std::size_t c = 0; c < transferred.size(); ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                double v = std::round(trace.final_measure.coord(c, ch));
                transferred.centers[c][ch] = std::clamp(v, 0.0, 255.0);
            }
        }
    } else {
        // count-weighted extension: flow replicated clouds, then move each
        // center by the mean displacement of its replicas
        auto src_plan = replica_plan(src.palette.counts);
        auto tgt_plan = replica_plan(tgt.palette.counts);
        EmpiricalMeasure mu = replicated_measure(src.palette, src_plan);
        trace = run_flow(mu, replicated_measure(tgt.palette, tgt_plan), cfg.flow, threads);
        std::size_t row = 0;
        for (std::size_t c = 0; c < transferred.size(); ++c) {
            std::array<double, 3> mean{0.0, 0.0, 0.0};
            for (std::size_t r = 0; r < src_plan[c]; ++r, ++row) {
                for (int ch = 0; ch < 3; ++ch) mean[ch] += trace.final_measure.coord(row, ch);
            }
            for (int ch = 0; ch < 3; ++ch) {
                double v = std::round(mean[ch] / static_cast<double>(src_plan[c]));
                transferred.centers[c][ch] = std::clamp(v, 0.0, 255.0);
            }
        }
    }

    Image out;
    out.width = source.width;
    out.height = source.height;
    out.pixels.resize(source.pixels.size());
    for (std::size_t i = 0; i < src.indexed.indices.size(); ++i) {
        const auto& c = transferred.centers[src.indexed.indices[i]];
        for (int ch = 0; ch < 3; ++ch) {
            out.pixels[3 * i + ch] = static_cast<std::uint8_t>(c[ch]);
        }
    }

    if (trace_out) *trace_out = std::move(trace);
    if (transferred_out) *transferred_out = std::move(transferred);
    if (source_palette_out) *source_palette_out = std::move(src.palette);
    if (target_palette_out) *target_palette_out = std::move(tgt.palette);
    return out;
}

}  // namespace msw
