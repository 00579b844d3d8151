#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "msw/flow.hpp"
#include "msw/image.hpp"
#include "msw/measure.hpp"

namespace msw {

struct Palette {
    std::vector<std::array<double, 3>> centers;  // RGB, each channel in [0, 255]
    std::vector<std::size_t> counts;             // cluster sizes

    std::size_t size() const { return centers.size(); }
};

struct IndexedImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> indices;  // per pixel, < palette size
};

struct PaletteResult {
    Palette palette;
    IndexedImage indexed;
    std::string warning;  // nonempty when k was clamped to the distinct-color count
};

// Lloyd's k-means on RGB triples with k-means++ seeding; empty clusters are
// re-seeded from the point farthest from its assigned center. wcss_history,
// when given, receives the within-cluster sum of squares after seeding and
// after each Lloyd iteration.
PaletteResult extract_palette(const Image& image, std::size_t k, int iters, std::uint64_t seed,
                              std::vector<double>* wcss_history = nullptr, int threads = 1);

struct ColorTransferConfig {
    std::size_t k = 512;
    int kmeans_iters = 10;
    FlowConfig flow;          // palette flow; defaults overridden by the caller
    bool count_weighted = false;  // extension: weight palette measures by cluster size
};

// Runs the palette flow from the source palette to the target palette, rounds
// the transported centers to {0..255}, and rewrites every pixel as the
// transported center of its own cluster. Optionally reports the trace and the
// rounded transferred palette.
Image transfer_colors(const Image& source, const Image& target, const ColorTransferConfig& cfg,
                      int threads = 1, FlowTrace* trace_out = nullptr,
                      Palette* transferred_out = nullptr, Palette* source_palette_out = nullptr,
                      Palette* target_palette_out = nullptr);

// Uniform empirical measure over palette centers (count-weighted when asked).
EmpiricalMeasure palette_measure(const Palette& palette, bool count_weighted = false);

}  // namespace msw
