#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msw/common.hpp"

namespace msw {

// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Decodes any libpng-readable PNG to RGB8 (palette expanded, 16-bit reduced,
// gray promoted, alpha stripped).
Image read_png(const std::string& path);

void write_png(const std::string& path, const Image& image);

}  // namespace msw
