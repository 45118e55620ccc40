#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace interdyn::core {

struct ImageRgb8 {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;  // interleaved RGB, row-major
};

struct ImageIndexed8 {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> indices;                  // row-major palette indices
    std::vector<std::array<uint8_t, 3>> palette;   // index -> RGB
};

// 8-bit RGB PNG. Throws std::runtime_error on I/O or format problems.
void write_png_rgb8(const std::string& path, const ImageRgb8& img);
ImageRgb8 read_png_rgb8(const std::string& path);

// 8-bit palette PNG; palette index carries the object id.
void write_png_indexed8(const std::string& path, const ImageIndexed8& img);
ImageIndexed8 read_png_indexed8(const std::string& path);

}  // namespace interdyn::core
