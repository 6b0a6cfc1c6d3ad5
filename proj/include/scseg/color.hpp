#pragma once

#include <cstdint>

#include "scseg/core.hpp"

namespace scseg {

struct Ycc {
    std::uint8_t y = 0;
    std::uint8_t cb = 128;
    std::uint8_t cr = 128;
    bool operator==(const Ycc&) const = default;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Rgb&) const = default;
};

/// BT.601 full range, rounded half-up and clamped.
Ycc rgb_to_ycbcr(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Inverse BT.601 full range, rounded half-up and clamped.
Rgb ycbcr_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr);

YCbCrImage to_ycbcr(const RgbImage& rgb);
RgbImage to_rgb(const YCbCrImage& image);

}  // namespace scseg
