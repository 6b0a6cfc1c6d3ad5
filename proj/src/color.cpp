#include "scseg/color.hpp"

#include <algorithm>
#include <cmath>

namespace scseg {
namespace {

std::uint8_t to_u8(double v) { return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0)); }

}  // namespace

Ycc rgb_to_ycbcr(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double rr = r, gg = g, bb = b;
    return {to_u8(0.299 * rr + 0.587 * gg + 0.114 * bb),
            to_u8(128.0 - 0.168736 * rr - 0.331264 * gg + 0.5 * bb),
            to_u8(128.0 + 0.5 * rr - 0.418688 * gg - 0.081312 * bb)};
}

Rgb ycbcr_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr) {
    const double yy = y, pb = cb - 128.0, pr = cr - 128.0;
    return {to_u8(yy + 1.402 * pr), to_u8(yy - 0.344136 * pb - 0.714136 * pr), to_u8(yy + 1.772 * pb)};
}

YCbCrImage to_ycbcr(const RgbImage& rgb) {
    PixelPlane y(rgb.width, rgb.height), cb(rgb.width, rgb.height), cr(rgb.width, rgb.height);
    for (int py = 0; py < rgb.height; ++py)
        for (int px = 0; px < rgb.width; ++px) {
            const std::size_t i = (static_cast<std::size_t>(py) * rgb.width + px) * 3;
            const Ycc c = rgb_to_ycbcr(rgb.data[i], rgb.data[i + 1], rgb.data[i + 2]);
            y.at(px, py) = c.y;
            cb.at(px, py) = c.cb;
            cr.at(px, py) = c.cr;
        }
    return YCbCrImage(std::move(y), std::move(cb), std::move(cr));
}

RgbImage to_rgb(const YCbCrImage& image) {
    RgbImage out(image.width(), image.height());
    for (int py = 0; py < image.height(); ++py)
        for (int px = 0; px < image.width(); ++px) {
            const Rgb c = ycbcr_to_rgb(image.y.at(px, py), image.cb.at(px, py), image.cr.at(px, py));
            out.set(px, py, c.r, c.g, c.b);
        }
    return out;
}

}  // namespace scseg
