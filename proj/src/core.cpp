#include "scseg/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scseg {

PixelPlane::PixelPlane(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    if (width < 0 || height < 0) throw std::invalid_argument("PixelPlane: negative dimensions");
    samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

PixelPlane::PixelPlane(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 0 || height < 0) throw std::invalid_argument("PixelPlane: negative dimensions");
    if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("PixelPlane: sample count does not match width*height");
}

YCbCrImage::YCbCrImage(PixelPlane y_plane, PixelPlane cb_plane, PixelPlane cr_plane)
    : y(std::move(y_plane)), cb(std::move(cb_plane)), cr(std::move(cr_plane)) {
    if (cb.width() != y.width() || cb.height() != y.height() || cr.width() != y.width() ||
        cr.height() != y.height())
        throw std::invalid_argument("YCbCrImage: planes differ in size");
}

YCbCrImage YCbCrImage::from_luma(PixelPlane luma) {
    const int w = luma.width();
    const int h = luma.height();
    return YCbCrImage(std::move(luma), PixelPlane(w, h, 128), PixelPlane(w, h, 128));
}

RgbImage::RgbImage(int w, int h)
    : width(w), height(h), data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

std::uint32_t RgbImage::packed(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + x) * 3;
    return (std::uint32_t{data[i]} << 16) | (std::uint32_t{data[i + 1]} << 8) | data[i + 2];
}

void RgbImage::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + x) * 3;
    data[i] = r;
    data[i + 1] = g;
    data[i + 2] = b;
}

SegmentationMask::SegmentationMask(int width, int height, bool foreground)
    : width_(width), height_(height) {
    if (width < 0 || height < 0) throw std::invalid_argument("SegmentationMask: negative dimensions");
    labels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), foreground ? 1 : 0);
}

void SegmentationMask::fill(bool fg) { std::fill(labels_.begin(), labels_.end(), fg ? 1 : 0); }

std::size_t SegmentationMask::foreground_count() const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

void SegmentationMask::paste(const SegmentationMask& src, int x0, int y0) {
    const int x_end = std::min(width_, x0 + src.width());
    const int y_end = std::min(height_, y0 + src.height());
    for (int y = std::max(0, y0); y < y_end; ++y)
        for (int x = std::max(0, x0); x < x_end; ++x) set(x, y, src.foreground(x - x0, y - y0));
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void SegConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("SegConfig: " + what); };
    if (!is_power_of_two(block_size_max)) fail("block_size_max must be a power of two");
    if (!is_power_of_two(block_size_min)) fail("block_size_min must be a power of two");
    if (block_size_min > block_size_max) fail("block_size_min exceeds block_size_max");
    if (num_bases < 1) fail("num_bases must be at least 1");
    if (num_bases > block_size_min * block_size_min) fail("num_bases exceeds block_size_min^2");
    if (!(eps1 >= 0 && eps2 >= 0 && eps3 >= 0)) fail("thresholds must be non-negative");
    if (!(eps4 >= 0 && eps4 <= 1)) fail("eps4 must lie in [0,1]");
    if (!(rho > 0) || !std::isfinite(rho)) fail("rho must be positive");
    if (admm_iterations < 1) fail("admm_iterations must be at least 1");
    if (threads < 1) fail("threads must be at least 1");
}

Eigen::VectorXd vectorize_block(const PixelPlane& plane, const BlockRegion& region) {
    if (!region.fits_in(plane.width(), plane.height()))
        throw std::out_of_range("vectorize_block: region outside plane");
    const int n = region.size;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n) * n);
    Eigen::Index k = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) v[k++] = plane.at(region.x0 + x, region.y0 + y);
    return v;
}

PixelPlane unvectorize_block(const Eigen::VectorXd& v, int size) {
    if (size <= 0 || v.size() != static_cast<Eigen::Index>(size) * size)
        throw std::invalid_argument("unvectorize_block: length is not size^2");
    PixelPlane out(size, size);
    Eigen::Index k = 0;
    for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y)
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v[k++]), 0L, 255L));
    return out;
}

PixelPlane extract_padded(const PixelPlane& plane, int x0, int y0, int size) {
    if (plane.empty()) throw std::invalid_argument("extract_padded: empty plane");
    PixelPlane out(size, size);
    for (int y = 0; y < size; ++y) {
        const int sy = std::clamp(y0 + y, 0, plane.height() - 1);
        for (int x = 0; x < size; ++x) {
            const int sx = std::clamp(x0 + x, 0, plane.width() - 1);
            out.at(x, y) = plane.at(sx, sy);
        }
    }
    return out;
}

}  // namespace scseg
