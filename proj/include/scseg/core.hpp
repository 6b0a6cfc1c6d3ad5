#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace scseg {

/// One 8-bit sample plane (Y, Cb, Cr or gray), row-major.
class PixelPlane {
public:
    PixelPlane() = default;
    PixelPlane(int width, int height, std::uint8_t fill = 0);
    PixelPlane(int width, int height, std::vector<std::uint8_t> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return samples_.empty(); }

    std::uint8_t at(int x, int y) const { return samples_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return samples_[index(x, y)]; }

    std::span<const std::uint8_t> samples() const { return samples_; }

    bool operator==(const PixelPlane&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

struct YCbCrImage {
    PixelPlane y;
    PixelPlane cb;
    PixelPlane cr;

    YCbCrImage() = default;
    YCbCrImage(PixelPlane y_plane, PixelPlane cb_plane, PixelPlane cr_plane);

    /// Gray image: chroma planes constant 128.
    static YCbCrImage from_luma(PixelPlane luma);

    int width() const { return y.width(); }
    int height() const { return y.height(); }
    bool empty() const { return y.empty(); }
};

/// Interleaved 8-bit RGB raster, kept alongside YCbCr for the color-counting baseline.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // r,g,b per pixel, row-major

    RgbImage() = default;
    RgbImage(int w, int h);

    std::uint32_t packed(int x, int y) const;
    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

/// Square block inside a plane.
struct BlockRegion {
    int x0 = 0;
    int y0 = 0;
    int size = 0;

    bool fits_in(int width, int height) const {
        return x0 >= 0 && y0 >= 0 && size > 0 && x0 + size <= width && y0 + size <= height;
    }
    bool operator==(const BlockRegion&) const = default;
};

struct SmoothModel {
    Eigen::VectorXd coefficients;
    int block_size = 0;
};

/// Per-pixel layer labels, true = foreground.
class SegmentationMask {
public:
    SegmentationMask() = default;
    SegmentationMask(int width, int height, bool foreground = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool foreground(int x, int y) const { return labels_[index(x, y)] != 0; }
    void set(int x, int y, bool fg) { labels_[index(x, y)] = fg ? 1 : 0; }
    void fill(bool fg);

    std::size_t foreground_count() const;
    std::size_t pixel_count() const { return labels_.size(); }

    /// Copy `src` into this mask at (x0, y0), clipped to this mask's extent.
    void paste(const SegmentationMask& src, int x0, int y0);

    bool operator==(const SegmentationMask&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> labels_;
};

struct SegConfig {
    int block_size_max = 64;
    int block_size_min = 8;
    int num_bases = 10;
    double eps1 = 10.0;   // LAD residual threshold
    double eps2 = 10.0;   // flat-block neighbor color tolerance
    double eps3 = 3.0;    // least-squares "smooth background" tolerance
    double eps4 = 0.5;    // minimum background fraction before subdividing
    double rho = 1.0;
    int admm_iterations = 200;
    bool admm_early_stop = false;
    bool enable_chroma_refine = true;
    int threads = 1;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

bool is_power_of_two(int v);

/// Column-major vectorization: columns of the block are concatenated.
/// Throws std::out_of_range if the region is not inside the plane.
Eigen::VectorXd vectorize_block(const PixelPlane& plane, const BlockRegion& region);

/// Inverse of vectorize_block for a size x size block. Values are rounded and clamped to [0,255].
PixelPlane unvectorize_block(const Eigen::VectorXd& v, int size);

/// Copy `size` x `size` samples at (x0, y0), replicating edge samples where the window leaves the plane.
PixelPlane extract_padded(const PixelPlane& plane, int x0, int y0, int size);

}  // namespace scseg
