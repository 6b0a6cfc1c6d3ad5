#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "scseg/core.hpp"

namespace scseg {

enum class IoErrorCode {
    kNotFound,
    kUnsupportedFormat,
    kDecodeFailed,
    kWriteFailed,
};

class ImageIoError : public std::runtime_error {
public:
    ImageIoError(IoErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    IoErrorCode code() const { return code_; }

private:
    IoErrorCode code_;
};

struct LoadedImage {
    YCbCrImage ycc;
    RgbImage rgb;
    bool grayscale = false;
};

/// Decodes an 8-bit gray, RGB or palette PNG. Gray inputs get constant 128 chroma.
/// 16-bit and alpha-carrying PNGs are rejected with kUnsupportedFormat.
LoadedImage load_image(const std::filesystem::path& path);

/// 8-bit gray PNG, foreground = 255, background = 0.
void write_mask(const SegmentationMask& mask, const std::filesystem::path& path);

/// Reads a gray PNG mask; samples >= 128 are foreground.
SegmentationMask load_mask(const std::filesystem::path& path);

void write_rgb(const RgbImage& image, const std::filesystem::path& path);
void write_gray(const PixelPlane& plane, const std::filesystem::path& path);

}  // namespace scseg
