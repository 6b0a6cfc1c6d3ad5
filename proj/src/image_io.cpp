#include "scseg/image_io.hpp"

#include <cstring>
#include <vector>

#include <png.h>

#include "scseg/color.hpp"

namespace scseg {
namespace {

struct PngImage {
    png_image image;
    PngImage() {
        std::memset(&image, 0, sizeof image);
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&image); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;
};

// Decoded samples, one byte per pixel for gray sources and three otherwise.
std::vector<std::uint8_t> read_png(const std::filesystem::path& path, int& width, int& height, bool& is_gray) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw ImageIoError(IoErrorCode::kNotFound, "no such file: " + path.string());

    PngImage png;
    if (!png_image_begin_read_from_file(&png.image, path.string().c_str()))
        throw ImageIoError(IoErrorCode::kUnsupportedFormat,
                           path.string() + ": not a readable PNG (" + png.image.message + ")");

    const png_uint_32 fmt = png.image.format;
    if (fmt & PNG_FORMAT_FLAG_LINEAR)
        throw ImageIoError(IoErrorCode::kUnsupportedFormat, path.string() + ": 16-bit PNG not supported");
    if (fmt & PNG_FORMAT_FLAG_ALPHA)
        throw ImageIoError(IoErrorCode::kUnsupportedFormat, path.string() + ": PNG with alpha not supported");

    is_gray = !(fmt & PNG_FORMAT_FLAG_COLOR);
    png.image.format = is_gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    width = static_cast<int>(png.image.width);
    height = static_cast<int>(png.image.height);
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
    if (!png_image_finish_read(&png.image, nullptr, buffer.data(), 0, nullptr))
        throw ImageIoError(IoErrorCode::kDecodeFailed, path.string() + ": " + png.image.message);
    return buffer;
}

void write_png(const std::filesystem::path& path, int width, int height, png_uint_32 format,
               const std::uint8_t* data) {
    PngImage png;
    png.image.width = static_cast<png_uint_32>(width);
    png.image.height = static_cast<png_uint_32>(height);
    png.image.format = format;
    if (!png_image_write_to_file(&png.image, path.string().c_str(), 0, data, 0, nullptr))
        throw ImageIoError(IoErrorCode::kWriteFailed, "cannot write " + path.string() + ": " + png.image.message);
}

}  // namespace

LoadedImage load_image(const std::filesystem::path& path) {
    int width = 0, height = 0;
    bool gray = false;
    std::vector<std::uint8_t> samples = read_png(path, width, height, gray);

    LoadedImage out;
    out.grayscale = gray;
    if (gray) {
        out.rgb = RgbImage(width, height);
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.rgb.data[3 * i] = out.rgb.data[3 * i + 1] = out.rgb.data[3 * i + 2] = samples[i];
        out.ycc = YCbCrImage::from_luma(PixelPlane(width, height, std::move(samples)));
    } else {
        out.rgb.width = width;
        out.rgb.height = height;
        out.rgb.data = std::move(samples);
        out.ycc = to_ycbcr(out.rgb);
    }
    return out;
}

SegmentationMask load_mask(const std::filesystem::path& path) {
    const LoadedImage img = load_image(path);
    SegmentationMask mask(img.ycc.width(), img.ycc.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) mask.set(x, y, img.ycc.y.at(x, y) >= 128);
    return mask;
}

void write_mask(const SegmentationMask& mask, const std::filesystem::path& path) {
    std::vector<std::uint8_t> data(mask.pixel_count());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            data[static_cast<std::size_t>(y) * mask.width() + x] = mask.foreground(x, y) ? 255 : 0;
    write_png(path, mask.width(), mask.height(), PNG_FORMAT_GRAY, data.data());
}

void write_rgb(const RgbImage& image, const std::filesystem::path& path) {
    write_png(path, image.width, image.height, PNG_FORMAT_RGB, image.data.data());
}

void write_gray(const PixelPlane& plane, const std::filesystem::path& path) {
    write_png(path, plane.width(), plane.height(), PNG_FORMAT_GRAY, plane.samples().data());
}

}  // namespace scseg
