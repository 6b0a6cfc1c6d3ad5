#include "scseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "scseg/color.hpp"
#include "scseg/dictionary.hpp"

namespace scseg {
namespace {

// std::uniform_*_distribution output is library specific; draw from the raw engine instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }
    int integer(int lo, int hi) {  // inclusive
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(engine_() % span);
    }
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

std::uint8_t clamp8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

void fill_dct_background(PixelPlane& luma, const SynthSpec& spec, Rng& rng) {
    const int b = spec.block_size;
    const auto dict = cached_dictionary(b, spec.num_bases);
    // DC sets the block mean; each AC basis peaks at 2/b, so this bound keeps the AC sum within +-45.
    const double ac_bound = spec.num_bases > 1 ? 45.0 * b / (2.0 * (spec.num_bases - 1)) : 0.0;
    for (int by = 0; by < spec.height; by += b)
        for (int bx = 0; bx < spec.width; bx += b) {
            Eigen::VectorXd alpha(spec.num_bases);
            alpha[0] = b * rng.uniform(70.0, 130.0);
            for (int k = 1; k < spec.num_bases; ++k) alpha[k] = rng.uniform(-ac_bound, ac_bound);
            const Eigen::VectorXd block = dict->matrix * alpha;
            for (int x = 0; x < b; ++x)
                for (int y = 0; y < b; ++y)
                    if (bx + x < spec.width && by + y < spec.height)
                        luma.at(bx + x, by + y) = clamp8(block[static_cast<Eigen::Index>(x) * b + y]);
        }
}

void fill_background(PixelPlane& luma, const SynthSpec& spec, Rng& rng) {
    switch (spec.background_kind) {
        case BackgroundKind::kDctRandom:
            fill_dct_background(luma, spec, rng);
            break;
        case BackgroundKind::kFlat: {
            const auto level = static_cast<std::uint8_t>(rng.integer(30, 170));
            for (int y = 0; y < spec.height; ++y)
                for (int x = 0; x < spec.width; ++x) luma.at(x, y) = level;
            break;
        }
        case BackgroundKind::kTwoRegion: {
            const int split = rng.integer(spec.width / 4, 3 * spec.width / 4);
            const int left = rng.integer(30, 90);
            const int right = rng.integer(110, 170);
            for (int y = 0; y < spec.height; ++y)
                for (int x = 0; x < spec.width; ++x)
                    luma.at(x, y) = static_cast<std::uint8_t>(x < split ? left : right);
            break;
        }
    }
}

struct Stroke {
    int x0, y0, w, h;
};

Stroke next_stroke(const SynthSpec& spec, Rng& rng) {
    if (spec.foreground_kind == ForegroundKind::kLines) {
        const int len = rng.integer(16, std::max(16, std::max(spec.width, spec.height) / 2));
        if (rng.coin()) return {rng.integer(0, spec.width - 1), rng.integer(0, spec.height - 1), len, 1};
        return {rng.integer(0, spec.width - 1), rng.integer(0, spec.height - 1), 1, len};
    }
    const int thickness = rng.integer(1, 3);
    const int len = rng.integer(4, 16);
    if (rng.coin()) return {rng.integer(0, spec.width - 1), rng.integer(0, spec.height - 1), len, thickness};
    return {rng.integer(0, spec.width - 1), rng.integer(0, spec.height - 1), thickness, len};
}

}  // namespace

void SynthSpec::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("SynthSpec: empty page");
    if (!(fg_coverage >= 0.0 && fg_coverage <= 0.5)) throw std::invalid_argument("SynthSpec: coverage outside [0,0.5]");
    if (fg_luma_offset < 1 || fg_luma_offset > 255) throw std::invalid_argument("SynthSpec: offset outside [1,255]");
    if (!is_power_of_two(block_size)) throw std::invalid_argument("SynthSpec: block size must be a power of two");
    if (num_bases < 1 || num_bases > block_size * block_size)
        throw std::invalid_argument("SynthSpec: num_bases out of range");
}

SynthPage generate(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    PixelPlane luma(spec.width, spec.height);
    fill_background(luma, spec, rng);
    PixelPlane cb(spec.width, spec.height, 128);
    PixelPlane cr(spec.width, spec.height, 128);
    SegmentationMask truth(spec.width, spec.height);

    const auto target = static_cast<std::size_t>(std::ceil(spec.fg_coverage * spec.width * spec.height));
    std::size_t stamped = 0;
    PixelPlane& target_plane = spec.foreground_channel == ForegroundChannel::kLuma ? luma : cb;
    while (stamped < target) {
        const Stroke s = next_stroke(spec, rng);
        for (int y = s.y0; y < std::min(spec.height, s.y0 + s.h); ++y)
            for (int x = s.x0; x < std::min(spec.width, s.x0 + s.w); ++x) {
                if (truth.foreground(x, y)) continue;
                const int base = target_plane.at(x, y);
                const int up = base + spec.fg_luma_offset;
                const int value = up <= 255 ? up : base - spec.fg_luma_offset;
                target_plane.at(x, y) = static_cast<std::uint8_t>(std::clamp(value, 0, 255));
                truth.set(x, y, true);
                ++stamped;
            }
    }

    int bg_min = 255, bg_max = 0, fg_min = 255, fg_max = 0;
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const int v = luma.at(x, y);
            if (truth.foreground(x, y)) {
                fg_min = std::min(fg_min, v);
                fg_max = std::max(fg_max, v);
            } else {
                bg_min = std::min(bg_min, v);
                bg_max = std::max(bg_max, v);
            }
        }

    SynthPage page;
    page.overlapping_range = stamped > 0 && spec.foreground_channel == ForegroundChannel::kLuma &&
                             fg_min <= bg_max && bg_min <= fg_max;
    page.image = YCbCrImage(std::move(luma), std::move(cb), std::move(cr));
    page.rgb = to_rgb(page.image);
    page.truth = std::move(truth);
    return page;
}

}  // namespace scseg
