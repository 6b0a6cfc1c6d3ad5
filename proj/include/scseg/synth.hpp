#pragma once

#include <cstdint>

#include "scseg/core.hpp"

namespace scseg {

enum class BackgroundKind { kDctRandom, kFlat, kTwoRegion };
enum class ForegroundKind { kRectTextStrokes, kLines };
enum class ForegroundChannel { kLuma, kCb };

struct SynthSpec {
    int width = 256;
    int height = 256;
    BackgroundKind background_kind = BackgroundKind::kDctRandom;
    ForegroundKind foreground_kind = ForegroundKind::kRectTextStrokes;
    ForegroundChannel foreground_channel = ForegroundChannel::kLuma;
    int fg_luma_offset = 60;
    double fg_coverage = 0.1;  // 0 produces a background-only page
    std::uint64_t seed = 1;
    int block_size = 64;  // dct_random background is synthesized per block of this size
    int num_bases = 10;

    void validate() const;
};

struct SynthPage {
    YCbCrImage image;
    RgbImage rgb;
    SegmentationMask truth;
    /// Foreground and background luma ranges intersect somewhere on the page.
    bool overlapping_range = false;
};

/// Deterministic in `spec.seed`; foreground has hard edges so `truth` is exact.
SynthPage generate(const SynthSpec& spec);

}  // namespace scseg
