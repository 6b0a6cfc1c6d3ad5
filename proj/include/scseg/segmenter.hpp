#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "scseg/core.hpp"
#include "scseg/dictionary.hpp"

namespace scseg {

enum class Neighbor { kLeft = 0, kTop = 1, kTopLeft = 2, kTopRight = 3 };

/// Background colors of the causal neighbors of a block (same size, already labeled).
struct NeighborContext {
    std::array<std::optional<int>, 4> background_color;

    std::optional<int>& operator[](Neighbor n) { return background_color[static_cast<std::size_t>(n)]; }
    const std::optional<int>& operator[](Neighbor n) const {
        return background_color[static_cast<std::size_t>(n)];
    }
    bool any() const;
};

enum class Layer { kBackground, kForeground };

enum class BlockKind {
    kFlatBackground = 0,
    kFlatForeground = 1,
    kSmoothBackground = 2,
    kLadClassified = 3,
    kSubdivided = 4,
};
inline constexpr std::size_t kBlockKindCount = 5;

const char* to_string(BlockKind kind);

struct BlockDecision {
    BlockKind kind = BlockKind::kFlatBackground;
    SegmentationMask mask;  // covers the block only
    double background_fraction = 1.0;
};

/// Counters gathered while segmenting; merged in tile order so they are schedule independent.
struct SegmentTelemetry {
    std::map<int, std::array<std::size_t, kBlockKindCount>> decisions;  // block size -> count per kind
    std::size_t flat_checks = 0;
    std::size_t ls_fits = 0;       // step 2 invocations
    std::size_t lad_solves = 0;    // step 3 invocations
    std::size_t chroma_refits = 0;
    std::map<int, std::size_t> lad_solves_by_size;

    void record(BlockKind kind, int size);
    std::size_t count(BlockKind kind, int size) const;
    std::size_t count(BlockKind kind) const;
    void merge(const SegmentTelemetry& other);
};

/// Labels committed so far, over the full image; answers neighbor background-color queries.
class LabelCanvas {
public:
    explicit LabelCanvas(const PixelPlane& luma);

    /// Rounded mean luma of labeled background pixels in the rectangle (clipped to the image).
    std::optional<int> background_color(int x0, int y0, int width, int height) const;

    /// Left, top, top-left and top-right squares of the same size as the block at (x0, y0).
    NeighborContext context_for(int x0, int y0, int size) const;

    /// Store labels of `local` at (x0, y0); parts outside the image are dropped.
    void commit(const SegmentationMask& local, int x0, int y0);

    const SegmentationMask& mask() const { return mask_; }

private:
    const PixelPlane* luma_;
    SegmentationMask mask_;
    std::vector<std::uint8_t> labeled_;
};

/// Returns the shared value iff every entry is identical.
std::optional<int> check_flat(const Eigen::VectorXd& luma);

/// Background iff some neighbor color b has |color - b| < eps2, or no neighbor color is known.
Layer classify_flat(int color, const NeighborContext& ctx, double eps2);

/// Least-squares fit over all pixels; returns the model iff every |residual| < eps3.
std::optional<SmoothModel> try_smooth_background(const Eigen::VectorXd& luma, const Dictionary& dict,
                                                 double eps3);

struct LadClassification {
    SegmentationMask mask;  // dict.block_size square
    double background_fraction = 0.0;
};

/// LAD fit, then background iff |residual| < eps1.
LadClassification lad_classify(const Eigen::VectorXd& luma, const Dictionary& dict, double eps1, double rho,
                               int iterations, bool early_stop = false);

/// Steps 1-4 for one block. Sub-block neighbor contexts are read from labels produced inside this call.
BlockDecision segment_block(const YCbCrImage& image, const BlockRegion& region, const NeighborContext& ctx,
                            const SegConfig& cfg, SegmentTelemetry* telemetry = nullptr);

/// Relabel background pixels whose Cb or Cr least-squares fit error (fit on background pixels only)
/// exceeds eps1. Skipped when fewer than K background pixels remain.
SegmentationMask chroma_refine(const YCbCrImage& image, const BlockRegion& region, const SegmentationMask& mask,
                               const Dictionary& dict, double eps1);

struct SegmentationResult {
    SegmentationMask mask;
    SegmentTelemetry telemetry;
};

SegmentationResult segment_image_detailed(const YCbCrImage& image, const SegConfig& cfg);
SegmentationMask segment_image(const YCbCrImage& image, const SegConfig& cfg);

}  // namespace scseg
