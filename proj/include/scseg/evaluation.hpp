#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scseg/core.hpp"

namespace scseg {

class DimensionMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pixel counts with foreground as the positive class.
struct Confusion {
    std::size_t true_pos = 0;
    std::size_t false_pos = 0;
    std::size_t false_neg = 0;
    std::size_t true_neg = 0;

    /// Absent when nothing was predicted foreground.
    std::optional<double> precision() const;
    /// Absent when the ground truth has no foreground.
    std::optional<double> recall() const;
    Confusion& operator+=(const Confusion& o);
};

struct ImageEval {
    std::string name;
    Confusion counts;
    std::optional<double> precision;
    std::optional<double> recall;
};

struct EvalReport {
    Confusion counts;                       // pooled over every image
    std::optional<double> precision;        // micro average (headline)
    std::optional<double> recall;
    std::optional<double> macro_precision;  // mean over images where defined
    std::optional<double> macro_recall;
    std::vector<ImageEval> per_image;
};

struct MaskPair {
    std::string name;
    SegmentationMask pred;
    SegmentationMask gt;
};

/// Throws DimensionMismatchError when the masks differ in size.
EvalReport evaluate(const SegmentationMask& pred, const SegmentationMask& gt);

/// Throws std::invalid_argument on an empty list and DimensionMismatchError naming the offending pair.
EvalReport evaluate_corpus(const std::vector<MaskPair>& pairs);

/// Pairs every `<name>_gt.png` in `gt_dir` with `<name>.png` in `pred_dir`, in name order.
std::vector<MaskPair> load_mask_pairs(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir);

std::string report_to_json(const EvalReport& report);

}  // namespace scseg
