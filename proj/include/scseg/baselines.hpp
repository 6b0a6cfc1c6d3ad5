#pragma once

#include <vector>

#include <Eigen/Core>

#include "scseg/core.hpp"

namespace scseg {

struct KMeans2Result {
    double background_color = 0.0;
    double foreground_color = 0.0;
    std::vector<std::uint8_t> assignment;  // 1 = foreground cluster
    int iterations = 0;
    std::vector<double> objective_history;  // within-cluster squared error after each assignment pass
};

/// Two-centroid Lloyd iterations until the assignment stops changing or 50 rounds.
/// Ties go to the background centroid; an empty cluster keeps its centroid.
/// Throws std::invalid_argument for empty input or identical initial centroids.
KMeans2Result kmeans2(const Eigen::VectorXd& values, double init_bg, double init_fg);

struct DjvuConfig {
    int block_size_max = 64;
    int block_size_min = 8;
};

/// Hierarchical two-class k-means over 64 -> 8 blocks, children seeded from parent centroids.
/// At the finest level the cluster with fewer pixels is foreground (darker on ties).
SegmentationMask djvu_segment(const YCbCrImage& image, const DjvuConfig& cfg = {});

struct SpecConfig {
    int block_size = 16;
    int color_threshold = 32;           // > this many distinct colors => pictorial block
    int primitive_size_threshold = 50;  // pixels
    double background_distance = 10.0;  // RGB distance to the dominant color
};

/// Color-counting segmentation on RGB blocks.
SegmentationMask spec_segment(const RgbImage& image, const SpecConfig& cfg = {});

}  // namespace scseg
