#include "scseg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>
#include <stdexcept>

namespace scseg {

KMeans2Result kmeans2(const Eigen::VectorXd& values, double init_bg, double init_fg) {
    if (values.size() == 0) throw std::invalid_argument("kmeans2: empty input");
    if (init_bg == init_fg) throw std::invalid_argument("kmeans2: initial centroids must differ");

    KMeans2Result r;
    r.background_color = init_bg;
    r.foreground_color = init_fg;
    r.assignment.assign(static_cast<std::size_t>(values.size()), 0);

    constexpr int kMaxIterations = 50;
    for (int it = 0; it < kMaxIterations; ++it) {
        bool changed = false;
        double sse = 0.0;
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const double dbg = std::abs(values[i] - r.background_color);
            const double dfg = std::abs(values[i] - r.foreground_color);
            const std::uint8_t a = dfg < dbg ? 1 : 0;
            sse += a ? dfg * dfg : dbg * dbg;
            changed |= a != r.assignment[static_cast<std::size_t>(i)];
            r.assignment[static_cast<std::size_t>(i)] = a;
        }
        r.iterations = it + 1;
        r.objective_history.push_back(sse);
        // The first pass always recomputes centroids, even if every point kept the initial label.
        if (!changed && it > 0) break;

        double sum[2] = {0.0, 0.0};
        Eigen::Index count[2] = {0, 0};
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const int a = r.assignment[static_cast<std::size_t>(i)];
            sum[a] += values[i];
            ++count[a];
        }
        if (count[0] > 0) r.background_color = sum[0] / static_cast<double>(count[0]);
        if (count[1] > 0) r.foreground_color = sum[1] / static_cast<double>(count[1]);
    }
    return r;
}

namespace {

struct DjvuPass {
    const PixelPlane& luma;
    const DjvuConfig& cfg;
    SegmentationMask& mask;

    void run(int x0, int y0, int size, std::optional<std::pair<double, double>> seed) {
        const int xb = std::min(luma.width(), x0 + size);
        const int yb = std::min(luma.height(), y0 + size);
        if (x0 >= xb || y0 >= yb) return;

        Eigen::VectorXd values((xb - x0) * (yb - y0));
        Eigen::Index k = 0;
        for (int y = y0; y < yb; ++y)
            for (int x = x0; x < xb; ++x) values[k++] = luma.at(x, y);

        double bg, fg;
        if (seed) {
            std::tie(bg, fg) = *seed;
        } else {
            bg = values.maxCoeff();  // lighter seed for background, darker for foreground
            fg = values.minCoeff();
        }
        if (bg == fg) return;  // nothing to separate; stays background

        const KMeans2Result km = kmeans2(values, bg, fg);
        if (size > cfg.block_size_min) {
            const int half = size / 2;
            for (int q = 0; q < 4; ++q)
                run(x0 + (q % 2) * half, y0 + (q / 2) * half, half,
                    std::make_pair(km.background_color, km.foreground_color));
            return;
        }

        std::size_t fg_count = 0;
        for (auto a : km.assignment) fg_count += a;
        const std::size_t bg_count = km.assignment.size() - fg_count;
        std::uint8_t foreground_cluster;
        if (fg_count != bg_count)
            foreground_cluster = fg_count < bg_count ? 1 : 0;
        else
            foreground_cluster = km.foreground_color <= km.background_color ? 1 : 0;

        k = 0;
        for (int y = y0; y < yb; ++y)
            for (int x = x0; x < xb; ++x, ++k)
                mask.set(x, y, km.assignment[static_cast<std::size_t>(k)] == foreground_cluster);
    }
};

// Length of the constant-color run through (x, y) along (dx, dy), inside the block.
int run_length(const RgbImage& img, int x, int y, int dx, int dy, int bx0, int by0, int bx1, int by1) {
    const std::uint32_t c = img.packed(x, y);
    int n = 1;
    for (int px = x + dx, py = y + dy; px >= bx0 && py >= by0 && px < bx1 && py < by1 && img.packed(px, py) == c;
         px += dx, py += dy)
        ++n;
    for (int px = x - dx, py = y - dy; px >= bx0 && py >= by0 && px < bx1 && py < by1 && img.packed(px, py) == c;
         px -= dx, py -= dy)
        ++n;
    return n;
}

void spec_pictorial(const RgbImage& img, const SpecConfig& cfg, int bx0, int by0, int bx1, int by1,
                    SegmentationMask& mask) {
    const int w = bx1 - bx0;
    const int h = by1 - by0;
    std::vector<int> size(static_cast<std::size_t>(w) * h, 0);
    auto at = [&](int x, int y) -> int& { return size[static_cast<std::size_t>(y - by0) * w + (x - bx0)]; };

    for (int y = by0; y < by1; ++y)
        for (int x = bx0; x < bx1; ++x)
            at(x, y) = std::max(run_length(img, x, y, 1, 0, bx0, by0, bx1, by1),
                                run_length(img, x, y, 0, 1, bx0, by0, bx1, by1));

    // Constant-color 4-connected components that exactly fill their bounding box are rectangles.
    std::vector<int> component(size.size(), -1);
    std::vector<std::pair<int, int>> stack, members;
    int next_id = 0;
    for (int y = by0; y < by1; ++y)
        for (int x = bx0; x < bx1; ++x) {
            if (component[static_cast<std::size_t>(y - by0) * w + (x - bx0)] >= 0) continue;
            const std::uint32_t c = img.packed(x, y);
            const int id = next_id++;
            members.clear();
            stack.assign(1, {x, y});
            component[static_cast<std::size_t>(y - by0) * w + (x - bx0)] = id;
            int minx = x, maxx = x, miny = y, maxy = y;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                members.emplace_back(cx, cy);
                minx = std::min(minx, cx);
                maxx = std::max(maxx, cx);
                miny = std::min(miny, cy);
                maxy = std::max(maxy, cy);
                const int nbr[4][2] = {{cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};
                for (const auto& p : nbr) {
                    if (p[0] < bx0 || p[1] < by0 || p[0] >= bx1 || p[1] >= by1) continue;
                    int& slot = component[static_cast<std::size_t>(p[1] - by0) * w + (p[0] - bx0)];
                    if (slot >= 0 || img.packed(p[0], p[1]) != c) continue;
                    slot = id;
                    stack.push_back({p[0], p[1]});
                }
            }
            const int area = (maxx - minx + 1) * (maxy - miny + 1);
            if (area == static_cast<int>(members.size()))
                for (auto [mx, my] : members) at(mx, my) = std::max(at(mx, my), area);
        }

    for (int y = by0; y < by1; ++y)
        for (int x = bx0; x < bx1; ++x) mask.set(x, y, at(x, y) <= cfg.primitive_size_threshold);
}

void spec_text_graphics(const RgbImage& img, const SpecConfig& cfg, const std::map<std::uint32_t, int>& histogram,
                        int bx0, int by0, int bx1, int by1, SegmentationMask& mask) {
    std::uint32_t dominant = histogram.begin()->first;
    int best = 0;
    for (const auto& [color, n] : histogram)
        if (n > best) {
            best = n;
            dominant = color;
        }
    const double dr = (dominant >> 16) & 0xFF, dg = (dominant >> 8) & 0xFF, db = dominant & 0xFF;
    for (int y = by0; y < by1; ++y)
        for (int x = bx0; x < bx1; ++x) {
            const std::uint32_t c = img.packed(x, y);
            const double r = (c >> 16) & 0xFF, g = (c >> 8) & 0xFF, b = c & 0xFF;
            const double dist = std::sqrt((r - dr) * (r - dr) + (g - dg) * (g - dg) + (b - db) * (b - db));
            mask.set(x, y, !(dist < cfg.background_distance));
        }
}

}  // namespace

SegmentationMask djvu_segment(const YCbCrImage& image, const DjvuConfig& cfg) {
    if (!is_power_of_two(cfg.block_size_max) || !is_power_of_two(cfg.block_size_min) ||
        cfg.block_size_min > cfg.block_size_max)
        throw std::invalid_argument("djvu_segment: invalid block sizes");
    SegmentationMask mask(image.width(), image.height());
    DjvuPass pass{image.y, cfg, mask};
    for (int y0 = 0; y0 < image.height(); y0 += cfg.block_size_max)
        for (int x0 = 0; x0 < image.width(); x0 += cfg.block_size_max)
            pass.run(x0, y0, cfg.block_size_max, std::nullopt);
    return mask;
}

SegmentationMask spec_segment(const RgbImage& image, const SpecConfig& cfg) {
    if (cfg.block_size < 1) throw std::invalid_argument("spec_segment: block size must be positive");
    if (image.data.size() != static_cast<std::size_t>(image.width) * image.height * 3)
        throw std::invalid_argument("spec_segment: RGB buffer size mismatch");
    SegmentationMask mask(image.width, image.height);
    for (int by0 = 0; by0 < image.height; by0 += cfg.block_size)
        for (int bx0 = 0; bx0 < image.width; bx0 += cfg.block_size) {
            const int bx1 = std::min(image.width, bx0 + cfg.block_size);
            const int by1 = std::min(image.height, by0 + cfg.block_size);
            std::map<std::uint32_t, int> histogram;
            for (int y = by0; y < by1; ++y)
                for (int x = bx0; x < bx1; ++x) ++histogram[image.packed(x, y)];
            if (static_cast<int>(histogram.size()) > cfg.color_threshold)
                spec_pictorial(image, cfg, bx0, by0, bx1, by1, mask);
            else
                spec_text_graphics(image, cfg, histogram, bx0, by0, bx1, by1, mask);
        }
    return mask;
}

}  // namespace scseg
