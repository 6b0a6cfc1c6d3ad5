#include "scseg/segmenter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "scseg/solvers.hpp"

namespace scseg {

bool NeighborContext::any() const {
    return std::any_of(background_color.begin(), background_color.end(),
                       [](const std::optional<int>& c) { return c.has_value(); });
}

const char* to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::kFlatBackground: return "flat_background";
        case BlockKind::kFlatForeground: return "flat_foreground";
        case BlockKind::kSmoothBackground: return "smooth_background";
        case BlockKind::kLadClassified: return "lad_classified";
        case BlockKind::kSubdivided: return "subdivided";
    }
    return "unknown";
}

void SegmentTelemetry::record(BlockKind kind, int size) {
    auto [it, inserted] = decisions.try_emplace(size);
    if (inserted) it->second.fill(0);
    ++it->second[static_cast<std::size_t>(kind)];
}

std::size_t SegmentTelemetry::count(BlockKind kind, int size) const {
    auto it = decisions.find(size);
    return it == decisions.end() ? 0 : it->second[static_cast<std::size_t>(kind)];
}

std::size_t SegmentTelemetry::count(BlockKind kind) const {
    std::size_t total = 0;
    for (const auto& [size, counts] : decisions) total += counts[static_cast<std::size_t>(kind)];
    return total;
}

void SegmentTelemetry::merge(const SegmentTelemetry& other) {
    for (const auto& [size, counts] : other.decisions) {
        auto [it, inserted] = decisions.try_emplace(size);
        if (inserted) it->second.fill(0);
        for (std::size_t k = 0; k < kBlockKindCount; ++k) it->second[k] += counts[k];
    }
    flat_checks += other.flat_checks;
    ls_fits += other.ls_fits;
    lad_solves += other.lad_solves;
    chroma_refits += other.chroma_refits;
    for (const auto& [size, n] : other.lad_solves_by_size) lad_solves_by_size[size] += n;
}

LabelCanvas::LabelCanvas(const PixelPlane& luma)
    : luma_(&luma),
      mask_(luma.width(), luma.height()),
      labeled_(static_cast<std::size_t>(luma.width()) * static_cast<std::size_t>(luma.height()), 0) {}

std::optional<int> LabelCanvas::background_color(int x0, int y0, int width, int height) const {
    const int xa = std::max(0, x0);
    const int ya = std::max(0, y0);
    const int xb = std::min(luma_->width(), x0 + width);
    const int yb = std::min(luma_->height(), y0 + height);
    long long sum = 0;
    long long count = 0;
    for (int y = ya; y < yb; ++y) {
        for (int x = xa; x < xb; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(luma_->width()) + x;
            if (!labeled_[i] || mask_.foreground(x, y)) continue;
            sum += luma_->at(x, y);
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return static_cast<int>((2 * sum + count) / (2 * count));
}

NeighborContext LabelCanvas::context_for(int x0, int y0, int size) const {
    NeighborContext ctx;
    ctx[Neighbor::kLeft] = background_color(x0 - size, y0, size, size);
    ctx[Neighbor::kTop] = background_color(x0, y0 - size, size, size);
    ctx[Neighbor::kTopLeft] = background_color(x0 - size, y0 - size, size, size);
    ctx[Neighbor::kTopRight] = background_color(x0 + size, y0 - size, size, size);
    return ctx;
}

void LabelCanvas::commit(const SegmentationMask& local, int x0, int y0) {
    mask_.paste(local, x0, y0);
    const int xa = std::max(0, x0);
    const int ya = std::max(0, y0);
    const int xb = std::min(luma_->width(), x0 + local.width());
    const int yb = std::min(luma_->height(), y0 + local.height());
    for (int y = ya; y < yb; ++y)
        for (int x = xa; x < xb; ++x)
            labeled_[static_cast<std::size_t>(y) * static_cast<std::size_t>(luma_->width()) + x] = 1;
}

std::optional<int> check_flat(const Eigen::VectorXd& luma) {
    if (luma.size() == 0) throw std::invalid_argument("check_flat: empty block");
    const double first = luma[0];
    for (Eigen::Index i = 1; i < luma.size(); ++i)
        if (luma[i] != first) return std::nullopt;
    return static_cast<int>(first);
}

Layer classify_flat(int color, const NeighborContext& ctx, double eps2) {
    if (!ctx.any()) return Layer::kBackground;
    for (const auto& b : ctx.background_color)
        if (b && std::abs(color - *b) < eps2) return Layer::kBackground;
    return Layer::kForeground;
}

std::optional<SmoothModel> try_smooth_background(const Eigen::VectorXd& luma, const Dictionary& dict,
                                                 double eps3) {
    FitResult fit = least_squares_fit(dict, luma);
    if (fit.residuals.cwiseAbs().maxCoeff() < eps3) return std::move(fit.model);
    return std::nullopt;
}

LadClassification lad_classify(const Eigen::VectorXd& luma, const Dictionary& dict, double eps1, double rho,
                               int iterations, bool early_stop) {
    AdmmOptions options;
    options.rho = rho;
    options.iterations = iterations;
    options.early_stop = early_stop;
    const FitResult fit = lad_fit_admm(dict, luma, options);

    const int n = dict.block_size;
    LadClassification out{SegmentationMask(n, n), 0.0};
    std::size_t background = 0;
    Eigen::Index i = 0;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y, ++i) {
            const bool bg = std::abs(fit.residuals[i]) < eps1;
            out.mask.set(x, y, !bg);
            background += bg;
        }
    }
    out.background_fraction = static_cast<double>(background) / static_cast<double>(luma.size());
    return out;
}

namespace {

// Maps block coordinates of the working image onto the canvas (image) coordinates.
struct Frame {
    LabelCanvas* canvas;
    int origin_x;
    int origin_y;
    SegmentTelemetry* telemetry;
};

double background_fraction_of(const SegmentationMask& mask) {
    return 1.0 - static_cast<double>(mask.foreground_count()) / static_cast<double>(mask.pixel_count());
}

BlockDecision segment_region(const YCbCrImage& image, const BlockRegion& region, const NeighborContext& ctx,
                             const SegConfig& cfg, Frame& frame) {
    const int n = region.size;
    const Eigen::VectorXd luma = vectorize_block(image.y, region);
    SegmentTelemetry& tel = *frame.telemetry;

    auto finish = [&](BlockDecision d) {
        tel.record(d.kind, n);
        frame.canvas->commit(d.mask, frame.origin_x + region.x0, frame.origin_y + region.y0);
        return d;
    };

    ++tel.flat_checks;
    if (auto color = check_flat(luma)) {
        if (classify_flat(*color, ctx, cfg.eps2) == Layer::kBackground)
            return finish({BlockKind::kFlatBackground, SegmentationMask(n, n, false), 1.0});
        return finish({BlockKind::kFlatForeground, SegmentationMask(n, n, true), 0.0});
    }

    const auto dict = cached_dictionary(n, cfg.num_bases);
    ++tel.ls_fits;
    if (try_smooth_background(luma, *dict, cfg.eps3))
        return finish({BlockKind::kSmoothBackground, SegmentationMask(n, n, false), 1.0});

    ++tel.lad_solves;
    ++tel.lad_solves_by_size[n];
    LadClassification lad =
        lad_classify(luma, *dict, cfg.eps1, cfg.rho, cfg.admm_iterations, cfg.admm_early_stop);
    if (lad.background_fraction > cfg.eps4 || n <= cfg.block_size_min)
        return finish({BlockKind::kLadClassified, std::move(lad.mask), lad.background_fraction});

    const int half = n / 2;
    BlockDecision out{BlockKind::kSubdivided, SegmentationMask(n, n), 0.0};
    for (int q = 0; q < 4; ++q) {
        const BlockRegion sub{region.x0 + (q % 2) * half, region.y0 + (q / 2) * half, half};
        const NeighborContext sub_ctx =
            frame.canvas->context_for(frame.origin_x + sub.x0, frame.origin_y + sub.y0, half);
        const BlockDecision child = segment_region(image, sub, sub_ctx, cfg, frame);
        out.mask.paste(child.mask, sub.x0 - region.x0, sub.y0 - region.y0);
    }
    out.background_fraction = background_fraction_of(out.mask);
    tel.record(BlockKind::kSubdivided, n);
    return out;
}

int working_size(int extent, const SegConfig& cfg) {
    int s = cfg.block_size_min;
    while (s < extent) s *= 2;
    return std::min(s, cfg.block_size_max);
}

}  // namespace

BlockDecision segment_block(const YCbCrImage& image, const BlockRegion& region, const NeighborContext& ctx,
                            const SegConfig& cfg, SegmentTelemetry* telemetry) {
    cfg.validate();
    if (!region.fits_in(image.width(), image.height()))
        throw std::out_of_range("segment_block: region outside image");
    if (region.size < cfg.block_size_min || region.size > cfg.block_size_max || !is_power_of_two(region.size))
        throw std::invalid_argument("segment_block: region size outside configured block sizes");

    LabelCanvas canvas(image.y);
    SegmentTelemetry local;
    Frame frame{&canvas, 0, 0, telemetry ? telemetry : &local};
    return segment_region(image, region, ctx, cfg, frame);
}

SegmentationMask chroma_refine(const YCbCrImage& image, const BlockRegion& region, const SegmentationMask& mask,
                               const Dictionary& dict, double eps1) {
    const int n = region.size;
    if (mask.width() != n || mask.height() != n)
        throw std::invalid_argument("chroma_refine: mask does not cover region");
    if (dict.block_size != n) throw std::invalid_argument("chroma_refine: dictionary block size mismatch");

    // Column-major selection of current background pixels.
    std::vector<std::uint8_t> background(static_cast<std::size_t>(n) * n);
    std::size_t count = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const bool bg = !mask.foreground(x, y);
            background[static_cast<std::size_t>(x) * n + y] = bg;
            count += bg;
        }

    SegmentationMask out = mask;
    if (count < static_cast<std::size_t>(dict.num_bases)) return out;

    for (const PixelPlane* plane : {&image.cb, &image.cr}) {
        const FitResult fit = least_squares_fit_subset(dict, vectorize_block(*plane, region), background);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const std::size_t i = static_cast<std::size_t>(x) * n + y;
                if (background[i] && std::abs(fit.residuals[static_cast<Eigen::Index>(i)]) > eps1)
                    out.set(x, y, true);
            }
    }
    return out;
}

SegmentationResult segment_image_detailed(const YCbCrImage& image, const SegConfig& cfg) {
    cfg.validate();
    if (image.empty()) throw std::invalid_argument("segment_image: empty image");

    const int bs = cfg.block_size_max;
    const int tiles_x = (image.width() + bs - 1) / bs;
    const int tiles_y = (image.height() + bs - 1) / bs;
    LabelCanvas canvas(image.y);
    std::vector<SegmentTelemetry> tile_telemetry(static_cast<std::size_t>(tiles_x) * tiles_y);

    auto process_tile = [&](int tx, int ty) {
        const int x0 = tx * bs;
        const int y0 = ty * bs;
        const int extent = std::max(std::min(bs, image.width() - x0), std::min(bs, image.height() - y0));
        const int s = working_size(extent, cfg);
        const YCbCrImage tile(extract_padded(image.y, x0, y0, s), extract_padded(image.cb, x0, y0, s),
                              extract_padded(image.cr, x0, y0, s));
        SegmentTelemetry& tel = tile_telemetry[static_cast<std::size_t>(ty) * tiles_x + tx];
        Frame frame{&canvas, x0, y0, &tel};
        const BlockRegion whole{0, 0, s};
        BlockDecision decision = segment_region(tile, whole, canvas.context_for(x0, y0, s), cfg, frame);
        if (cfg.enable_chroma_refine) {
            ++tel.chroma_refits;
            decision.mask =
                chroma_refine(tile, whole, decision.mask, *cached_dictionary(s, cfg.num_bases), cfg.eps1);
            canvas.commit(decision.mask, x0, y0);
        }
    };

    // Tile (tx, ty) reads labels of its left, top-left, top and top-right tiles, so every tile on
    // the wavefront tx + 2*ty = w depends only on earlier wavefronts.
    const int waves = (tiles_x - 1) + 2 * (tiles_y - 1) + 1;
    for (int w = 0; w < waves; ++w) {
        std::vector<std::pair<int, int>> wave;
        for (int ty = 0; ty < tiles_y; ++ty) {
            const int tx = w - 2 * ty;
            if (tx >= 0 && tx < tiles_x) wave.emplace_back(tx, ty);
        }
        const int workers = std::min<int>(cfg.threads, static_cast<int>(wave.size()));
        if (workers <= 1) {
            for (auto [tx, ty] : wave) process_tile(tx, ty);
            continue;
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(wave.size());
        {
            std::vector<std::jthread> pool;
            for (int t = 0; t < workers; ++t) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < wave.size(); i = next++) {
                        try {
                            process_tile(wave[i].first, wave[i].second);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    }
                });
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    SegmentationResult result{canvas.mask(), {}};
    for (const auto& t : tile_telemetry) result.telemetry.merge(t);
    return result;
}

SegmentationMask segment_image(const YCbCrImage& image, const SegConfig& cfg) {
    return segment_image_detailed(image, cfg).mask;
}

}  // namespace scseg
