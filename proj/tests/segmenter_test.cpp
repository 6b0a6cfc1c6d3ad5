#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "scseg/segmenter.hpp"
#include "scseg/solvers.hpp"

namespace scseg {
namespace {

using testing::TestRng;

Eigen::VectorXd constant(int n, double v) { return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n) * n, v); }

// Smooth coefficients whose synthesized block stays within [mean-20, mean+20].
Eigen::VectorXd mild_alpha(const Dictionary& d, TestRng& rng, double mean) {
    Eigen::VectorXd a(d.num_bases);
    a[0] = d.block_size * mean;
    for (int k = 1; k < d.num_bases; ++k) a[k] = rng.uniform(-1.0, 1.0) * d.block_size;
    return a;
}

TEST(CheckFlat, Examples) {
    EXPECT_EQ(check_flat(constant(8, 200)), 200);
    Eigen::VectorXd v = constant(8, 200);
    v[63] = 201;
    EXPECT_FALSE(check_flat(v).has_value());
    EXPECT_EQ(check_flat(Eigen::VectorXd::Zero(1)), 0);
    EXPECT_THROW(check_flat(Eigen::VectorXd()), std::invalid_argument);
}

TEST(ClassifyFlat, Examples) {
    NeighborContext ctx;
    ctx[Neighbor::kLeft] = 95;
    EXPECT_EQ(classify_flat(100, ctx, 10), Layer::kBackground);

    NeighborContext far;
    far[Neighbor::kTop] = 150;
    EXPECT_EQ(classify_flat(100, far, 10), Layer::kForeground);

    EXPECT_EQ(classify_flat(100, NeighborContext{}, 10), Layer::kBackground);
}

TEST(ClassifyFlat, ThresholdIsStrict) {
    NeighborContext ctx;
    ctx[Neighbor::kTopRight] = 110;
    EXPECT_EQ(classify_flat(100, ctx, 10), Layer::kForeground);
    ctx[Neighbor::kTopLeft] = 91;
    EXPECT_EQ(classify_flat(100, ctx, 10), Layer::kBackground);
}

TEST(TrySmoothBackground, Examples) {
    const Dictionary d = build_dictionary(8, 10);
    TestRng rng(1);
    const Eigen::VectorXd alpha = mild_alpha(d, rng, 100);
    Eigen::VectorXd f = d.matrix * alpha;
    auto model = try_smooth_background(f, d, 3);
    ASSERT_TRUE(model.has_value());
    EXPECT_LE((model->coefficients - alpha).cwiseAbs().maxCoeff(), 1e-9);

    f[20] += 50;
    EXPECT_FALSE(try_smooth_background(f, d, 3).has_value());
    // The spike's own residual is 50 * (1 - ||row 20 of P||^2), far above 3.
    EXPECT_GT(std::abs(least_squares_fit(d, f).residuals[20]), 40.0);

    EXPECT_TRUE(try_smooth_background(constant(8, 80), d, 3).has_value());
}

TEST(LadClassify, ExactModelIsAllBackground) {
    const Dictionary d = build_dictionary(8, 10);
    TestRng rng(2);
    const auto r = lad_classify(d.matrix * mild_alpha(d, rng, 90), d, 10, 1, 200);
    EXPECT_EQ(r.background_fraction, 1.0);
    EXPECT_EQ(r.mask.foreground_count(), 0u);
}

TEST(LadClassify, OffsetPixelsBecomeForeground) {
    const Dictionary d = build_dictionary(16, 10);
    TestRng rng(3);
    Eigen::VectorXd f = d.matrix * mild_alpha(d, rng, 90);
    std::set<Eigen::Index> offset;
    while (offset.size() < 13) offset.insert(rng.integer(0, 255));  // 5% of 256
    for (auto i : offset) f[i] += 100;
    const auto r = lad_classify(f, d, 10, 1, 200);
    for (int x = 0; x < 16; ++x)
        for (int y = 0; y < 16; ++y)
            EXPECT_EQ(r.mask.foreground(x, y), offset.count(x * 16 + y) == 1) << x << "," << y;
    EXPECT_DOUBLE_EQ(r.background_fraction, 1.0 - 13.0 / 256.0);
}

TEST(LadClassify, CheckerboardGolden) {
    const Dictionary d = build_dictionary(8, 10);
    Eigen::VectorXd f(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) f[x * 8 + y] = (x + y) % 2 ? 255 : 0;
    const auto r = lad_classify(f, d, 10, 1, 200);
    EXPECT_EQ(r.background_fraction, 0.0);
    EXPECT_EQ(r.mask.foreground_count(), 64u);
}

class SegmentBlockTest : public ::testing::Test {
protected:
    SegConfig cfg;
    std::shared_ptr<const Dictionary> d64 = cached_dictionary(64, 10);
    std::shared_ptr<const Dictionary> d32 = cached_dictionary(32, 10);
};

TEST_F(SegmentBlockTest, FlatBlockWithMatchingNeighbor) {
    const YCbCrImage img = YCbCrImage::from_luma(PixelPlane(64, 64, 120));
    NeighborContext ctx;
    ctx[Neighbor::kLeft] = 115;
    const BlockDecision dec = segment_block(img, {0, 0, 64}, ctx, cfg);
    EXPECT_EQ(dec.kind, BlockKind::kFlatBackground);
    EXPECT_EQ(dec.mask.foreground_count(), 0u);

    ctx[Neighbor::kLeft] = 40;
    EXPECT_EQ(segment_block(img, {0, 0, 64}, ctx, cfg).kind, BlockKind::kFlatForeground);
}

TEST_F(SegmentBlockTest, SmoothBlockStopsAtStepTwo) {
    TestRng rng(5);
    PixelPlane luma(64, 64);
    testing::stamp_model(luma, *d64, mild_alpha(*d64, rng, 110), 0, 0);
    SegmentTelemetry tel;
    const BlockDecision dec = segment_block(YCbCrImage::from_luma(luma), {0, 0, 64}, {}, cfg, &tel);
    EXPECT_EQ(dec.kind, BlockKind::kSmoothBackground);
    EXPECT_EQ(tel.lad_solves, 0u);
}

TEST_F(SegmentBlockTest, TextStrokesOverSmoothBackground) {
    TestRng rng(6);
    PixelPlane luma(64, 64);
    testing::stamp_model(luma, *d64, mild_alpha(*d64, rng, 100), 0, 0);
    SegmentationMask truth(64, 64);
    std::size_t stamped = 0;
    while (stamped < 410) {  // ~10% of the block
        const int x0 = rng.integer(0, 60), y0 = rng.integer(0, 50), len = rng.integer(4, 14);
        const bool horizontal = rng.integer(0, 1) == 1;
        for (int i = 0; i < len; ++i) {
            const int x = horizontal ? std::min(63, x0 + i) : x0;
            const int y = horizontal ? y0 : std::min(63, y0 + i);
            if (truth.foreground(x, y)) continue;
            luma.at(x, y) = static_cast<std::uint8_t>(luma.at(x, y) + 120);
            truth.set(x, y, true);
            ++stamped;
        }
    }
    const BlockDecision dec = segment_block(YCbCrImage::from_luma(luma), {0, 0, 64}, {}, cfg);
    EXPECT_EQ(dec.kind, BlockKind::kLadClassified);
    EXPECT_EQ(dec.mask, truth);
    EXPECT_GT(dec.background_fraction, cfg.eps4);
}

YCbCrImage four_quadrant_block(const Dictionary& d32, TestRng& rng) {
    PixelPlane luma(64, 64);
    const double means[4] = {40, 220, 160, 100};
    for (int q = 0; q < 4; ++q) testing::stamp_model(luma, d32, mild_alpha(d32, rng, means[q]), (q % 2) * 32, (q / 2) * 32);
    return YCbCrImage::from_luma(luma);
}

TEST_F(SegmentBlockTest, PoorSingleFitSubdivides) {
    TestRng rng(7);
    const YCbCrImage img = four_quadrant_block(*d32, rng);
    const Eigen::VectorXd f = vectorize_block(img.y, {0, 0, 64});
    const auto lad = lad_classify(f, *d64, cfg.eps1, cfg.rho, cfg.admm_iterations);
    ASSERT_LT(lad.background_fraction, 0.5);

    SegmentTelemetry tel;
    const BlockDecision dec = segment_block(img, {0, 0, 64}, {}, cfg, &tel);
    EXPECT_EQ(dec.kind, BlockKind::kSubdivided);
    EXPECT_EQ(tel.count(BlockKind::kSubdivided, 64), 1u);
    EXPECT_EQ(tel.count(BlockKind::kSmoothBackground, 32), 4u);
    EXPECT_EQ(dec.mask.foreground_count(), 0u);
}

TEST_F(SegmentBlockTest, RejectsSizesOutsideConfig) {
    const YCbCrImage img = YCbCrImage::from_luma(PixelPlane(128, 128, 0));
    EXPECT_THROW(segment_block(img, {0, 0, 128}, {}, cfg), std::invalid_argument);
    EXPECT_THROW(segment_block(img, {0, 0, 4}, {}, cfg), std::invalid_argument);
    EXPECT_THROW(segment_block(img, {96, 96, 64}, {}, cfg), std::out_of_range);
}

TEST_F(SegmentBlockTest, StepOrderingAndBoundedRecursion) {
    TestRng rng(8);
    const std::set<int> allowed{8, 16, 32, 64};
    for (int t = 0; t < 12; ++t) {
        PixelPlane luma(64, 64);
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x) luma.at(x, y) = static_cast<std::uint8_t>(rng.integer(0, 255) / 64 * 64);
        SegmentTelemetry tel;
        const BlockDecision dec = segment_block(YCbCrImage::from_luma(luma), {0, 0, 64}, {}, cfg, &tel);
        for (const auto& [size, counts] : tel.decisions) EXPECT_TRUE(allowed.count(size)) << size;
        for (const auto& [size, n] : tel.lad_solves_by_size) EXPECT_GE(size, cfg.block_size_min);
        if (dec.kind == BlockKind::kLadClassified) EXPECT_GT(dec.background_fraction, cfg.eps4);
        // Every non-flat block reaches the least-squares test; every LAD solve follows a failed one.
        EXPECT_LE(tel.lad_solves, tel.ls_fits);
        EXPECT_LE(tel.ls_fits, tel.flat_checks);
    }
}

TEST(ChromaRefine, ConstantChromaLeavesMaskUnchanged) {
    const YCbCrImage img(PixelPlane(16, 16, 90), PixelPlane(16, 16, 100), PixelPlane(16, 16, 140));
    SegmentationMask mask(16, 16);
    mask.set(3, 3, true);
    const auto out = chroma_refine(img, {0, 0, 16}, mask, build_dictionary(16, 10), 10);
    EXPECT_EQ(out, mask);
}

TEST(ChromaRefine, ChromaBlobBecomesForeground) {
    PixelPlane cb(64, 64, 128);
    SegmentationMask blob(64, 64);
    const int pts[10][2] = {{5, 5}, {6, 5}, {7, 5}, {5, 6}, {6, 6}, {7, 6}, {40, 30}, {41, 30}, {42, 30}, {43, 30}};
    for (auto& p : pts) {
        cb.at(p[0], p[1]) = 208;
        blob.set(p[0], p[1], true);
    }
    const YCbCrImage img(PixelPlane(64, 64, 70), cb, PixelPlane(64, 64, 128));
    const Dictionary d = build_dictionary(64, 10);
    const SegmentationMask out = chroma_refine(img, {0, 0, 64}, SegmentationMask(64, 64), d, 10);
    EXPECT_EQ(out, blob);
    EXPECT_EQ(chroma_refine(img, {0, 0, 64}, out, d, 10), out);
}

TEST(ChromaRefine, AllForegroundIsUnchanged) {
    const YCbCrImage img(PixelPlane(8, 8, 0), PixelPlane(8, 8, 10), PixelPlane(8, 8, 250));
    const SegmentationMask mask(8, 8, true);
    EXPECT_EQ(chroma_refine(img, {0, 0, 8}, mask, build_dictionary(8, 10), 10), mask);
}

TEST(ChromaRefine, MonotoneAndIdempotentOnRandomBlocks) {
    TestRng rng(10);
    const Dictionary d = build_dictionary(16, 10);
    for (int t = 0; t < 20; ++t) {
        PixelPlane cb(16, 16), cr(16, 16, 128);
        testing::stamp_model(cb, d, mild_alpha(d, rng, 120), 0, 0);
        SegmentationMask mask(16, 16);
        for (int i = 0; i < 12; ++i) {
            const int x = rng.integer(0, 15), y = rng.integer(0, 15);
            cb.at(x, y) = static_cast<std::uint8_t>(cb.at(x, y) > 128 ? 20 : 240);
        }
        for (int i = 0; i < 10; ++i) mask.set(rng.integer(0, 15), rng.integer(0, 15), true);
        const YCbCrImage img(PixelPlane(16, 16, 50), cb, cr);
        const SegmentationMask once = chroma_refine(img, {0, 0, 16}, mask, d, 10);
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x)
                if (mask.foreground(x, y)) EXPECT_TRUE(once.foreground(x, y));
        EXPECT_EQ(chroma_refine(img, {0, 0, 16}, once, d, 10), once) << t;
    }
}

TEST(SegmentImage, UniformImageIsBackground) {
    const YCbCrImage img = YCbCrImage::from_luma(PixelPlane(128, 128, 77));
    const SegmentationResult r = segment_image_detailed(img, SegConfig{});
    EXPECT_EQ(r.mask.foreground_count(), 0u);
    EXPECT_EQ(r.telemetry.count(BlockKind::kFlatBackground, 64), 4u);
}

TEST(SegmentImage, RepresentableImageNeverRunsLad) {
    TestRng rng(11);
    const auto d = cached_dictionary(64, 10);
    PixelPlane luma(192, 128);
    for (int by = 0; by < 128; by += 64)
        for (int bx = 0; bx < 192; bx += 64) testing::stamp_model(luma, *d, mild_alpha(*d, rng, 60 + bx / 2), bx, by);
    const SegmentationResult r = segment_image_detailed(YCbCrImage::from_luma(luma), SegConfig{});
    EXPECT_EQ(r.mask.foreground_count(), 0u);
    EXPECT_EQ(r.telemetry.lad_solves, 0u);
    EXPECT_EQ(r.telemetry.count(BlockKind::kSmoothBackground, 64), 6u);
}

TEST(SegmentImage, DifferentFlatBlockBecomesForeground) {
    PixelPlane luma(192, 192, 100);
    for (int y = 64; y < 128; ++y)
        for (int x = 64; x < 128; ++x) luma.at(x, y) = 160;
    const SegmentationMask m = segment_image(YCbCrImage::from_luma(luma), SegConfig{});
    for (int y = 0; y < 192; ++y)
        for (int x = 0; x < 192; ++x) ASSERT_EQ(m.foreground(x, y), x >= 64 && x < 128 && y >= 64 && y < 128);
}

TEST(SegmentImage, PartialBlocksKeepImageDimensions) {
    TestRng rng(12);
    PixelPlane luma(150, 75, 120);
    for (int i = 0; i < 300; ++i) luma.at(rng.integer(0, 149), rng.integer(0, 74)) = 250;
    const SegmentationMask m = segment_image(YCbCrImage::from_luma(luma), SegConfig{});
    EXPECT_EQ(m.width(), 150);
    EXPECT_EQ(m.height(), 75);
    for (int y = 0; y < 75; ++y)
        for (int x = 0; x < 150; ++x) EXPECT_EQ(m.foreground(x, y), luma.at(x, y) == 250);
}

TEST(SegmentImage, TinyImage) {
    const SegmentationMask m = segment_image(YCbCrImage::from_luma(PixelPlane(3, 5, 9)), SegConfig{});
    EXPECT_EQ(m.width(), 3);
    EXPECT_EQ(m.height(), 5);
    EXPECT_EQ(m.foreground_count(), 0u);
}

TEST(SegmentImage, RejectsEmptyImage) {
    EXPECT_THROW(segment_image(YCbCrImage{}, SegConfig{}), std::invalid_argument);
}

TEST(SegmentImage, ThreadCountDoesNotChangeResult) {
    TestRng rng(13);
    const auto d = cached_dictionary(64, 10);
    PixelPlane luma(320, 200);
    for (int by = 0; by < 200; by += 64)
        for (int bx = 0; bx < 320; bx += 64) {
            PixelPlane block(64, 64);
            testing::stamp_model(block, *d, mild_alpha(*d, rng, 100), 0, 0);
            for (int y = 0; y < 64 && by + y < 200; ++y)
                for (int x = 0; x < 64; ++x) luma.at(bx + x, by + y) = block.at(x, y);
        }
    for (int i = 0; i < 2000; ++i) luma.at(rng.integer(0, 319), rng.integer(0, 199)) = 255;
    const YCbCrImage img = YCbCrImage::from_luma(luma);
    SegConfig one;
    SegConfig many;
    many.threads = 4;
    const SegmentationResult a = segment_image_detailed(img, one);
    const SegmentationResult b = segment_image_detailed(img, many);
    EXPECT_EQ(a.mask, b.mask);
    EXPECT_EQ(a.telemetry.decisions, b.telemetry.decisions);
}

TEST(LabelCanvas, BackgroundColorUsesOnlyLabeledBackground) {
    PixelPlane luma(8, 8, 10);
    for (int x = 0; x < 4; ++x) luma.at(x, 0) = 30;
    LabelCanvas canvas(luma);
    EXPECT_FALSE(canvas.background_color(0, 0, 8, 8).has_value());
    SegmentationMask m(4, 4);
    m.set(1, 1, true);
    canvas.commit(m, 0, 0);
    // 4 samples of 30 and 11 of 10 -> mean 15.33
    EXPECT_EQ(canvas.background_color(0, 0, 8, 8), 15);
    const NeighborContext ctx = canvas.context_for(4, 0, 4);
    EXPECT_EQ(ctx[Neighbor::kLeft], 15);
    EXPECT_FALSE(ctx[Neighbor::kTop].has_value());
}

}  // namespace
}  // namespace scseg
