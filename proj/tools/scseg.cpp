// Command-line front end: segment, eval, synth.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scseg/baselines.hpp"
#include "scseg/evaluation.hpp"
#include "scseg/image_io.hpp"
#include "scseg/segmenter.hpp"
#include "scseg/synth.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kBadArguments = 2,
    kIoError = 3,
    kDimensionMismatch = 4,
};

struct SegmentArgs {
    std::string input;
    std::string output;
    std::string algorithm = "lad";
    scseg::SegConfig cfg;
    bool no_chroma = false;
};

struct EvalArgs {
    std::string pred;
    std::string gt;
    std::string report;
};

struct SynthArgs {
    std::string out;
    int count = 10;
    std::uint64_t seed = 1;
    scseg::SynthSpec spec;
    std::string background = "dct";
    std::string foreground = "strokes";
};

int run_segment(const SegmentArgs& args) {
    const scseg::LoadedImage img = scseg::load_image(args.input);
    scseg::SegmentationMask mask;
    if (args.algorithm == "lad") {
        scseg::SegConfig cfg = args.cfg;
        cfg.enable_chroma_refine = !args.no_chroma;
        mask = scseg::segment_image(img.ycc, cfg);
    } else if (args.algorithm == "djvu") {
        scseg::DjvuConfig cfg;
        cfg.block_size_max = args.cfg.block_size_max;
        mask = scseg::djvu_segment(img.ycc, cfg);
    } else {
        mask = scseg::spec_segment(img.rgb);
    }
    scseg::write_mask(mask, args.output);
    return kOk;
}

int run_eval(const EvalArgs& args) {
    const auto pairs = scseg::load_mask_pairs(args.pred, args.gt);
    if (pairs.empty()) {
        std::cerr << "eval: no <name>_gt.png files in " << args.gt << "\n";
        return kIoError;
    }
    const scseg::EvalReport report = scseg::evaluate_corpus(pairs);
    const std::string json = scseg::report_to_json(report);
    if (args.report.empty()) {
        std::cout << json << "\n";
        return kOk;
    }
    std::ofstream out(args.report);
    out << json << "\n";
    if (!out) throw scseg::ImageIoError(scseg::IoErrorCode::kWriteFailed, "cannot write " + args.report);
    return kOk;
}

int run_synth(SynthArgs args) {
    if (args.background == "dct") args.spec.background_kind = scseg::BackgroundKind::kDctRandom;
    else if (args.background == "flat") args.spec.background_kind = scseg::BackgroundKind::kFlat;
    else args.spec.background_kind = scseg::BackgroundKind::kTwoRegion;
    args.spec.foreground_kind =
        args.foreground == "lines" ? scseg::ForegroundKind::kLines : scseg::ForegroundKind::kRectTextStrokes;

    const std::filesystem::path dir(args.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw scseg::ImageIoError(scseg::IoErrorCode::kWriteFailed, "cannot create " + args.out);
    for (int i = 0; i < args.count; ++i) {
        args.spec.seed = args.seed + static_cast<std::uint64_t>(i);
        const scseg::SynthPage page = scseg::generate(args.spec);
        char name[32];
        std::snprintf(name, sizeof name, "page_%04d", i);
        scseg::write_rgb(page.rgb, dir / (std::string(name) + ".png"));
        scseg::write_mask(page.truth, dir / (std::string(name) + "_gt.png"));
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Screen-content foreground/background segmentation"};
    app.require_subcommand(1);

    SegmentArgs seg;
    auto* segment = app.add_subcommand("segment", "Segment one PNG into a foreground mask");
    segment->add_option("--input", seg.input, "Input PNG (8-bit gray or RGB)")->required();
    segment->add_option("--output", seg.output, "Output mask PNG (255 = foreground)")->required();
    segment->add_option("--algorithm", seg.algorithm, "lad, djvu or spec")
        ->check(CLI::IsMember({"lad", "djvu", "spec"}))
        ->capture_default_str();
    segment->add_option("--block-size", seg.cfg.block_size_max, "Largest block size")->capture_default_str();
    segment->add_option("--min-block-size", seg.cfg.block_size_min, "Smallest block size")->capture_default_str();
    segment->add_option("--bases", seg.cfg.num_bases, "Number of cosine bases K")->capture_default_str();
    segment->add_option("--eps1", seg.cfg.eps1, "LAD residual threshold")->capture_default_str();
    segment->add_option("--eps2", seg.cfg.eps2, "Flat-block neighbor tolerance")->capture_default_str();
    segment->add_option("--eps3", seg.cfg.eps3, "Least-squares smooth-block tolerance")->capture_default_str();
    segment->add_option("--eps4", seg.cfg.eps4, "Background fraction needed to stop subdividing")
        ->capture_default_str();
    segment->add_option("--rho", seg.cfg.rho, "ADMM penalty parameter")->capture_default_str();
    segment->add_option("--iters", seg.cfg.admm_iterations, "ADMM iterations")->capture_default_str();
    segment->add_flag("--early-stop", seg.cfg.admm_early_stop, "Stop ADMM once residuals converge");
    segment->add_flag("--no-chroma", seg.no_chroma, "Skip chroma refinement");
    segment->add_option("--threads", seg.cfg.threads, "Worker threads")->capture_default_str();

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Precision/recall of predicted masks against ground truth");
    eval->add_option("--pred", ev.pred, "Directory of <name>.png predictions")->required();
    eval->add_option("--gt", ev.gt, "Directory of <name>_gt.png ground truth")->required();
    eval->add_option("--report", ev.report, "JSON report path (stdout if omitted)");

    SynthArgs syn;
    auto* synth = app.add_subcommand("synth", "Generate synthetic pages with exact ground truth");
    synth->add_option("--out", syn.out, "Output directory")->required();
    synth->add_option("--count", syn.count, "Number of pages")->check(CLI::NonNegativeNumber)->capture_default_str();
    synth->add_option("--seed", syn.seed, "Seed of the first page")->capture_default_str();
    synth->add_option("--coverage", syn.spec.fg_coverage, "Foreground coverage")->capture_default_str();
    synth->add_option("--offset", syn.spec.fg_luma_offset, "Foreground luma offset")->capture_default_str();
    synth->add_option("--width", syn.spec.width, "Page width")->capture_default_str();
    synth->add_option("--height", syn.spec.height, "Page height")->capture_default_str();
    synth->add_option("--background", syn.background, "dct, flat or two_region")
        ->check(CLI::IsMember({"dct", "flat", "two_region"}))
        ->capture_default_str();
    synth->add_option("--foreground", syn.foreground, "strokes or lines")
        ->check(CLI::IsMember({"strokes", "lines"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kBadArguments;
    }

    try {
        if (*segment) return run_segment(seg);
        if (*eval) return run_eval(ev);
        return run_synth(syn);
    } catch (const scseg::ImageIoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const scseg::DimensionMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDimensionMismatch;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
