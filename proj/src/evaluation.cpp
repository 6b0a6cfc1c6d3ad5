#include "scseg/evaluation.hpp"

#include <algorithm>

#include <json.hpp>

#include "scseg/image_io.hpp"

namespace scseg {

std::optional<double> Confusion::precision() const {
    if (true_pos + false_pos == 0) return std::nullopt;
    return static_cast<double>(true_pos) / static_cast<double>(true_pos + false_pos);
}

std::optional<double> Confusion::recall() const {
    if (true_pos + false_neg == 0) return std::nullopt;
    return static_cast<double>(true_pos) / static_cast<double>(true_pos + false_neg);
}

Confusion& Confusion::operator+=(const Confusion& o) {
    true_pos += o.true_pos;
    false_pos += o.false_pos;
    false_neg += o.false_neg;
    true_neg += o.true_neg;
    return *this;
}

namespace {

Confusion count(const SegmentationMask& pred, const SegmentationMask& gt) {
    Confusion c;
    for (int y = 0; y < gt.height(); ++y)
        for (int x = 0; x < gt.width(); ++x) {
            const bool p = pred.foreground(x, y);
            const bool g = gt.foreground(x, y);
            if (p && g) ++c.true_pos;
            else if (p) ++c.false_pos;
            else if (g) ++c.false_neg;
            else ++c.true_neg;
        }
    return c;
}

std::optional<double> mean_of_defined(const std::vector<ImageEval>& images, std::optional<double> ImageEval::*field) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& img : images)
        if (img.*field) {
            sum += *(img.*field);
            ++n;
        }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

nlohmann::json counts_json(const Confusion& c) {
    return {{"true_pos", c.true_pos}, {"false_pos", c.false_pos}, {"false_neg", c.false_neg}, {"true_neg", c.true_neg}};
}

}  // namespace

EvalReport evaluate(const SegmentationMask& pred, const SegmentationMask& gt) {
    return evaluate_corpus({MaskPair{"", pred, gt}});
}

EvalReport evaluate_corpus(const std::vector<MaskPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("evaluate_corpus: no mask pairs");
    EvalReport report;
    for (const auto& pair : pairs) {
        if (pair.pred.width() != pair.gt.width() || pair.pred.height() != pair.gt.height())
            throw DimensionMismatchError("dimension mismatch for '" + pair.name + "': prediction " +
                                         std::to_string(pair.pred.width()) + "x" + std::to_string(pair.pred.height()) +
                                         ", ground truth " + std::to_string(pair.gt.width()) + "x" +
                                         std::to_string(pair.gt.height()));
        ImageEval img{pair.name, count(pair.pred, pair.gt), std::nullopt, std::nullopt};
        img.precision = img.counts.precision();
        img.recall = img.counts.recall();
        report.counts += img.counts;
        report.per_image.push_back(std::move(img));
    }
    report.precision = report.counts.precision();
    report.recall = report.counts.recall();
    report.macro_precision = mean_of_defined(report.per_image, &ImageEval::precision);
    report.macro_recall = mean_of_defined(report.per_image, &ImageEval::recall);
    return report;
}

std::vector<MaskPair> load_mask_pairs(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir) {
    if (!std::filesystem::is_directory(gt_dir))
        throw ImageIoError(IoErrorCode::kNotFound, "no such directory: " + gt_dir.string());
    if (!std::filesystem::is_directory(pred_dir))
        throw ImageIoError(IoErrorCode::kNotFound, "no such directory: " + pred_dir.string());

    constexpr std::string_view kSuffix = "_gt.png";
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(gt_dir)) {
        const std::string file = entry.path().filename().string();
        if (entry.is_regular_file() && file.size() > kSuffix.size() && file.ends_with(kSuffix))
            names.push_back(file.substr(0, file.size() - kSuffix.size()));
    }
    std::sort(names.begin(), names.end());

    std::vector<MaskPair> pairs;
    for (const auto& name : names)
        pairs.push_back({name, load_mask(pred_dir / (name + ".png")), load_mask(gt_dir / (name + std::string(kSuffix)))});
    return pairs;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::json j = counts_json(report.counts);
    j["precision"] = optional_json(report.precision);
    j["recall"] = optional_json(report.recall);
    j["macro_precision"] = optional_json(report.macro_precision);
    j["macro_recall"] = optional_json(report.macro_recall);
    j["per_image"] = nlohmann::json::array();
    for (const auto& img : report.per_image) {
        nlohmann::json e = counts_json(img.counts);
        e["name"] = img.name;
        e["precision"] = optional_json(img.precision);
        e["recall"] = optional_json(img.recall);
        j["per_image"].push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace scseg
