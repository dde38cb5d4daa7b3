#pragma once

#include <map>
#include <string>
#include <vector>

#include "blindspot/geometry.hpp"

namespace blindspot {

// Per-image matching outcome at one IoU threshold.
struct MatchResult {
    std::vector<bool> tp_flags;  // per detection, score-descending order
    std::vector<double> scores;  // scores aligned with tp_flags
    std::vector<std::size_t> det_indices;  // original input indices, aligned
    std::size_t false_negatives = 0;

    std::size_t tp_count() const {
        std::size_t n = 0;
        for (bool f : tp_flags) n += f;
        return n;
    }
};

struct PrPoint {
    double recall = 0.0;
    double precision = 0.0;
};

struct MetricsBundle {
    std::map<double, double> ap_per_threshold;
    double map_coco = 0.0;
    double ap50 = 0.0;
    double ap75 = 0.0;
    std::map<double, std::vector<PrPoint>> pr_curves;
    bool empty_dataset = false;
};

struct EvalImage {
    std::vector<Detection> dets;
    std::vector<BoundingBox> gts;
};

// COCO thresholds 0.50:0.05:0.95.
std::vector<double> coco_thresholds();

// Greedy score-descending matching: each detection takes the unmatched
// ground truth with the highest IoU when that IoU >= threshold.
MatchResult match_detections(const std::vector<Detection>& dets,
                             const std::vector<BoundingBox>& gts, double iou_threshold);

// Cumulative precision/recall per prefix of the globally score-sorted flags,
// with the right-to-left precision envelope applied.
std::vector<PrPoint> pr_curve(const std::vector<bool>& flags, std::size_t total_gt);

// 101-point interpolated average precision over the envelope curve.
double average_precision(const std::vector<PrPoint>& curve);

MetricsBundle coco_map(const std::vector<EvalImage>& per_image);

// key=value report; deterministic formatting.
std::string metrics_report(const MetricsBundle& m);

// PR samples for one threshold as recall,precision CSV.
std::string pr_curve_csv(const std::vector<PrPoint>& curve);

// Line-delimited detections file: image_id x_min y_min x_max y_max score.
std::map<std::string, std::vector<Detection>> load_detections_file(const std::string& path);
void write_detections_file(const std::map<std::string, std::vector<Detection>>& dets,
                           const std::string& path);

}  // namespace blindspot
