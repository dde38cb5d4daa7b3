#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace blindspot {

// Axis-aligned box, continuous real rectangle. Coordinates may be pixels
// or normalized [0,1] depending on context; callers keep spaces consistent.
struct BoundingBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool valid() const { return x_min <= x_max && y_min <= y_max; }

    bool operator==(const BoundingBox&) const = default;
};

struct Detection {
    BoundingBox box;
    double score = 0.0;
    int class_id = 0;  // 0 = cyclist, the only in-scope class

    bool operator==(const Detection&) const = default;
};

// Intersection over union. Degenerate zero-area boxes are legal; two boxes
// with zero union area yield 0.
double iou(const BoundingBox& a, const BoundingBox& b);

// Greedy non-maximum suppression. Sort by score descending (ties broken by
// lower input index), keep a detection iff its IoU with every kept detection
// is < iou_threshold. Output in descending-score order.
std::vector<Detection> nms(const std::vector<Detection>& dets, double iou_threshold);

// Keep detections with score >= min_score, input order preserved.
std::vector<Detection> filter_by_score(const std::vector<Detection>& dets, double min_score);

}  // namespace blindspot
