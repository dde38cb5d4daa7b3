#include "blindspot/geometry.hpp"

#include <numeric>

namespace blindspot {

double iou(const BoundingBox& a, const BoundingBox& b) {
    const double ix = std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
    const double iy = std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

std::vector<Detection> nms(const std::vector<Detection>& dets, double iou_threshold) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return dets[i].score > dets[j].score;
    });

    std::vector<Detection> kept;
    kept.reserve(dets.size());
    for (std::size_t idx : order) {
        const Detection& cand = dets[idx];
        bool suppressed = false;
        for (const Detection& k : kept) {
            if (iou(cand.box, k.box) >= iou_threshold) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(cand);
    }
    return kept;
}

std::vector<Detection> filter_by_score(const std::vector<Detection>& dets, double min_score) {
    std::vector<Detection> out;
    out.reserve(dets.size());
    for (const Detection& d : dets) {
        if (d.score >= min_score) out.push_back(d);
    }
    return out;
}

}  // namespace blindspot
