#include "blindspot/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "blindspot/errors.hpp"

namespace blindspot {

std::vector<double> coco_thresholds() {
    std::vector<double> t;
    for (int k = 50; k <= 95; k += 5) t.push_back(k / 100.0);
    return t;
}

MatchResult match_detections(const std::vector<Detection>& dets,
                             const std::vector<BoundingBox>& gts, double iou_threshold) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return dets[i].score > dets[j].score;
    });

    std::vector<bool> gt_used(gts.size(), false);
    MatchResult result;
    result.tp_flags.reserve(dets.size());
    for (std::size_t idx : order) {
        double best_iou = 0.0;
        std::size_t best_gt = gts.size();
        for (std::size_t g = 0; g < gts.size(); ++g) {
            if (gt_used[g]) continue;
            const double v = iou(dets[idx].box, gts[g]);
            if (v > best_iou) {
                best_iou = v;
                best_gt = g;
            }
        }
        const bool tp = best_gt < gts.size() && best_iou >= iou_threshold;
        if (tp) gt_used[best_gt] = true;
        result.tp_flags.push_back(tp);
        result.scores.push_back(dets[idx].score);
        result.det_indices.push_back(idx);
    }
    result.false_negatives = gts.size() - result.tp_count();
    return result;
}

std::vector<PrPoint> pr_curve(const std::vector<bool>& flags, std::size_t total_gt) {
    std::vector<PrPoint> curve;
    curve.reserve(flags.size());
    std::size_t tp = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        tp += flags[i];
        const double recall =
            total_gt > 0 ? static_cast<double>(tp) / static_cast<double>(total_gt) : 0.0;
        const double precision = static_cast<double>(tp) / static_cast<double>(i + 1);
        curve.push_back({recall, precision});
    }
    // right-to-left running maximum: the interpolation envelope
    for (std::size_t i = curve.size(); i > 1; --i)
        curve[i - 2].precision = std::max(curve[i - 2].precision, curve[i - 1].precision);
    return curve;
}

double average_precision(const std::vector<PrPoint>& curve) {
    if (curve.empty()) return 0.0;
    double sum = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double r = i / 100.0;
        double p = 0.0;
        for (const PrPoint& pt : curve) {
            if (pt.recall >= r) {
                p = pt.precision;  // envelope is non-increasing, first hit is the max
                break;
            }
        }
        sum += p;
    }
    return sum / 101.0;
}

MetricsBundle coco_map(const std::vector<EvalImage>& per_image) {
    MetricsBundle m;
    if (per_image.empty()) {
        m.empty_dataset = true;
        for (double t : coco_thresholds()) {
            m.ap_per_threshold[t] = 0.0;
            m.pr_curves[t] = {};
        }
        return m;
    }

    std::size_t total_gt = 0;
    for (const EvalImage& img : per_image) total_gt += img.gts.size();

    struct Entry {
        double score;
        std::size_t image_idx;
        std::size_t det_idx;
        bool tp;
    };

    double ap_sum = 0.0;
    for (double t : coco_thresholds()) {
        std::vector<Entry> entries;
        for (std::size_t i = 0; i < per_image.size(); ++i) {
            const MatchResult r = match_detections(per_image[i].dets, per_image[i].gts, t);
            for (std::size_t k = 0; k < r.tp_flags.size(); ++k)
                entries.push_back({r.scores[k], i, r.det_indices[k], r.tp_flags[k]});
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.image_idx != b.image_idx) return a.image_idx < b.image_idx;
            return a.det_idx < b.det_idx;
        });
        std::vector<bool> flags;
        flags.reserve(entries.size());
        for (const Entry& e : entries) flags.push_back(e.tp);
        const std::vector<PrPoint> curve = pr_curve(flags, total_gt);
        const double ap = total_gt == 0 ? 0.0 : average_precision(curve);
        m.ap_per_threshold[t] = ap;
        m.pr_curves[t] = curve;
        ap_sum += ap;
    }
    m.map_coco = ap_sum / static_cast<double>(coco_thresholds().size());
    m.ap50 = m.ap_per_threshold.at(0.50);
    m.ap75 = m.ap_per_threshold.at(0.75);
    return m;
}

std::string metrics_report(const MetricsBundle& m) {
    std::ostringstream os;
    os.precision(12);
    os << std::fixed;
    os << "map_coco=" << m.map_coco << "\n";
    os << "ap50=" << m.ap50 << "\n";
    os << "ap75=" << m.ap75 << "\n";
    os << "empty_dataset=" << (m.empty_dataset ? 1 : 0) << "\n";
    for (const auto& [t, ap] : m.ap_per_threshold) {
        std::ostringstream key;
        key.precision(2);
        key << std::fixed << t;
        os << "ap@" << key.str() << "=" << ap << "\n";
    }
    return os.str();
}

std::string pr_curve_csv(const std::vector<PrPoint>& curve) {
    std::ostringstream os;
    os.precision(12);
    os << std::fixed;
    os << "recall,precision\n";
    for (const PrPoint& p : curve) os << p.recall << "," << p.precision << "\n";
    return os.str();
}

std::map<std::string, std::vector<Detection>> load_detections_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open detections file: " + path);
    std::map<std::string, std::vector<Detection>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string cleaned = line;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::istringstream ss(cleaned);
        std::string id;
        if (!(ss >> id)) continue;  // blank line
        if (id[0] == '#') continue;
        Detection d;
        if (!(ss >> d.box.x_min >> d.box.y_min >> d.box.x_max >> d.box.y_max >> d.score))
            throw ParseError("bad detection record at " + path + ":" + std::to_string(lineno));
        out[id].push_back(d);
    }
    return out;
}

void write_detections_file(const std::map<std::string, std::vector<Detection>>& dets,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write detections file: " + path);
    out.precision(9);
    out << std::fixed;
    for (const auto& [id, list] : dets)
        for (const Detection& d : list)
            out << id << " " << d.box.x_min << " " << d.box.y_min << " " << d.box.x_max << " "
                << d.box.y_max << " " << d.score << "\n";
}

}  // namespace blindspot
