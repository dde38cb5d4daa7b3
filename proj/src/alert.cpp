#include "blindspot/alert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blindspot/errors.hpp"
#include "blindspot/scenario.hpp"

namespace blindspot {

Placement placement_from_string(const std::string& s) {
    if (s == "A" || s == "A_front_mirror") return Placement::A_front_mirror;
    if (s == "B" || s == "B_above") return Placement::B_above;
    if (s == "C" || s == "C_rear") return Placement::C_rear;
    throw ConfigError("unknown placement tag: '" + s + "' (expected A, B or C)");
}

std::string placement_to_string(Placement p) {
    switch (p) {
        case Placement::A_front_mirror: return "A_front_mirror";
        case Placement::B_above: return "B_above";
        case Placement::C_rear: return "C_rear";
    }
    return "?";
}

namespace {

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (std::abs(cross) > 1e-12) return false;
    return p.x >= std::min(a.x, b.x) - 1e-12 && p.x <= std::max(a.x, b.x) + 1e-12 &&
           p.y >= std::min(a.y, b.y) - 1e-12 && p.y <= std::max(a.y, b.y) + 1e-12;
}

bool segments_intersect_interior(const Point2& a, const Point2& b, const Point2& c,
                                 const Point2& d) {
    auto orient = [](const Point2& p, const Point2& q, const Point2& r) {
        const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

void Zone::validate() const {
    if (polygon.size() < 3) throw ConfigError("zone polygon needs at least 3 vertices");
    for (const Point2& p : polygon)
        if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
            throw ConfigError("zone vertex outside [0,1]^2");
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (shared endpoint)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect_interior(polygon[i], polygon[(i + 1) % n], polygon[j],
                                            polygon[(j + 1) % n]))
                throw ConfigError("zone polygon is self-intersecting");
        }
    }
}

bool point_in_polygon(const Point2& p, const std::vector<Point2>& polygon) {
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(p, polygon[i], polygon[(i + 1) % n])) return true;

    // even-odd ray cast toward +x
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& a = polygon[i];
        const Point2& b = polygon[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool in_zone(const Detection& det, const Zone& zone) {
    const Point2 bottom_center{0.5 * (det.box.x_min + det.box.x_max), det.box.y_max};
    return point_in_polygon(bottom_center, zone.polygon);
}

namespace {

// Convex hull (monotone chain) of the projected lane-band samples.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

Zone zone_for_placement(Placement tag) {
    const ScenarioConfig cfg;  // shipped defaults
    const PinholeCamera cam = camera_for_placement(cfg, tag);

    // Ground-level lane band on the truck's right, sampled densely and
    // projected; the preset zone is the convex hull of the visible samples.
    const double band_near = cfg.cyclist_lateral_offset_ft - 3.0;
    const double band_far = cfg.cyclist_lateral_offset_ft + 3.0;
    std::vector<Point2> pts;
    for (double x = -30.0; x <= cfg.truck_length_ft + 30.0; x += 1.0) {
        for (double y : {band_near, band_far}) {
            const auto p = cam.project({x, y, 0.0});
            if (!p) continue;
            if (p->u < -0.5 || p->u > 1.5 || p->v < -0.5 || p->v > 1.5) continue;
            pts.push_back({std::clamp(p->u, 0.0, 1.0), std::clamp(p->v, 0.0, 1.0)});
        }
    }
    Zone zone;
    zone.placement_tag = tag;
    zone.polygon = convex_hull(std::move(pts));
    if (zone.polygon.size() < 3) {
        // camera never sees the band under this config; fall back to full frame
        zone.polygon = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    }
    zone.validate();
    return zone;
}

Zone zone_for_placement(const std::string& tag) {
    return zone_for_placement(placement_from_string(tag));
}

void validate_debounce(const DebounceParams& params, double frame_rate_hz) {
    if (params.k_on < 1 || params.k_off < 1) throw ConfigError("k_on and k_off must be >= 1");
    if (frame_rate_hz <= 0.0) throw ConfigError("frame rate must be positive");
    // static enforcement of the two-second warning budget
    if (params.k_on * (1.0 / frame_rate_hz) > 2.0)
        throw ConfigError("debounce k_on=" + std::to_string(params.k_on) + " at " +
                          std::to_string(frame_rate_hz) + " fps exceeds the 2.0 s alert budget");
}

AlertStepResult alert_step(const AlertState& state, const std::vector<Detection>& dets,
                           const Zone& zone, std::int64_t now_ns, const DebounceParams& params) {
    if (params.k_on < 1 || params.k_off < 1) throw ConfigError("k_on and k_off must be >= 1");
    if (now_ns <= state.last_step_ns && state.last_step_ns != INT64_MIN)
        throw ClockError("non-monotone timestamp in alert_step");

    bool hit = false;
    for (const Detection& d : dets) {
        if (in_zone(d, zone)) {
            hit = true;
            break;
        }
    }

    AlertStepResult out;
    out.state = state;
    out.state.last_step_ns = now_ns;

    auto raise = [&] {
        out.state.mode = AlertMode::ACTIVE;
        out.state.consecutive_misses = 0;
        out.state.last_transition_ns = now_ns;
        AlertEvent e;
        e.kind = AlertKind::RAISED;
        e.timestamp_ns = now_ns;
        e.placement_tag = zone.placement_tag;
        e.snapshot = dets;
        out.events.push_back(std::move(e));
    };
    auto clear = [&] {
        out.state.mode = AlertMode::IDLE;
        out.state.consecutive_hits = 0;
        out.state.consecutive_misses = 0;
        out.state.last_transition_ns = now_ns;
        AlertEvent e;
        e.kind = AlertKind::CLEARED;
        e.timestamp_ns = now_ns;
        e.placement_tag = zone.placement_tag;
        e.snapshot = dets;
        out.events.push_back(std::move(e));
    };

    switch (state.mode) {
        case AlertMode::IDLE:
            if (hit) {
                out.state.consecutive_hits = 1;
                if (out.state.consecutive_hits >= params.k_on) {
                    raise();
                } else {
                    out.state.mode = AlertMode::TENTATIVE;
                    out.state.last_transition_ns = now_ns;
                }
            }
            break;
        case AlertMode::TENTATIVE:
            if (hit) {
                out.state.consecutive_hits = state.consecutive_hits + 1;
                if (out.state.consecutive_hits >= params.k_on) raise();
            } else {
                out.state.mode = AlertMode::IDLE;
                out.state.consecutive_hits = 0;
                out.state.last_transition_ns = now_ns;
            }
            break;
        case AlertMode::ACTIVE:
        case AlertMode::COOLDOWN:
            if (hit) {
                out.state.mode = AlertMode::ACTIVE;
                out.state.consecutive_misses = 0;
            } else {
                out.state.consecutive_misses = state.consecutive_misses + 1;
                if (out.state.consecutive_misses >= params.k_off) {
                    clear();
                } else {
                    out.state.mode = AlertMode::COOLDOWN;  // miss-counting sub-phase of ACTIVE
                }
            }
            break;
    }
    return out;
}

std::string alert_event_log_line(const AlertEvent& e) {
    std::ostringstream os;
    os << e.timestamp_ns << " " << (e.kind == AlertKind::RAISED ? "RAISED" : "CLEARED") << " "
       << placement_to_string(e.placement_tag) << " dets=" << e.snapshot.size();
    return os.str();
}

}  // namespace blindspot
