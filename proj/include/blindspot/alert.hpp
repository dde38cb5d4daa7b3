#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "blindspot/geometry.hpp"

namespace blindspot {

enum class Placement { A_front_mirror, B_above, C_rear };

Placement placement_from_string(const std::string& s);
std::string placement_to_string(Placement p);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Image-space blind zone: a simple polygon in normalized coordinates.
struct Zone {
    std::vector<Point2> polygon;
    Placement placement_tag = Placement::A_front_mirror;

    void validate() const;  // throws ConfigError on degenerate polygons
};

// Boundary-inclusive even-odd point-in-polygon.
bool point_in_polygon(const Point2& p, const std::vector<Point2>& polygon);

// True iff the box's bottom-center point lies inside or on the zone polygon.
bool in_zone(const Detection& det, const Zone& zone);

// Preset polygon per placement, derived from the default scenario lane
// geometry projected through each placement's camera.
Zone zone_for_placement(Placement tag);
Zone zone_for_placement(const std::string& tag);

enum class AlertMode { IDLE, TENTATIVE, ACTIVE, COOLDOWN };

struct AlertState {
    AlertMode mode = AlertMode::IDLE;
    int consecutive_hits = 0;
    int consecutive_misses = 0;
    std::int64_t last_transition_ns = 0;
    std::int64_t last_step_ns = INT64_MIN;
};

enum class AlertKind { RAISED, CLEARED };

struct AlertEvent {
    AlertKind kind = AlertKind::RAISED;
    std::int64_t timestamp_ns = 0;
    Placement placement_tag = Placement::A_front_mirror;
    std::vector<Detection> snapshot;  // detections that triggered the step
};

struct DebounceParams {
    int k_on = 3;
    int k_off = 5;
};

// One frame of the debounced state machine. `hit` is true when any detection
// lies in the zone. Timestamps must be strictly monotone across calls.
struct AlertStepResult {
    AlertState state;
    std::vector<AlertEvent> events;
};

AlertStepResult alert_step(const AlertState& state, const std::vector<Detection>& dets,
                           const Zone& zone, std::int64_t now_ns, const DebounceParams& params);

// Rejects (k_on, frame_rate) pairs whose worst-case raise latency would
// exceed the two-second warning budget.
void validate_debounce(const DebounceParams& params, double frame_rate_hz);

std::string alert_event_log_line(const AlertEvent& e);

}  // namespace blindspot
