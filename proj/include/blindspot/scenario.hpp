#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blindspot/backend.hpp"
#include "blindspot/camera.hpp"
#include "blindspot/geometry.hpp"
#include "blindspot/voc.hpp"

namespace blindspot {

enum class Placement;  // alert.hpp

// World frame: z up, x along the truck from rear (0) to front, the cyclist
// lane on the truck's right at positive y. Units are feet.
struct ScenarioConfig {
    double truck_length_ft = 80.0;
    double truck_height_ft = 13.0;
    double camera_height_a_ft = 5.0;
    double camera_height_b_ft = 13.0;
    double camera_height_c_ft = 13.0;
    double cyclist_speed_fps = 15.0;
    double cyclist_lateral_offset_ft = 6.0;
    double cyclist_start_x_ft = -40.0;
    double cyclist_height_ft = 6.0;
    double cyclist_width_ft = 2.0;
    double frame_rate = 30.0;
    double duration_s = 10.0;
    double hfov_deg = 60.0;
    int image_width = 640;
    int image_height = 480;

    void validate() const;  // throws ConfigError
};

ScenarioConfig load_scenario_config(const std::string& path);

// Camera pose for a placement under this config: A front mirror looking
// rearward, pitched down; B mid-truck looking forward, steeply down; C rear
// looking back down the approach lane.
PinholeCamera camera_for_placement(const ScenarioConfig& cfg, Placement tag);

struct TrackFrame {
    std::int64_t frame_id = 0;
    bool visible = false;
    BoundingBox box;  // normalized image coordinates when visible
};

struct SyntheticTrack {
    std::vector<TrackFrame> frames;
    int image_width = 0;
    int image_height = 0;
    double frame_rate = 0.0;
};

// Projects the straight-line cyclist trajectory through the placement's
// camera, one ground-truth box per frame.
SyntheticTrack generate_track(const ScenarioConfig& cfg, Placement tag);

struct ExportNoise {
    double jitter_px = 0.0;     // uniform per-coordinate jitter, pixels
    double drop_rate = 0.0;     // probability a visible frame is dropped
    double score = 0.9;         // constant synthetic confidence
    std::uint64_t seed = 0;
};

// Replay-format text for the track, with optional jitter and frame drops.
std::string export_replay(const SyntheticTrack& track, const ExportNoise& noise);

// Ground truth for evaluation: per-frame VOC annotations in pixel space.
// Writes one .xml per visible frame into `dir` (created if needed); image
// ids are "frame_<id>" zero-padded. Returns the annotations.
std::vector<ImageAnnotation> export_voc_ground_truth(const SyntheticTrack& track,
                                                     const std::string& dir);

}  // namespace blindspot
