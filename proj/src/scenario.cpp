#include "blindspot/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "blindspot/alert.hpp"
#include "blindspot/config.hpp"
#include "blindspot/errors.hpp"
#include "blindspot/rng.hpp"

namespace blindspot {

void ScenarioConfig::validate() const {
    if (truck_length_ft <= 0 || truck_height_ft <= 0) throw ConfigError("truck dimensions must be positive");
    if (camera_height_a_ft <= 0 || camera_height_b_ft <= 0 || camera_height_c_ft <= 0)
        throw ConfigError("camera heights must be positive");
    if (cyclist_speed_fps <= 0) throw ConfigError("cyclist_speed must be positive");
    if (cyclist_height_ft <= 0 || cyclist_width_ft <= 0) throw ConfigError("cyclist dimensions must be positive");
    if (frame_rate <= 0) throw ConfigError("frame_rate must be positive");
    if (duration_s <= 0) throw ConfigError("duration must be positive");
    if (hfov_deg <= 0 || hfov_deg >= 180) throw ConfigError("hfov must be in (0,180) degrees");
    if (image_width <= 0 || image_height <= 0) throw ConfigError("image dimensions must be positive");
}

ScenarioConfig load_scenario_config(const std::string& path) {
    const KeyValueConfig kv = load_key_value_config(path);
    ScenarioConfig cfg;
    kv.get_double("truck_length_ft", cfg.truck_length_ft);
    kv.get_double("truck_height_ft", cfg.truck_height_ft);
    kv.get_double("camera_height_a_ft", cfg.camera_height_a_ft);
    kv.get_double("camera_height_b_ft", cfg.camera_height_b_ft);
    kv.get_double("camera_height_c_ft", cfg.camera_height_c_ft);
    kv.get_double("cyclist_speed_fps", cfg.cyclist_speed_fps);
    kv.get_double("cyclist_lateral_offset_ft", cfg.cyclist_lateral_offset_ft);
    kv.get_double("cyclist_start_x_ft", cfg.cyclist_start_x_ft);
    kv.get_double("cyclist_height_ft", cfg.cyclist_height_ft);
    kv.get_double("cyclist_width_ft", cfg.cyclist_width_ft);
    kv.get_double("frame_rate", cfg.frame_rate);
    kv.get_double("duration_s", cfg.duration_s);
    kv.get_double("hfov_deg", cfg.hfov_deg);
    kv.get_int("image_width", cfg.image_width);
    kv.get_int("image_height", cfg.image_height);
    cfg.validate();
    return cfg;
}

PinholeCamera camera_for_placement(const ScenarioConfig& cfg, Placement tag) {
    switch (tag) {
        case Placement::A_front_mirror:
            // front mirror mount, looking back along the truck's right side
            return PinholeCamera({cfg.truck_length_ft, 0.0, cfg.camera_height_a_ft},
                                 forward_from_angles(165.0, 15.0), cfg.hfov_deg, cfg.image_width,
                                 cfg.image_height);
        case Placement::B_above:
            // mid-truck, looking forward and steeply down at the band below
            return PinholeCamera({cfg.truck_length_ft / 2.0, 0.0, cfg.camera_height_b_ft},
                                 forward_from_angles(15.0, 45.0), cfg.hfov_deg, cfg.image_width,
                                 cfg.image_height);
        case Placement::C_rear:
            // rear corner, looking back down the approach lane
            return PinholeCamera({0.0, 0.0, cfg.camera_height_c_ft},
                                 forward_from_angles(165.0, 10.0), cfg.hfov_deg, cfg.image_width,
                                 cfg.image_height);
    }
    throw ConfigError("unknown placement");
}

SyntheticTrack generate_track(const ScenarioConfig& cfg, Placement tag) {
    cfg.validate();
    const PinholeCamera cam = camera_for_placement(cfg, tag);
    SyntheticTrack track;
    track.image_width = cfg.image_width;
    track.image_height = cfg.image_height;
    track.frame_rate = cfg.frame_rate;

    const std::int64_t n_frames =
        static_cast<std::int64_t>(std::llround(cfg.duration_s * cfg.frame_rate));
    const double min_extent = 1.0 / cfg.image_width;  // below one pixel is invisible

    for (std::int64_t i = 0; i < n_frames; ++i) {
        TrackFrame tf;
        tf.frame_id = i;
        const double t = static_cast<double>(i) / cfg.frame_rate;
        const double xc = cfg.cyclist_start_x_ft + cfg.cyclist_speed_fps * t;
        const double y = cfg.cyclist_lateral_offset_ft;
        const Vec3 corners[4] = {
            {xc - cfg.cyclist_width_ft / 2.0, y, 0.0},
            {xc + cfg.cyclist_width_ft / 2.0, y, 0.0},
            {xc - cfg.cyclist_width_ft / 2.0, y, cfg.cyclist_height_ft},
            {xc + cfg.cyclist_width_ft / 2.0, y, cfg.cyclist_height_ft},
        };
        double u_min = 1e9, v_min = 1e9, u_max = -1e9, v_max = -1e9;
        bool all_in_front = true;
        for (const Vec3& c : corners) {
            const auto p = cam.project(c);
            if (!p) {
                all_in_front = false;
                break;
            }
            u_min = std::min(u_min, p->u);
            u_max = std::max(u_max, p->u);
            v_min = std::min(v_min, p->v);
            v_max = std::max(v_max, p->v);
        }
        if (all_in_front) {
            BoundingBox box{std::clamp(u_min, 0.0, 1.0), std::clamp(v_min, 0.0, 1.0),
                            std::clamp(u_max, 0.0, 1.0), std::clamp(v_max, 0.0, 1.0)};
            if (box.width() >= min_extent && box.height() >= min_extent) {
                tf.visible = true;
                tf.box = box;
            }
        }
        track.frames.push_back(tf);
    }
    return track;
}

std::string export_replay(const SyntheticTrack& track, const ExportNoise& noise) {
    if (noise.drop_rate < 0.0 || noise.drop_rate > 1.0) throw ConfigError("drop_rate must be in [0,1]");
    Rng rng(noise.seed);
    std::ostringstream os;
    os.precision(9);
    os << std::fixed;
    os << "# synthetic scenario replay\n";
    for (const TrackFrame& tf : track.frames) {
        if (!tf.visible) continue;
        if (noise.drop_rate > 0.0 && rng.bernoulli(noise.drop_rate)) continue;
        BoundingBox b = tf.box;
        if (noise.jitter_px > 0.0) {
            const double ju = noise.jitter_px / track.image_width;
            const double jv = noise.jitter_px / track.image_height;
            b.x_min = std::clamp(b.x_min + rng.uniform(-ju, ju), 0.0, 1.0);
            b.x_max = std::clamp(b.x_max + rng.uniform(-ju, ju), 0.0, 1.0);
            b.y_min = std::clamp(b.y_min + rng.uniform(-jv, jv), 0.0, 1.0);
            b.y_max = std::clamp(b.y_max + rng.uniform(-jv, jv), 0.0, 1.0);
            // degenerate inversions collapse to the min edge; keeps every
            // coordinate within jitter_px of truth
            b.x_max = std::max(b.x_max, b.x_min);
            b.y_max = std::max(b.y_max, b.y_min);
        }
        os << tf.frame_id << " " << b.x_min << " " << b.y_min << " " << b.x_max << " " << b.y_max
           << " " << noise.score << "\n";
    }
    return os.str();
}

namespace {

std::string frame_image_id(std::int64_t frame_id) {
    std::ostringstream os;
    os << "frame_" << std::setw(6) << std::setfill('0') << frame_id;
    return os.str();
}

}  // namespace

std::vector<ImageAnnotation> export_voc_ground_truth(const SyntheticTrack& track,
                                                     const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<ImageAnnotation> out;
    for (const TrackFrame& tf : track.frames) {
        if (!tf.visible) continue;
        ImageAnnotation a;
        a.image_id = frame_image_id(tf.frame_id);
        a.width = track.image_width;
        a.height = track.image_height;
        a.boxes.push_back({tf.box.x_min * track.image_width, tf.box.y_min * track.image_height,
                           tf.box.x_max * track.image_width, tf.box.y_max * track.image_height});
        std::ofstream xml(fs::path(dir) / (a.image_id + ".xml"));
        xml << serialize_voc(a);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace blindspot
