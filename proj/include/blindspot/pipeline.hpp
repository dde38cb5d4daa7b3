#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blindspot/alert.hpp"
#include "blindspot/backend.hpp"
#include "blindspot/geometry.hpp"

namespace blindspot {

struct PipelineConfig {
    std::string replay_path;          // empty when a backend is supplied directly
    double score_threshold = 0.5;
    double nms_threshold = 0.5;
    Placement placement = Placement::A_front_mirror;
    DebounceParams debounce;
    double frame_rate_target = 30.0;
    std::optional<Zone> zone_override;
    std::string report_dir;

    void validate() const;  // throws ConfigError with the offending field named
};

PipelineConfig load_pipeline_config(const std::string& path);

struct FrameRecord {
    std::int64_t frame_id = 0;
    std::int64_t timestamp_ns = 0;
    std::vector<Detection> detections;  // post-filter, post-NMS
    double stage_latency_ms = 0.0;      // non-inference pipeline work for this frame
};

struct RunSummary {
    std::size_t frames = 0;
    std::size_t detections_total = 0;
    std::size_t alerts_raised = 0;
    std::size_t alerts_cleared = 0;
    TimingReport timing;
    std::optional<double> first_alert_latency_s;  // from first in-zone frame to RAISED
    std::vector<AlertEvent> events;
    std::vector<FrameRecord> frame_records;
};

// Executes ingest -> detect+postprocess -> alert+report over bounded ordered
// queues, one thread per stage. Deterministic for a given backend and config.
RunSummary run_pipeline(const PipelineConfig& cfg, DetectorBackend& backend,
                        std::int64_t frame_count);

// Convenience entry that loads the replay named by cfg.replay_path.
RunSummary run_pipeline(const PipelineConfig& cfg);

// Deterministic report (no wall-clock content); timing goes to a separate
// file so reports stay byte-identical across runs.
std::string run_summary_report(const RunSummary& s);

}  // namespace blindspot
