#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blindspot/geometry.hpp"
#include "blindspot/image.hpp"

namespace blindspot {

struct Frame {
    std::int64_t frame_id = 0;
    std::int64_t timestamp_ns = 0;
    int width = 0;
    int height = 0;
    std::shared_ptr<const Image> pixels;  // optional in replay mode
};

struct StageStats {
    double p50_ms = 0.0;
    double p95_ms = 0.0;
    double p99_ms = 0.0;
};

struct TimingReport {
    std::size_t frames_processed = 0;
    double wall_time_s = 0.0;
    double fps = 0.0;
    double latency_p50_ms = 0.0;
    double latency_p95_ms = 0.0;
    double latency_p99_ms = 0.0;
    std::map<std::string, StageStats> per_stage;
};

struct DetectResult {
    std::vector<Detection> detections;  // frame coordinate space (normalized)
    std::int64_t inference_latency_ns = 0;
};

// The contract any detector must satisfy: frame in, detections out, with the
// backend's own measurement of its core work.
class DetectorBackend {
public:
    virtual ~DetectorBackend() = default;
    virtual DetectResult detect(const Frame& frame) = 0;
    virtual std::string name() const = 0;
};

// Serves recorded detections keyed by frame_id; detections are stored in
// normalized [0,1] coordinates so one table serves any frame resolution.
// An optional per-frame synthetic latency is honored by sleeping.
class ReplayBackend final : public DetectorBackend {
public:
    struct Record {
        std::vector<Detection> detections;
        std::optional<double> synthetic_latency_ms;
    };

    ReplayBackend() = default;
    explicit ReplayBackend(std::map<std::int64_t, Record> table) : table_(std::move(table)) {}

    DetectResult detect(const Frame& frame) override;
    std::string name() const override { return "replay"; }

    const std::map<std::int64_t, Record>& table() const { return table_; }

    // Largest recorded frame_id + 1, or 0 for an empty table.
    std::int64_t frame_count() const;

    // Serialization fixed point with load_replay.
    std::string dump() const;

private:
    std::map<std::int64_t, Record> table_;
};

// Replay file: frame_id x_min y_min x_max y_max score [latency_ms], one
// record per line, '#' comments. Throws ReplayFormatError with line number.
ReplayBackend load_replay(const std::string& path);
ReplayBackend parse_replay(const std::string& text, const std::string& origin = "<memory>");

// Nearest-rank percentile of a sample, q in (0,1].
double percentile_nearest_rank(std::vector<double> sample, double q);

// Runs the backend over synthetic frames [0, frames), discards `warmup`
// frames and reports fps plus latency percentiles over the remainder.
TimingReport measure(DetectorBackend& backend, std::int64_t frames, std::int64_t warmup,
                     int width = 640, int height = 480);

std::string timing_report_text(const TimingReport& r);

}  // namespace blindspot
