#include "blindspot/pipeline.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <sstream>
#include <thread>

#include "blindspot/config.hpp"
#include "blindspot/errors.hpp"

namespace blindspot {

namespace {

std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Bounded ordered queue; the producer blocks when full, never drops.
template <typename T>
class BoundedQueue {
public:
    explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

    void push(T item) {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [&] { return queue_.size() < capacity_; });
        queue_.push_back(std::move(item));
        not_empty_.notify_one();
    }

    std::optional<T> pop() {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [&] { return !queue_.empty() || closed_; });
        if (queue_.empty()) return std::nullopt;
        T item = std::move(queue_.front());
        queue_.pop_front();
        not_full_.notify_one();
        return item;
    }

    void close() {
        std::lock_guard lock(mutex_);
        closed_ = true;
        not_empty_.notify_all();
    }

private:
    std::size_t capacity_;
    std::deque<T> queue_;
    bool closed_ = false;
    std::mutex mutex_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
};

struct DetectedFrame {
    Frame frame;
    std::vector<Detection> detections;
    double stage_latency_ms = 0.0;
    bool backend_failed = false;
};

}  // namespace

void PipelineConfig::validate() const {
    if (score_threshold < 0.0 || score_threshold > 1.0)
        throw ConfigError("score_threshold must be in [0,1]");
    if (nms_threshold <= 0.0 || nms_threshold > 1.0)
        throw ConfigError("nms_threshold must be in (0,1]");
    if (frame_rate_target <= 0.0) throw ConfigError("frame_rate_target must be positive");
    validate_debounce(debounce, frame_rate_target);
    if (zone_override) zone_override->validate();
}

PipelineConfig load_pipeline_config(const std::string& path) {
    const KeyValueConfig kv = load_key_value_config(path);
    PipelineConfig cfg;
    kv.get_string("replay", cfg.replay_path);
    kv.get_double("score_threshold", cfg.score_threshold);
    kv.get_double("nms_threshold", cfg.nms_threshold);
    std::string placement;
    if (kv.get_string("placement", placement)) cfg.placement = placement_from_string(placement);
    kv.get_int("k_on", cfg.debounce.k_on);
    kv.get_int("k_off", cfg.debounce.k_off);
    kv.get_double("frame_rate_target", cfg.frame_rate_target);
    kv.get_string("report_dir", cfg.report_dir);
    std::string zone_text;
    if (kv.get_string("zone", zone_text)) {
        // "x1,y1 x2,y2 ..." vertex list
        Zone z;
        z.placement_tag = cfg.placement;
        std::istringstream ss(zone_text);
        std::string pair;
        while (ss >> pair) {
            const std::size_t comma = pair.find(',');
            if (comma == std::string::npos) throw ConfigError("bad zone vertex: " + pair);
            try {
                z.polygon.push_back(
                    {std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
            } catch (const std::exception&) {
                throw ConfigError("bad zone vertex: " + pair);
            }
        }
        cfg.zone_override = std::move(z);
    }
    cfg.validate();
    return cfg;
}

RunSummary run_pipeline(const PipelineConfig& cfg, DetectorBackend& backend,
                        std::int64_t frame_count) {
    cfg.validate();
    const Zone zone = cfg.zone_override ? *cfg.zone_override : zone_for_placement(cfg.placement);

    BoundedQueue<Frame> ingest_q(4);
    BoundedQueue<DetectedFrame> detect_q(4);

    const double frame_period_ns = 1e9 / cfg.frame_rate_target;

    std::thread ingest([&] {
        for (std::int64_t i = 0; i < frame_count; ++i) {
            Frame f;
            f.frame_id = i;
            f.timestamp_ns = static_cast<std::int64_t>(static_cast<double>(i) * frame_period_ns);
            ingest_q.push(std::move(f));
        }
        ingest_q.close();
    });

    std::thread detect([&] {
        while (auto f = ingest_q.pop()) {
            DetectedFrame df;
            df.frame = *f;
            try {
                const DetectResult r = backend.detect(*f);
                const std::int64_t t0 = now_ns();
                df.detections = nms(filter_by_score(r.detections, cfg.score_threshold),
                                    cfg.nms_threshold);
                df.stage_latency_ms = static_cast<double>(now_ns() - t0) / 1e6;
            } catch (const BackendUnavailable& e) {
                log_message(LogLevel::Error, std::string("backend unavailable: ") + e.what());
                df.backend_failed = true;
                detect_q.push(std::move(df));
                break;  // graceful drain
            }
            detect_q.push(std::move(df));
        }
        detect_q.close();
    });

    RunSummary summary;
    AlertState state;
    std::optional<std::int64_t> first_in_zone_ns;
    bool backend_failed = false;

    const std::int64_t wall_start = now_ns();
    while (auto df = detect_q.pop()) {
        if (df->backend_failed) {
            backend_failed = true;
            break;
        }
        const std::int64_t t0 = now_ns();
        const AlertStepResult step =
            alert_step(state, df->detections, zone, df->frame.timestamp_ns, cfg.debounce);
        state = step.state;
        const double alert_ms = static_cast<double>(now_ns() - t0) / 1e6;

        if (!first_in_zone_ns) {
            for (const Detection& d : df->detections) {
                if (in_zone(d, zone)) {
                    first_in_zone_ns = df->frame.timestamp_ns;
                    break;
                }
            }
        }
        for (const AlertEvent& e : step.events) {
            if (e.kind == AlertKind::RAISED) {
                ++summary.alerts_raised;
                if (!summary.first_alert_latency_s && first_in_zone_ns)
                    summary.first_alert_latency_s =
                        static_cast<double>(e.timestamp_ns - *first_in_zone_ns) / 1e9;
            } else {
                ++summary.alerts_cleared;
            }
            summary.events.push_back(e);
        }

        FrameRecord rec;
        rec.frame_id = df->frame.frame_id;
        rec.timestamp_ns = df->frame.timestamp_ns;
        rec.detections = df->detections;
        rec.stage_latency_ms = df->stage_latency_ms + alert_ms;
        summary.detections_total += rec.detections.size();
        summary.frame_records.push_back(std::move(rec));
        ++summary.frames;
    }
    const std::int64_t wall_end = now_ns();

    ingest.join();
    detect.join();

    if (backend_failed) throw BackendUnavailable("backend failed mid-run after graceful drain");

    summary.timing.frames_processed = summary.frames;
    summary.timing.wall_time_s = std::max(1e-9, static_cast<double>(wall_end - wall_start) / 1e9);
    summary.timing.fps =
        static_cast<double>(summary.timing.frames_processed) / summary.timing.wall_time_s;
    if (summary.frames > 0) {
        std::vector<double> lat;
        lat.reserve(summary.frames);
        for (const FrameRecord& r : summary.frame_records) lat.push_back(r.stage_latency_ms);
        summary.timing.latency_p50_ms = percentile_nearest_rank(lat, 0.50);
        summary.timing.latency_p95_ms = percentile_nearest_rank(lat, 0.95);
        summary.timing.latency_p99_ms = percentile_nearest_rank(lat, 0.99);
        summary.timing.per_stage["postprocess+alert"] = {summary.timing.latency_p50_ms,
                                                         summary.timing.latency_p95_ms,
                                                         summary.timing.latency_p99_ms};
    }
    return summary;
}

RunSummary run_pipeline(const PipelineConfig& cfg) {
    if (cfg.replay_path.empty()) throw ConfigError("no replay source configured");
    ReplayBackend backend = load_replay(cfg.replay_path);
    const std::int64_t frames = backend.frame_count();
    return run_pipeline(cfg, backend, frames);
}

std::string run_summary_report(const RunSummary& s) {
    std::ostringstream os;
    os.precision(9);
    os << std::fixed;
    os << "frames=" << s.frames << "\n";
    os << "detections_total=" << s.detections_total << "\n";
    os << "alerts_raised=" << s.alerts_raised << "\n";
    os << "alerts_cleared=" << s.alerts_cleared << "\n";
    if (s.first_alert_latency_s)
        os << "first_alert_latency_s=" << *s.first_alert_latency_s << "\n";
    else
        os << "first_alert_latency_s=none\n";
    for (const AlertEvent& e : s.events) os << "event " << alert_event_log_line(e) << "\n";
    return os.str();
}

}  // namespace blindspot
