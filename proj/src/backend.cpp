#include "blindspot/backend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "blindspot/errors.hpp"

namespace blindspot {

namespace {

std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

DetectResult ReplayBackend::detect(const Frame& frame) {
    const std::int64_t t0 = now_ns();
    DetectResult result;
    const auto it = table_.find(frame.frame_id);
    if (it != table_.end()) {
        result.detections = it->second.detections;
        if (it->second.synthetic_latency_ms) {
            std::this_thread::sleep_for(
                std::chrono::duration<double, std::milli>(*it->second.synthetic_latency_ms));
        }
    }
    result.inference_latency_ns = now_ns() - t0;
    return result;
}

std::int64_t ReplayBackend::frame_count() const {
    if (table_.empty()) return 0;
    return table_.rbegin()->first + 1;
}

std::string ReplayBackend::dump() const {
    std::ostringstream os;
    os.precision(9);
    os << std::fixed;
    os << "# frame_id x_min y_min x_max y_max score [latency_ms]\n";
    for (const auto& [fid, rec] : table_) {
        for (const Detection& d : rec.detections) {
            os << fid << " " << d.box.x_min << " " << d.box.y_min << " " << d.box.x_max << " "
               << d.box.y_max << " " << d.score;
            if (rec.synthetic_latency_ms) os << " " << *rec.synthetic_latency_ms;
            os << "\n";
        }
        if (rec.detections.empty()) {
            // frame present but empty; keep it visible in the dump
            os << "# frame " << fid << " empty\n";
        }
    }
    return os.str();
}

ReplayBackend parse_replay(const std::string& text, const std::string& origin) {
    std::map<std::int64_t, ReplayBackend::Record> table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string cleaned = line;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::istringstream ss(cleaned);
        std::string first;
        if (!(ss >> first)) continue;
        if (first[0] == '#') continue;
        std::int64_t fid;
        Detection d;
        try {
            fid = std::stoll(first);
        } catch (const std::exception&) {
            throw ReplayFormatError("bad frame_id at " + origin + ":" + std::to_string(lineno));
        }
        if (!(ss >> d.box.x_min >> d.box.y_min >> d.box.x_max >> d.box.y_max >> d.score))
            throw ReplayFormatError("bad replay record at " + origin + ":" + std::to_string(lineno));
        double latency_ms;
        ReplayBackend::Record& rec = table[fid];
        if (ss >> latency_ms) rec.synthetic_latency_ms = latency_ms;
        rec.detections.push_back(d);
    }
    return ReplayBackend(std::move(table));
}

ReplayBackend load_replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ReplayFormatError("cannot open replay file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_replay(ss.str(), path);
}

double percentile_nearest_rank(std::vector<double> sample, double q) {
    if (sample.empty()) throw MeasurementError("percentile of empty sample");
    std::sort(sample.begin(), sample.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(sample.size())));
    return sample[std::max<std::size_t>(rank, 1) - 1];
}

TimingReport measure(DetectorBackend& backend, std::int64_t frames, std::int64_t warmup,
                     int width, int height) {
    if (warmup < 0 || frames <= warmup) throw MeasurementError("stream length must exceed warmup");

    std::vector<double> latencies_ms;
    latencies_ms.reserve(static_cast<std::size_t>(frames - warmup));
    const std::int64_t wall_start = now_ns();
    std::int64_t measured_start = wall_start;
    for (std::int64_t i = 0; i < frames; ++i) {
        if (i == warmup) measured_start = now_ns();
        Frame f;
        f.frame_id = i;
        f.timestamp_ns = now_ns();
        f.width = width;
        f.height = height;
        const std::int64_t t0 = now_ns();
        (void)backend.detect(f);
        const std::int64_t t1 = now_ns();
        if (i >= warmup) latencies_ms.push_back(static_cast<double>(t1 - t0) / 1e6);
    }
    const std::int64_t wall_end = now_ns();

    TimingReport r;
    r.frames_processed = latencies_ms.size();
    r.wall_time_s = static_cast<double>(wall_end - measured_start) / 1e9;
    if (r.wall_time_s <= 0.0) r.wall_time_s = 1e-9;
    r.fps = static_cast<double>(r.frames_processed) / r.wall_time_s;
    r.latency_p50_ms = percentile_nearest_rank(latencies_ms, 0.50);
    r.latency_p95_ms = percentile_nearest_rank(latencies_ms, 0.95);
    r.latency_p99_ms = percentile_nearest_rank(latencies_ms, 0.99);
    r.per_stage["detect"] = {r.latency_p50_ms, r.latency_p95_ms, r.latency_p99_ms};
    return r;
}

std::string timing_report_text(const TimingReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    os << "frames_processed=" << r.frames_processed << "\n";
    os << "wall_time_s=" << r.wall_time_s << "\n";
    os << "fps=" << r.fps << "\n";
    os << "latency_p50_ms=" << r.latency_p50_ms << "\n";
    os << "latency_p95_ms=" << r.latency_p95_ms << "\n";
    os << "latency_p99_ms=" << r.latency_p99_ms << "\n";
    for (const auto& [name, s] : r.per_stage)
        os << "stage." << name << "=" << s.p50_ms << "," << s.p95_ms << "," << s.p99_ms << "\n";
    return os.str();
}

}  // namespace blindspot
