#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "blindspot/config.hpp"
#include "blindspot/errors.hpp"
#include "blindspot/pipeline.hpp"
#include "blindspot/scenario.hpp"

using namespace blindspot;

namespace {

PipelineConfig base_config() {
    PipelineConfig cfg;
    cfg.score_threshold = 0.5;
    cfg.nms_threshold = 0.5;
    cfg.placement = Placement::A_front_mirror;
    cfg.debounce = {3, 5};
    cfg.frame_rate_target = 30.0;
    Zone z;
    z.polygon = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    cfg.zone_override = z;
    return cfg;
}

// a replay with an in-zone cyclist on every frame
ReplayBackend continuous_backend(std::int64_t frames) {
    std::map<std::int64_t, ReplayBackend::Record> table;
    for (std::int64_t i = 0; i < frames; ++i)
        table[i].detections.push_back({{0.4, 0.4, 0.6, 0.9}, 0.9, 0});
    return ReplayBackend(std::move(table));
}

}  // namespace

TEST_CASE("key=value config parsing") {
    const KeyValueConfig kv = parse_key_value_config(
        "# comment\nscore_threshold = 0.4\nplacement = B\n\nk_on=2\n", "test");
    double s = 0;
    CHECK(kv.get_double("score_threshold", s));
    CHECK(s == 0.4);
    std::string p;
    CHECK(kv.get_string("placement", p));
    CHECK(p == "B");
    CHECK_FALSE(kv.has("missing"));
    CHECK_THROWS_AS(parse_key_value_config("no_equals_sign\n", "test"), ConfigError);
    CHECK_THROWS_AS(
        [&] {
            double v;
            parse_key_value_config("x = abc\n", "t").get_double("x", v);
        }(),
        ConfigError);
}

TEST_CASE("pipeline config validation names the offending field") {
    PipelineConfig cfg = base_config();
    cfg.score_threshold = 1.5;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("score_threshold"), ConfigError);
    cfg = base_config();
    cfg.nms_threshold = 0.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("nms_threshold"), ConfigError);
    cfg = base_config();
    cfg.frame_rate_target = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = base_config();
    cfg.debounce.k_on = 100;  // 100/30 s > 2 s budget
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("empty replay source yields a vacuous run") {
    const PipelineConfig cfg = base_config();
    ReplayBackend backend;
    const RunSummary s = run_pipeline(cfg, backend, 0);
    CHECK(s.frames == 0);
    CHECK(s.alerts_raised == 0);
    CHECK(s.detections_total == 0);
    CHECK_FALSE(s.first_alert_latency_s.has_value());
}

TEST_CASE("continuous in-zone cyclist raises within (k_on-1)/fps") {
    const PipelineConfig cfg = base_config();
    ReplayBackend backend = continuous_backend(60);
    const RunSummary s = run_pipeline(cfg, backend, 60);
    CHECK(s.frames == 60);
    CHECK(s.alerts_raised == 1);
    CHECK(s.alerts_cleared == 0);
    REQUIRE(s.first_alert_latency_s.has_value());
    CHECK(*s.first_alert_latency_s <= (cfg.debounce.k_on - 1) / 30.0 + 1e-9);
    CHECK(*s.first_alert_latency_s <= 0.1);
}

TEST_CASE("runs are deterministic") {
    const PipelineConfig cfg = base_config();
    ReplayBackend b1 = continuous_backend(120);
    ReplayBackend b2 = continuous_backend(120);
    const RunSummary s1 = run_pipeline(cfg, b1, 120);
    const RunSummary s2 = run_pipeline(cfg, b2, 120);
    CHECK(run_summary_report(s1) == run_summary_report(s2));
}

TEST_CASE("alerts raised minus cleared stays in {0,1}") {
    std::map<std::int64_t, ReplayBackend::Record> table;
    // bursts of presence with long gaps
    for (std::int64_t i = 0; i < 200; ++i)
        if ((i / 20) % 2 == 0) table[i].detections.push_back({{0.4, 0.4, 0.6, 0.9}, 0.9, 0});
    table[199];  // ensure frame_count covers the tail
    ReplayBackend backend(std::move(table));
    const RunSummary s = run_pipeline(base_config(), backend, 200);
    CHECK(s.alerts_raised >= 1);
    const std::size_t diff = s.alerts_raised - s.alerts_cleared;
    CHECK(diff <= 1);
    // strict alternation
    AlertKind expect = AlertKind::RAISED;
    for (const AlertEvent& e : s.events) {
        CHECK(e.kind == expect);
        expect = expect == AlertKind::RAISED ? AlertKind::CLEARED : AlertKind::RAISED;
    }
}

TEST_CASE("pipeline control flow is backend-agnostic") {
    // two different replay tables: control flow identical, only detections
    // and alert timings differ
    const PipelineConfig cfg = base_config();
    ReplayBackend full = continuous_backend(50);
    std::map<std::int64_t, ReplayBackend::Record> empty_table;
    ReplayBackend empty(std::move(empty_table));
    const RunSummary sf = run_pipeline(cfg, full, 50);
    const RunSummary se = run_pipeline(cfg, empty, 50);
    CHECK(sf.frames == se.frames);
    CHECK(sf.frame_records.size() == se.frame_records.size());
    for (std::size_t i = 0; i < sf.frame_records.size(); ++i)
        CHECK(sf.frame_records[i].frame_id == se.frame_records[i].frame_id);
}

TEST_CASE("score and nms thresholds are applied in order") {
    std::map<std::int64_t, ReplayBackend::Record> table;
    table[0].detections = {
        {{0.40, 0.40, 0.60, 0.90}, 0.9, 0},
        {{0.41, 0.41, 0.61, 0.91}, 0.8, 0},   // suppressed by NMS
        {{0.10, 0.10, 0.20, 0.20}, 0.3, 0},   // below score threshold
    };
    ReplayBackend backend(std::move(table));
    const RunSummary s = run_pipeline(base_config(), backend, 1);
    CHECK(s.detections_total == 1);
}

TEST_CASE("pipeline config file loading with zone override") {
    const std::string path = "/tmp/blindspot_test_cfg.txt";
    {
        std::ofstream out(path);
        out << "score_threshold = 0.6\nnms_threshold = 0.4\nplacement = C\n"
            << "k_on = 2\nk_off = 3\nframe_rate_target = 15\n"
            << "zone = 0,0 1,0 1,1 0,1\n";
    }
    const PipelineConfig cfg = load_pipeline_config(path);
    CHECK(cfg.score_threshold == 0.6);
    CHECK(cfg.nms_threshold == 0.4);
    CHECK(cfg.placement == Placement::C_rear);
    CHECK(cfg.debounce.k_on == 2);
    REQUIRE(cfg.zone_override.has_value());
    CHECK(cfg.zone_override->polygon.size() == 4);
}

TEST_CASE("timing report internal consistency on a real run") {
    ReplayBackend backend = continuous_backend(200);
    const RunSummary s = run_pipeline(base_config(), backend, 200);
    const TimingReport& t = s.timing;
    CHECK(t.frames_processed == 200);
    CHECK(t.fps == doctest::Approx(t.frames_processed / t.wall_time_s).epsilon(1e-9));
    CHECK(t.latency_p50_ms <= t.latency_p95_ms);
    CHECK(t.latency_p95_ms <= t.latency_p99_ms);
}
