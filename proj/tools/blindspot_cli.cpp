#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "blindspot/alert.hpp"
#include "blindspot/augment.hpp"
#include "blindspot/backend.hpp"
#include "blindspot/config.hpp"
#include "blindspot/errors.hpp"
#include "blindspot/evaluation.hpp"
#include "blindspot/image.hpp"
#include "blindspot/pipeline.hpp"
#include "blindspot/scenario.hpp"
#include "blindspot/voc.hpp"

namespace fs = std::filesystem;
using namespace blindspot;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write report: " + path.string());
    out << text;
}

// gt directory + detections file -> per-image eval inputs, over the union of
// image ids so unmatched detections still count as false positives.
std::vector<EvalImage> build_eval_images(const std::vector<ImageAnnotation>& gts,
                                         const std::map<std::string, std::vector<Detection>>& dets) {
    std::map<std::string, EvalImage> by_id;
    for (const ImageAnnotation& a : gts) by_id[a.image_id].gts = a.boxes;
    for (const auto& [id, list] : dets) by_id[id].dets = list;
    std::vector<EvalImage> out;
    out.reserve(by_id.size());
    for (auto& [id, img] : by_id) out.push_back(std::move(img));
    return out;
}

MetricsBundle evaluate_run_against_track(const RunSummary& run, const SyntheticTrack& track) {
    std::map<std::int64_t, const TrackFrame*> truth;
    for (const TrackFrame& tf : track.frames)
        if (tf.visible) truth[tf.frame_id] = &tf;

    std::map<std::int64_t, EvalImage> by_frame;
    for (const auto& [fid, tf] : truth)
        by_frame[fid].gts.push_back({tf->box.x_min * track.image_width,
                                     tf->box.y_min * track.image_height,
                                     tf->box.x_max * track.image_width,
                                     tf->box.y_max * track.image_height});
    for (const FrameRecord& rec : run.frame_records)
        for (const Detection& d : rec.detections)
            by_frame[rec.frame_id].dets.push_back(
                {{d.box.x_min * track.image_width, d.box.y_min * track.image_height,
                  d.box.x_max * track.image_width, d.box.y_max * track.image_height},
                 d.score,
                 d.class_id});
    std::vector<EvalImage> images;
    images.reserve(by_frame.size());
    for (auto& [fid, img] : by_frame) images.push_back(std::move(img));
    return coco_map(images);
}

struct CommonPipelineFlags {
    std::string config_path;
    std::string replay_path;
    std::string placement = "A";
    double score_thresh = -1.0;
    double nms_thresh = -1.0;
    std::string report_dir = "reports";
    bool emit_timing = false;
};

PipelineConfig resolve_pipeline_config(const CommonPipelineFlags& f, bool placement_given,
                                       bool score_given, bool nms_given) {
    PipelineConfig cfg;
    if (!f.config_path.empty()) cfg = load_pipeline_config(f.config_path);
    if (!f.replay_path.empty()) cfg.replay_path = f.replay_path;
    if (placement_given || f.config_path.empty())
        cfg.placement = placement_from_string(f.placement);
    if (score_given) cfg.score_threshold = f.score_thresh;
    if (nms_given) cfg.nms_threshold = f.nms_thresh;
    if (!f.report_dir.empty()) cfg.report_dir = f.report_dir;
    cfg.validate();
    return cfg;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"blind-spot cyclist detection pipeline and evaluation toolkit"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run the detection pipeline over a replay source");
    CommonPipelineFlags rf;
    run_cmd->add_option("--config", rf.config_path, "pipeline configuration file");
    run_cmd->add_option("--replay", rf.replay_path, "replay detections file");
    auto* r_place = run_cmd->add_option("--placement", rf.placement, "camera placement A|B|C");
    auto* r_score = run_cmd->add_option("--score-thresh", rf.score_thresh, "confidence threshold");
    auto* r_nms = run_cmd->add_option("--nms-thresh", rf.nms_thresh, "NMS IoU threshold");
    run_cmd->add_option("--report-dir", rf.report_dir, "report output directory");
    run_cmd->add_flag("--timing", rf.emit_timing, "also write wall-clock timing report");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "COCO-style mAP evaluation");
    std::string gt_dir, det_file, eval_report_dir = "reports";
    bool pr_curves = false;
    eval_cmd->add_option("--gt-dir", gt_dir, "VOC ground-truth directory")->required();
    eval_cmd->add_option("--det-file", det_file, "detections file")->required();
    eval_cmd->add_option("--report-dir", eval_report_dir, "report output directory");
    eval_cmd->add_flag("--pr-curves", pr_curves, "write per-threshold PR curve CSVs");

    // scenario
    auto* scen_cmd = app.add_subcommand("scenario", "closed-loop synthetic scenario run");
    CommonPipelineFlags sf;
    std::string scenario_cfg_path;
    double jitter_px = 0.0, drop_rate = 0.0;
    std::uint64_t scen_seed = 0;
    scen_cmd->add_option("--scenario-config", scenario_cfg_path, "scenario configuration file");
    scen_cmd->add_option("--config", sf.config_path, "pipeline configuration file");
    auto* s_place = scen_cmd->add_option("--placement", sf.placement, "camera placement A|B|C");
    auto* s_score = scen_cmd->add_option("--score-thresh", sf.score_thresh, "confidence threshold");
    auto* s_nms = scen_cmd->add_option("--nms-thresh", sf.nms_thresh, "NMS IoU threshold");
    scen_cmd->add_option("--jitter-px", jitter_px, "box jitter in pixels");
    scen_cmd->add_option("--drop-rate", drop_rate, "frame drop probability");
    scen_cmd->add_option("--seed", scen_seed, "noise seed");
    scen_cmd->add_option("--report-dir", sf.report_dir, "report output directory");
    scen_cmd->add_flag("--timing", sf.emit_timing, "also write wall-clock timing report");

    // summarize
    auto* sum_cmd = app.add_subcommand("summarize", "dataset statistics (heatmap + histogram)");
    std::string sum_voc_dir, sum_report_dir = "reports";
    int grid = 8;
    sum_cmd->add_option("--voc-dir", sum_voc_dir, "VOC annotation directory")->required();
    sum_cmd->add_option("--grid", grid, "heatmap grid size");
    sum_cmd->add_option("--report-dir", sum_report_dir, "report output directory");

    // augment
    auto* aug_cmd = app.add_subcommand("augment", "triple the dataset with augmented variants");
    std::string aug_voc_dir, aug_image_dir, aug_out_dir;
    std::uint64_t aug_seed = 0;
    aug_cmd->add_option("--voc-dir", aug_voc_dir, "VOC annotation directory")->required();
    aug_cmd->add_option("--image-dir", aug_image_dir, "image directory (.ppm/.png)")->required();
    aug_cmd->add_option("--out-dir", aug_out_dir, "output directory")->required();
    aug_cmd->add_option("--seed", aug_seed, "master augmentation seed");

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        const PipelineConfig cfg =
            resolve_pipeline_config(rf, r_place->count() > 0, r_score->count() > 0, r_nms->count() > 0);
        if (cfg.replay_path.empty()) throw ConfigError("run requires --replay or a config source");
        const RunSummary summary = run_pipeline(cfg);
        const std::string report = run_summary_report(summary);
        write_text(fs::path(cfg.report_dir) / "run_summary.txt", report);
        if (rf.emit_timing)
            write_text(fs::path(cfg.report_dir) / "timing.txt", timing_report_text(summary.timing));
        std::cout << report;
        return 0;
    }

    if (eval_cmd->parsed()) {
        const std::vector<ImageAnnotation> gts = load_voc_dir(gt_dir);
        const auto dets = load_detections_file(det_file);
        const MetricsBundle m = coco_map(build_eval_images(gts, dets));
        const std::string report = metrics_report(m);
        write_text(fs::path(eval_report_dir) / "metrics.txt", report);
        if (pr_curves) {
            for (const auto& [t, curve] : m.pr_curves) {
                std::ostringstream name;
                name.precision(2);
                name << std::fixed << "pr_curve_" << t << ".csv";
                write_text(fs::path(eval_report_dir) / name.str(), pr_curve_csv(curve));
            }
        }
        std::cout << report;
        return 0;
    }

    if (scen_cmd->parsed()) {
        ScenarioConfig scen_cfg;
        if (!scenario_cfg_path.empty()) scen_cfg = load_scenario_config(scenario_cfg_path);
        scen_cfg.validate();
        PipelineConfig cfg =
            resolve_pipeline_config(sf, s_place->count() > 0, s_score->count() > 0, s_nms->count() > 0);
        cfg.frame_rate_target = scen_cfg.frame_rate;
        cfg.validate();

        const SyntheticTrack track = generate_track(scen_cfg, cfg.placement);
        const std::string replay_text =
            export_replay(track, {jitter_px, drop_rate, 0.9, scen_seed});
        const fs::path report_dir(cfg.report_dir);
        write_text(report_dir / "scenario_replay.txt", replay_text);
        export_voc_ground_truth(track, (report_dir / "scenario_gt").string());

        ReplayBackend backend = parse_replay(replay_text, "scenario");
        const RunSummary summary =
            run_pipeline(cfg, backend, static_cast<std::int64_t>(track.frames.size()));
        const MetricsBundle m = evaluate_run_against_track(summary, track);

        const std::string report = run_summary_report(summary) + metrics_report(m);
        write_text(report_dir / "scenario_report.txt", report);
        if (sf.emit_timing)
            write_text(report_dir / "timing.txt", timing_report_text(summary.timing));
        std::cout << report;
        return 0;
    }

    if (sum_cmd->parsed()) {
        const std::vector<ImageAnnotation> items = load_voc_dir(sum_voc_dir);
        const DatasetSummary s = summarize(items, grid);
        const std::string report = summary_report(s);
        write_text(fs::path(sum_report_dir) / "dataset_summary.txt", report);
        std::cout << report;
        return 0;
    }

    if (aug_cmd->parsed()) {
        const std::vector<ImageAnnotation> items = load_voc_dir(aug_voc_dir);
        std::vector<Image> images;
        images.reserve(items.size());
        for (const ImageAnnotation& a : items) {
            const fs::path ppm = fs::path(aug_image_dir) / (a.image_id + ".ppm");
            const fs::path png = fs::path(aug_image_dir) / (a.image_id + ".png");
            if (fs::exists(ppm))
                images.push_back(read_image(ppm.string()));
            else if (fs::exists(png))
                images.push_back(read_image(png.string()));
            else
                throw ConfigError("no image found for annotation '" + a.image_id + "'");
        }
        const std::vector<AugmentedItem> expanded =
            triple_dataset(items, images, AugmentationParams{}, aug_seed);
        fs::create_directories(aug_out_dir);
        for (const AugmentedItem& item : expanded) {
            write_text(fs::path(aug_out_dir) / (item.annot.image_id + ".xml"),
                       serialize_voc(item.annot));
            write_ppm(item.image, (fs::path(aug_out_dir) / (item.annot.image_id + ".ppm")).string());
        }
        std::cout << "wrote " << expanded.size() << " items to " << aug_out_dir << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const BackendUnavailable& e) {
        std::cerr << "backend failure: " << e.what() << "\n";
        return 3;
    } catch (const MeasurementError& e) {
        std::cerr << "measurement failure: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
