#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blindspot/evaluation.hpp"
#include "blindspot/rng.hpp"
#include "oracles.hpp"

using namespace blindspot;

namespace {

BoundingBox random_box(Rng& rng, double span) {
    const double x0 = rng.uniform(0, span), x1 = rng.uniform(0, span);
    const double y0 = rng.uniform(0, span), y1 = rng.uniform(0, span);
    return {std::min(x0, x1), std::min(y0, y1), std::max(x0, x1) + 1.0, std::max(y0, y1) + 1.0};
}

std::vector<EvalImage> random_dataset(Rng& rng, std::size_t max_images, std::size_t max_dets,
                                      std::size_t max_gts) {
    std::vector<EvalImage> images(1 + rng.bounded(max_images));
    for (EvalImage& img : images) {
        const std::size_t ng = rng.bounded(max_gts + 1);
        for (std::size_t g = 0; g < ng; ++g) img.gts.push_back(random_box(rng, 40));
        const std::size_t nd = rng.bounded(max_dets + 1);
        for (std::size_t d = 0; d < nd; ++d) {
            // bias detections toward ground truth so matches actually happen
            if (!img.gts.empty() && rng.bernoulli(0.6)) {
                const BoundingBox& gt = img.gts[rng.bounded(img.gts.size())];
                const double jx = rng.uniform(-3, 3), jy = rng.uniform(-3, 3);
                img.dets.push_back({{gt.x_min + jx, gt.y_min + jy, gt.x_max + jx, gt.y_max + jy},
                                    rng.uniform(0.05, 1.0),
                                    0});
            } else {
                img.dets.push_back({random_box(rng, 40), rng.uniform(0.05, 1.0), 0});
            }
        }
    }
    return images;
}

}  // namespace

TEST_CASE("match_detections identity and one-match-per-gt") {
    const BoundingBox gt{0, 0, 10, 10};
    const MatchResult exact = match_detections({{gt, 0.9, 0}}, {gt}, 0.5);
    CHECK(exact.tp_count() == 1);
    CHECK(exact.false_negatives == 0);

    const MatchResult dup =
        match_detections({{gt, 0.9, 0}, {{1, 1, 11, 11}, 0.8, 0}}, {gt}, 0.5);
    REQUIRE(dup.tp_flags.size() == 2);
    CHECK(dup.tp_flags[0]);
    CHECK_FALSE(dup.tp_flags[1]);
    CHECK(dup.false_negatives == 0);
}

TEST_CASE("match invariants: TP <= gt count, TP+FP = det count") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        EvalImage img = random_dataset(rng, 1, 6, 4)[0];
        const MatchResult r = match_detections(img.dets, img.gts, 0.5);
        CHECK(r.tp_flags.size() == img.dets.size());
        CHECK(r.tp_count() <= img.gts.size());
        CHECK(r.tp_count() + r.false_negatives == img.gts.size());
    }
}

TEST_CASE("pr_curve hand-enumerated cases") {
    const auto perfect = pr_curve({true}, 1);
    REQUIRE(perfect.size() == 1);
    CHECK(perfect[0].recall == 1.0);
    CHECK(perfect[0].precision == 1.0);

    const auto tp_fp = pr_curve({true, false}, 1);
    REQUIRE(tp_fp.size() == 2);
    CHECK(tp_fp[0].recall == 1.0);
    CHECK(tp_fp[0].precision == 1.0);  // envelope lifts the first point
    CHECK(tp_fp[1].recall == 1.0);
    CHECK(tp_fp[1].precision == 0.5);
    CHECK(average_precision(tp_fp) == doctest::Approx(1.0));

    CHECK(average_precision(pr_curve({false}, 1)) == 0.0);
    CHECK(average_precision({}) == 0.0);
}

TEST_CASE("coco_map perfect predictions") {
    std::vector<EvalImage> images(3);
    Rng rng(17);
    for (EvalImage& img : images) {
        for (int i = 0; i < 3; ++i) {
            const BoundingBox b = random_box(rng, 50);
            img.gts.push_back(b);
            img.dets.push_back({b, 1.0, 0});
        }
    }
    const MetricsBundle m = coco_map(images);
    CHECK(m.map_coco == doctest::Approx(1.0));
    CHECK(m.ap50 == doctest::Approx(1.0));
    CHECK_FALSE(m.empty_dataset);
}

TEST_CASE("coco_map IoU-0.6 fixture gives exactly 0.3") {
    // det [0,2.5,10,12.5] vs gt [0,0,10,10]: intersection 75, union 125
    EvalImage img;
    img.gts.push_back({0, 0, 10, 10});
    img.dets.push_back({{0, 2.5, 10, 12.5}, 0.9, 0});
    CHECK(iou(img.dets[0].box, img.gts[0]) == 0.6);
    const MetricsBundle m = coco_map({img});
    CHECK(std::abs(m.map_coco - 0.3) < 1e-9);
    CHECK(m.ap50 == doctest::Approx(1.0));
    CHECK(m.ap75 == 0.0);
}

TEST_CASE("coco_map empty dataset") {
    const MetricsBundle m = coco_map({});
    CHECK(m.empty_dataset);
    CHECK(m.map_coco == 0.0);
}

TEST_CASE("coco_map equals the brute-force evaluator on random micro-datasets") {
    Rng rng(41);
    for (int trial = 0; trial < 250; ++trial) {
        const std::vector<EvalImage> images = random_dataset(rng, 5, 6, 4);
        std::vector<oracles::BruteEvalImage> ref;
        for (const EvalImage& img : images) ref.push_back({img.dets, img.gts});
        const MetricsBundle m = coco_map(images);
        CHECK(std::abs(m.map_coco - oracles::brute_map_coco(ref)) < 1e-9);
        CHECK(std::abs(m.ap50 - oracles::brute_ap_at(ref, 0.50)) < 1e-9);
        CHECK(std::abs(m.ap75 - oracles::brute_ap_at(ref, 0.75)) < 1e-9);
    }
}

TEST_CASE("AP invariances and monotonicity") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<EvalImage> images = random_dataset(rng, 3, 5, 3);
        const MetricsBundle base = coco_map(images);

        // positive monotone score transform: only rank matters
        std::vector<EvalImage> scaled = images;
        for (EvalImage& img : scaled)
            for (Detection& d : img.dets) d.score = d.score * 0.5 + 0.01;
        const MetricsBundle after = coco_map(scaled);
        CHECK(after.map_coco == doctest::Approx(base.map_coco).epsilon(1e-12));

        // lowest-score false positive never increases AP
        std::vector<EvalImage> with_fp = images;
        with_fp[0].dets.push_back({{1000, 1000, 1001, 1001}, 0.001, 0});
        const MetricsBundle worse = coco_map(with_fp);
        CHECK(worse.map_coco <= base.map_coco + 1e-12);

        // matching only gets stricter as the threshold rises
        CHECK(base.map_coco <= base.ap50 + 1e-12);

        // determinism
        const MetricsBundle again = coco_map(images);
        CHECK(again.map_coco == base.map_coco);
        CHECK(again.ap_per_threshold == base.ap_per_threshold);
    }
}

TEST_CASE("duplicate detections of one gt produce exactly one TP") {
    const BoundingBox gt{0, 0, 10, 10};
    std::vector<Detection> dets;
    for (int i = 0; i < 5; ++i) dets.push_back({gt, 0.9 - 0.1 * i, 0});
    const MatchResult r = match_detections(dets, {gt}, 0.5);
    CHECK(r.tp_count() == 1);
}
