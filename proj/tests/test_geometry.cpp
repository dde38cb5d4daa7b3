#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blindspot/geometry.hpp"
#include "blindspot/rng.hpp"
#include "oracles.hpp"

using namespace blindspot;

namespace {

// random box with coordinates that are multiples of `step` in [0, span]
BoundingBox random_box(Rng& rng, double span, double step) {
    const auto steps = static_cast<std::uint64_t>(span / step);
    double a = static_cast<double>(rng.bounded(steps + 1)) * step;
    double b = static_cast<double>(rng.bounded(steps + 1)) * step;
    double c = static_cast<double>(rng.bounded(steps + 1)) * step;
    double d = static_cast<double>(rng.bounded(steps + 1)) * step;
    return {std::min(a, b), std::min(c, d), std::max(a, b), std::max(c, d)};
}

}  // namespace

TEST_CASE("iou identity, disjoint and hand-computed overlap") {
    const BoundingBox unit{0, 0, 10, 10};
    CHECK(iou(unit, unit) == doctest::Approx(1.0));
    CHECK(iou(unit, {20, 20, 30, 30}) == 0.0);
    // intersection 5x5=25, union 100+100-25=175
    CHECK(iou(unit, {5, 5, 15, 15}) == doctest::Approx(25.0 / 175.0));
    CHECK(oracles::raster_iou(unit, {5, 5, 15, 15}, 0.5) == doctest::Approx(25.0 / 175.0));
}

TEST_CASE("iou degenerate boxes") {
    const BoundingBox degenerate{3, 3, 3, 3};
    CHECK(iou(degenerate, degenerate) == 0.0);  // zero-union rule
    CHECK(iou(degenerate, {0, 0, 10, 10}) == 0.0);
}

TEST_CASE("iou properties: symmetry, range, self, translation/scale invariance") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const BoundingBox a = random_box(rng, 32.0, 0.5);
        const BoundingBox b = random_box(rng, 32.0, 0.5);
        const double v = iou(a, b);
        CHECK(v == iou(b, a));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        if (a.area() > 0) CHECK(iou(a, a) == doctest::Approx(1.0));

        const double tx = rng.uniform(-50, 50), ty = rng.uniform(-50, 50);
        const double s = rng.uniform(0.1, 10.0);
        const BoundingBox at{a.x_min * s + tx, a.y_min * s + ty, a.x_max * s + tx, a.y_max * s + ty};
        const BoundingBox bt{b.x_min * s + tx, b.y_min * s + ty, b.x_max * s + tx, b.y_max * s + ty};
        CHECK(iou(at, bt) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("iou matches grid-aligned rasterization oracle") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const BoundingBox a = random_box(rng, 16.0, 0.5);
        const BoundingBox b = random_box(rng, 16.0, 0.5);
        CHECK(iou(a, b) == doctest::Approx(oracles::raster_iou(a, b, 0.25)).epsilon(1e-9));
    }
}

TEST_CASE("nms basics") {
    CHECK(nms({}, 0.5).empty());

    const std::vector<Detection> pair = {{{0, 0, 10, 10}, 0.9, 0}, {{1, 1, 11, 11}, 0.8, 0}};
    CHECK(iou(pair[0].box, pair[1].box) == doctest::Approx(81.0 / 119.0));
    const auto kept = nms(pair, 0.5);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].score == 0.9);

    const std::vector<Detection> disjoint = {{{0, 0, 10, 10}, 0.9, 0}, {{50, 50, 60, 60}, 0.8, 0}};
    CHECK(nms(disjoint, 0.5).size() == 2);
}

TEST_CASE("nms tie-break is stable by input index") {
    const std::vector<Detection> ties = {{{0, 0, 10, 10}, 0.5, 0}, {{1, 1, 11, 11}, 0.5, 0}};
    const auto kept = nms(ties, 0.5);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].box == ties[0].box);
}

TEST_CASE("nms properties and brute-force equivalence") {
    Rng rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Detection> dets;
        const std::size_t n = rng.bounded(9);
        for (std::size_t i = 0; i < n; ++i)
            dets.push_back({random_box(rng, 20.0, 0.5), rng.uniform(0.0, 1.0), 0});
        const double thr = rng.uniform(0.05, 1.0);
        const auto kept = nms(dets, thr);
        const auto ref = oracles::brute_nms(dets, thr);
        CHECK(kept == ref);

        // subset of input
        for (const Detection& k : kept)
            CHECK(std::find(dets.begin(), dets.end(), k) != dets.end());
        // no kept pair overlaps at or above threshold
        for (std::size_t i = 0; i < kept.size(); ++i)
            for (std::size_t j = i + 1; j < kept.size(); ++j)
                CHECK(iou(kept[i].box, kept[j].box) < thr);
        // the top-scoring input always survives
        if (!dets.empty()) {
            const auto top = std::max_element(dets.begin(), dets.end(),
                                              [](const Detection& a, const Detection& b) {
                                                  return a.score < b.score;
                                              });
            CHECK(std::find(kept.begin(), kept.end(), *top) != kept.end());
        }
    }
}

TEST_CASE("filter_by_score") {
    const std::vector<Detection> dets = {{{0, 0, 1, 1}, 0.9, 0}, {{0, 0, 1, 1}, 0.3, 0}};
    CHECK(filter_by_score(dets, 0.5).size() == 1);
    CHECK(filter_by_score(dets, 0.0) == dets);  // zero threshold is identity
    const std::vector<Detection> boundary = {{{0, 0, 1, 1}, 0.5, 0}};
    CHECK(filter_by_score(boundary, 0.5) == boundary);  // inclusive boundary
}
