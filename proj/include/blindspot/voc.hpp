#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blindspot/geometry.hpp"

namespace blindspot {

// Ground truth for one image. Boxes are pixel coordinates, already clipped
// to [0,width]x[0,height].
struct ImageAnnotation {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<BoundingBox> boxes;
    int skipped_count = 0;  // non-cyclist objects dropped during parsing

    bool operator==(const ImageAnnotation&) const = default;
};

struct DatasetSummary {
    std::size_t image_count = 0;
    std::size_t instance_count = 0;
    int grid = 0;
    std::vector<std::vector<std::size_t>> heatmap;  // grid x grid, row = y cell
    std::map<std::size_t, std::size_t> histogram;   // boxes-per-image -> image count
};

// Parses a Pascal VOC annotation document. Objects whose name is not
// "cyclist" are counted in skipped_count and their boxes dropped. Box
// coordinates are clipped to the image bounds. Throws ParseError with line
// context on malformed markup.
ImageAnnotation parse_voc(const std::string& xml_text);

// Emits a VOC annotation document; parse_voc(serialize_voc(a)) == a modulo
// skipped_count. Coordinates are written with full precision.
std::string serialize_voc(const ImageAnnotation& annot);

// Loads every .xml file in a directory, sorted by filename.
std::vector<ImageAnnotation> load_voc_dir(const std::string& dir);

// Deterministic shuffle-then-cut split. train size = round(fraction * N).
std::pair<std::vector<ImageAnnotation>, std::vector<ImageAnnotation>> split_dataset(
    const std::vector<ImageAnnotation>& items, double train_fraction, std::uint64_t seed);

// Bins box centers (normalized) into a grid x grid heatmap with half-open
// cells, and counts boxes-per-image into the histogram.
DatasetSummary summarize(const std::vector<ImageAnnotation>& items, int grid);

// Heatmap as a CSV grid and histogram as two-column CSV, concatenated into
// one diff-able text report.
std::string summary_report(const DatasetSummary& s);

}  // namespace blindspot
