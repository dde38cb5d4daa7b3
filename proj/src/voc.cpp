#include "blindspot/voc.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blindspot/errors.hpp"
#include "blindspot/rng.hpp"

namespace blindspot {

namespace {

int line_of(const std::string& text, std::size_t pos) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(pos, text.size())), '\n'));
}

[[noreturn]] void fail(const std::string& text, std::size_t pos, const std::string& what) {
    throw ParseError(what + " (line " + std::to_string(line_of(text, pos)) + ")");
}

struct Span {
    std::size_t begin = std::string::npos;  // start of inner text
    std::size_t end = std::string::npos;    // one past inner text
    bool found() const { return begin != std::string::npos; }
};

// Locates <tag ...>inner</tag> at or after `from`. Attributes tolerated.
Span find_element(const std::string& text, const std::string& tag, std::size_t from) {
    const std::string open = "<" + tag;
    std::size_t pos = from;
    while (true) {
        pos = text.find(open, pos);
        if (pos == std::string::npos) return {};
        const std::size_t after = pos + open.size();
        if (after < text.size() && (text[after] == '>' || std::isspace(static_cast<unsigned char>(text[after])))) {
            const std::size_t gt = text.find('>', after);
            if (gt == std::string::npos) fail(text, pos, "unterminated <" + tag + ">");
            const std::string close = "</" + tag + ">";
            const std::size_t end = text.find(close, gt + 1);
            if (end == std::string::npos) fail(text, pos, "missing </" + tag + ">");
            return {gt + 1, end};
        }
        pos = after;
    }
}

std::string trimmed(const std::string& text, Span s) {
    std::size_t b = s.begin, e = s.end;
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return text.substr(b, e - b);
}

double parse_number(const std::string& text, Span s, const std::string& what) {
    const std::string tok = trimmed(text, s);
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(text, s.begin, "bad numeric value for " + what + ": '" + tok + "'");
    }
}

double require_number(const std::string& text, const std::string& tag, std::size_t from,
                      std::size_t scope_end, const std::string& ctx) {
    const Span s = find_element(text, tag, from);
    if (!s.found() || s.begin > scope_end) fail(text, from, "missing <" + tag + "> in " + ctx);
    return parse_number(text, s, tag);
}

}  // namespace

ImageAnnotation parse_voc(const std::string& xml_text) {
    ImageAnnotation annot;

    const Span size = find_element(xml_text, "size", 0);
    if (!size.found()) throw ParseError("missing <size> element (line 1)");
    annot.width = static_cast<int>(require_number(xml_text, "width", size.begin, size.end, "size"));
    annot.height = static_cast<int>(require_number(xml_text, "height", size.begin, size.end, "size"));
    if (annot.width <= 0 || annot.height <= 0)
        fail(xml_text, size.begin, "non-positive image dimensions");

    const Span fname = find_element(xml_text, "filename", 0);
    if (fname.found()) {
        std::string id = trimmed(xml_text, fname);
        const std::size_t dot = id.find_last_of('.');
        if (dot != std::string::npos) id = id.substr(0, dot);
        annot.image_id = id;
    }

    std::size_t pos = 0;
    while (true) {
        const Span obj = find_element(xml_text, "object", pos);
        if (!obj.found()) break;
        const Span name = find_element(xml_text, "name", obj.begin);
        if (!name.found() || name.begin > obj.end) fail(xml_text, obj.begin, "object without <name>");
        if (trimmed(xml_text, name) != "cyclist") {
            ++annot.skipped_count;
        } else {
            const Span bb = find_element(xml_text, "bndbox", obj.begin);
            if (!bb.found() || bb.begin > obj.end) fail(xml_text, obj.begin, "object without <bndbox>");
            BoundingBox box;
            box.x_min = require_number(xml_text, "xmin", bb.begin, bb.end, "bndbox");
            box.y_min = require_number(xml_text, "ymin", bb.begin, bb.end, "bndbox");
            box.x_max = require_number(xml_text, "xmax", bb.begin, bb.end, "bndbox");
            box.y_max = require_number(xml_text, "ymax", bb.begin, bb.end, "bndbox");
            box.x_min = std::clamp(box.x_min, 0.0, static_cast<double>(annot.width));
            box.x_max = std::clamp(box.x_max, 0.0, static_cast<double>(annot.width));
            box.y_min = std::clamp(box.y_min, 0.0, static_cast<double>(annot.height));
            box.y_max = std::clamp(box.y_max, 0.0, static_cast<double>(annot.height));
            if (box.x_min > box.x_max) std::swap(box.x_min, box.x_max);
            if (box.y_min > box.y_max) std::swap(box.y_min, box.y_max);
            annot.boxes.push_back(box);
        }
        pos = obj.end;
    }
    return annot;
}

namespace {

std::string fmt_coord(double v) {
    std::ostringstream os;
    if (v == std::floor(v) && std::abs(v) < 1e9) {
        os << static_cast<long long>(v);
    } else {
        os.precision(17);
        os << v;
    }
    return os.str();
}

}  // namespace

std::string serialize_voc(const ImageAnnotation& annot) {
    std::ostringstream os;
    os << "<annotation>\n";
    os << "  <filename>" << annot.image_id << "</filename>\n";
    os << "  <size>\n    <width>" << annot.width << "</width>\n    <height>" << annot.height
       << "</height>\n    <depth>3</depth>\n  </size>\n";
    for (const BoundingBox& b : annot.boxes) {
        os << "  <object>\n    <name>cyclist</name>\n    <bndbox>\n"
           << "      <xmin>" << fmt_coord(b.x_min) << "</xmin>\n"
           << "      <ymin>" << fmt_coord(b.y_min) << "</ymin>\n"
           << "      <xmax>" << fmt_coord(b.x_max) << "</xmax>\n"
           << "      <ymax>" << fmt_coord(b.y_max) << "</ymax>\n"
           << "    </bndbox>\n  </object>\n";
    }
    os << "</annotation>\n";
    return os.str();
}

std::vector<ImageAnnotation> load_voc_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<ImageAnnotation> items;
    items.reserve(files.size());
    for (const fs::path& p : files) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            ImageAnnotation a = parse_voc(ss.str());
            if (a.image_id.empty()) a.image_id = p.stem().string();
            items.push_back(std::move(a));
        } catch (const ParseError& e) {
            throw ParseError(p.string() + ": " + e.what());
        }
    }
    return items;
}

std::pair<std::vector<ImageAnnotation>, std::vector<ImageAnnotation>> split_dataset(
    const std::vector<ImageAnnotation>& items, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train_fraction must be in (0,1)");
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.bounded(i)]);

    const std::size_t n_train =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(items.size())));
    std::pair<std::vector<ImageAnnotation>, std::vector<ImageAnnotation>> out;
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_train ? out.first : out.second).push_back(items[order[i]]);
    return out;
}

DatasetSummary summarize(const std::vector<ImageAnnotation>& items, int grid) {
    if (grid < 1) throw ConfigError("grid must be >= 1");
    DatasetSummary s;
    s.grid = grid;
    s.image_count = items.size();
    s.heatmap.assign(static_cast<std::size_t>(grid),
                     std::vector<std::size_t>(static_cast<std::size_t>(grid), 0));
    for (const ImageAnnotation& item : items) {
        s.instance_count += item.boxes.size();
        s.histogram[item.boxes.size()] += 1;
        for (const BoundingBox& b : item.boxes) {
            const double cx = 0.5 * (b.x_min + b.x_max) / item.width;
            const double cy = 0.5 * (b.y_min + b.y_max) / item.height;
            // half-open cells; centers at exactly 1.0 land in the last cell
            int ix = std::min(grid - 1, static_cast<int>(cx * grid));
            int iy = std::min(grid - 1, static_cast<int>(cy * grid));
            ix = std::max(0, ix);
            iy = std::max(0, iy);
            s.heatmap[static_cast<std::size_t>(iy)][static_cast<std::size_t>(ix)] += 1;
        }
    }
    return s;
}

std::string summary_report(const DatasetSummary& s) {
    std::ostringstream os;
    os << "image_count=" << s.image_count << "\n";
    os << "instance_count=" << s.instance_count << "\n";
    os << "heatmap_grid=" << s.grid << "\n";
    os << "# heatmap rows (y cell 0.." << s.grid - 1 << "), CSV\n";
    for (const auto& row : s.heatmap) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << row[i];
        }
        os << "\n";
    }
    os << "# histogram: boxes_per_image,image_count\n";
    for (const auto& [k, v] : s.histogram) os << k << "," << v << "\n";
    return os.str();
}

}  // namespace blindspot
