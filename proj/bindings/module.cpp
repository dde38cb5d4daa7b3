#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blindspot/alert.hpp"
#include "blindspot/evaluation.hpp"
#include "blindspot/geometry.hpp"
#include "blindspot/scenario.hpp"
#include "blindspot/voc.hpp"

namespace py = pybind11;
using namespace blindspot;

PYBIND11_MODULE(_blindspot, m) {
    m.doc() = "blind-spot cyclist detection pipeline core";

    py::class_<BoundingBox>(m, "BoundingBox")
        .def(py::init<>())
        .def(py::init([](double x0, double y0, double x1, double y1) {
                 return BoundingBox{x0, y0, x1, y1};
             }),
             py::arg("x_min"), py::arg("y_min"), py::arg("x_max"), py::arg("y_max"))
        .def_readwrite("x_min", &BoundingBox::x_min)
        .def_readwrite("y_min", &BoundingBox::y_min)
        .def_readwrite("x_max", &BoundingBox::x_max)
        .def_readwrite("y_max", &BoundingBox::y_max)
        .def("area", &BoundingBox::area)
        .def("__repr__", [](const BoundingBox& b) {
            return "BoundingBox(" + std::to_string(b.x_min) + ", " + std::to_string(b.y_min) +
                   ", " + std::to_string(b.x_max) + ", " + std::to_string(b.y_max) + ")";
        });

    py::class_<Detection>(m, "Detection")
        .def(py::init<>())
        .def(py::init([](const BoundingBox& box, double score, int class_id) {
                 return Detection{box, score, class_id};
             }),
             py::arg("box"), py::arg("score"), py::arg("class_id") = 0)
        .def_readwrite("box", &Detection::box)
        .def_readwrite("score", &Detection::score)
        .def_readwrite("class_id", &Detection::class_id);

    m.def("iou", &iou, py::arg("a"), py::arg("b"));
    m.def("nms", &nms, py::arg("detections"), py::arg("iou_threshold"));
    m.def("filter_by_score", &filter_by_score, py::arg("detections"), py::arg("min_score"));

    py::class_<ImageAnnotation>(m, "ImageAnnotation")
        .def(py::init<>())
        .def_readwrite("image_id", &ImageAnnotation::image_id)
        .def_readwrite("width", &ImageAnnotation::width)
        .def_readwrite("height", &ImageAnnotation::height)
        .def_readwrite("boxes", &ImageAnnotation::boxes)
        .def_readwrite("skipped_count", &ImageAnnotation::skipped_count);

    m.def("parse_voc", &parse_voc, py::arg("xml_text"));
    m.def("serialize_voc", &serialize_voc, py::arg("annotation"));

    py::class_<EvalImage>(m, "EvalImage")
        .def(py::init<>())
        .def_readwrite("dets", &EvalImage::dets)
        .def_readwrite("gts", &EvalImage::gts);

    py::class_<MetricsBundle>(m, "MetricsBundle")
        .def_readonly("map_coco", &MetricsBundle::map_coco)
        .def_readonly("ap50", &MetricsBundle::ap50)
        .def_readonly("ap75", &MetricsBundle::ap75)
        .def_readonly("ap_per_threshold", &MetricsBundle::ap_per_threshold)
        .def_readonly("empty_dataset", &MetricsBundle::empty_dataset);

    m.def("coco_map", &coco_map, py::arg("per_image"));

    py::enum_<Placement>(m, "Placement")
        .value("A_front_mirror", Placement::A_front_mirror)
        .value("B_above", Placement::B_above)
        .value("C_rear", Placement::C_rear);

    py::class_<Point2>(m, "Point2")
        .def(py::init([](double x, double y) { return Point2{x, y}; }), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Point2::x)
        .def_readwrite("y", &Point2::y);

    py::class_<Zone>(m, "Zone")
        .def(py::init<>())
        .def_readwrite("polygon", &Zone::polygon)
        .def_readwrite("placement_tag", &Zone::placement_tag)
        .def("validate", &Zone::validate);

    m.def("in_zone", &in_zone, py::arg("detection"), py::arg("zone"));
    m.def("zone_for_placement", py::overload_cast<Placement>(&zone_for_placement), py::arg("tag"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("truck_length_ft", &ScenarioConfig::truck_length_ft)
        .def_readwrite("truck_height_ft", &ScenarioConfig::truck_height_ft)
        .def_readwrite("cyclist_speed_fps", &ScenarioConfig::cyclist_speed_fps)
        .def_readwrite("cyclist_lateral_offset_ft", &ScenarioConfig::cyclist_lateral_offset_ft)
        .def_readwrite("frame_rate", &ScenarioConfig::frame_rate)
        .def_readwrite("duration_s", &ScenarioConfig::duration_s)
        .def_readwrite("image_width", &ScenarioConfig::image_width)
        .def_readwrite("image_height", &ScenarioConfig::image_height);

    py::class_<TrackFrame>(m, "TrackFrame")
        .def_readonly("frame_id", &TrackFrame::frame_id)
        .def_readonly("visible", &TrackFrame::visible)
        .def_readonly("box", &TrackFrame::box);

    py::class_<SyntheticTrack>(m, "SyntheticTrack")
        .def_readonly("frames", &SyntheticTrack::frames)
        .def_readonly("image_width", &SyntheticTrack::image_width)
        .def_readonly("image_height", &SyntheticTrack::image_height);

    m.def("generate_track", &generate_track, py::arg("config"), py::arg("placement"));
}
