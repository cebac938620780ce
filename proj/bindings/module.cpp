// Python surface of the engine: datasets, flows, relocation, separability,
// and the embedded reference networks. Pipelines cross the boundary as JSON
// strings so a relocation computed here replays bit-for-bit in the CLI and
// vice versa.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "untangle/csvio.hpp"
#include "untangle/datasets.hpp"
#include "untangle/fixtures.hpp"
#include "untangle/flows.hpp"
#include "untangle/geometry.hpp"
#include "untangle/network.hpp"
#include "untangle/relocate.hpp"
#include "untangle/separability.hpp"
#include "untangle/svg.hpp"
#include "untangle/transport.hpp"

namespace py = pybind11;
using namespace untangle;

PYBIND11_MODULE(_untangle, m) {
    m.doc() = "compactly supported diffeomorphisms that relocate labeled point sets "
              "into prescribed balls, with hard-margin separability certificates";

    py::class_<Ball>(m, "Ball")
        .def(py::init<Vec, double>(), py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Ball::center)
        .def_readonly("radius", &Ball::radius)
        .def("__repr__", [](const Ball& b) {
            return "Ball(dim=" + std::to_string(b.dim()) +
                   ", radius=" + format_double(b.radius) + ")";
        });

    py::class_<PointCloud>(m, "PointCloud")
        .def(py::init<std::vector<Vec>, double>(), py::arg("points"),
             py::arg("guard") = 0.0)
        .def_readwrite("points", &PointCloud::points)
        .def_readwrite("guard", &PointCloud::guard)
        .def("__len__", &PointCloud::size)
        .def("__repr__", [](const PointCloud& c) {
            return "PointCloud(n=" + std::to_string(c.size()) +
                   ", dim=" + std::to_string(c.dim()) + ")";
        });

    py::class_<LabeledClass>(m, "LabeledClass")
        .def(py::init([](int label, PointCloud cloud) {
                 return LabeledClass{label, std::move(cloud), std::nullopt};
             }),
             py::arg("label"), py::arg("cloud"))
        .def_readwrite("label", &LabeledClass::label)
        .def_readwrite("cloud", &LabeledClass::cloud);

    py::class_<LabeledDataset>(m, "LabeledDataset")
        .def(py::init<>())
        .def_readwrite("classes", &LabeledDataset::classes)
        .def("dim", &LabeledDataset::dim)
        .def("validate", &LabeledDataset::validate);

    m.def("ball_contains_cloud", &ball_contains_cloud, py::arg("ball"), py::arg("cloud"),
          py::arg("slack") = 0.0);
    m.def("balls_disjoint", &balls_disjoint);
    m.def("dist_set_set", &dist_set_set);

    // Flows and pipelines. JSON round-trips exactly (shortest-round-trip
    // doubles), so a serialized pipeline replays the same bits anywhere.
    py::class_<FlowMap>(m, "FlowMap")
        .def_readonly("time", &FlowMap::time)
        .def_readonly("step_count", &FlowMap::stepCount)
        .def("apply", [](const FlowMap& f, Vec x) { return flow_apply(f, std::move(x)); })
        .def("invert", [](const FlowMap& f, Vec y) { return flow_invert(f, std::move(y)); });

    m.def("make_compression",
          py::overload_cast<Vec, double, double, double>(&make_compression),
          py::arg("center"), py::arg("r"), py::arg("delta"), py::arg("theta"));
    m.def("make_compression", py::overload_cast<Vec, double, double>(&make_compression),
          py::arg("center"), py::arg("r"), py::arg("delta"));
    m.def("make_translation", &make_translation, py::arg("anchor"), py::arg("r"),
          py::arg("p"), py::arg("q"));

    py::class_<DiffeoPipeline>(m, "DiffeoPipeline")
        .def_readonly("dimension", &DiffeoPipeline::dimension)
        .def("__len__", [](const DiffeoPipeline& p) { return p.stages.size(); })
        .def("apply", [](const DiffeoPipeline& p, Vec x) {
            return pipeline_apply_point(p, std::move(x));
        })
        .def("invert", [](const DiffeoPipeline& p, Vec y) {
            return pipeline_invert_point(p, std::move(y));
        })
        .def("apply_cloud", [](const DiffeoPipeline& p, const PointCloud& c) {
            return pipeline_apply(p, c);
        })
        .def("invert_cloud", [](const DiffeoPipeline& p, const PointCloud& c) {
            return pipeline_invert(p, c);
        })
        .def("to_json", [](const DiffeoPipeline& p) { return pipeline_to_json(p).dump(); })
        .def_static("from_json", [](const std::string& s) {
            return pipeline_from_json(nlohmann::json::parse(s));
        });

    py::class_<Path>(m, "Path").def(py::init<std::vector<Vec>>(), py::arg("waypoints"));
    m.def("plan_path",
          py::overload_cast<const Vec&, const Vec&, const PointCloud&, double>(&plan_path),
          py::arg("p"), py::arg("q"), py::arg("obstacles"), py::arg("clearance"));
    m.def("plan_path",
          py::overload_cast<const Vec&, const Vec&, const std::vector<Ball>&, double>(&plan_path),
          py::arg("p"), py::arg("q"), py::arg("obstacles"), py::arg("clearance"));

    py::class_<TransportResult>(m, "TransportResult")
        .def_readonly("delta1", &TransportResult::delta1)
        .def_readonly("pipeline", &TransportResult::pipeline);
    m.def("make_transport",
          py::overload_cast<const Vec&, const Vec&, const Path&, const PointCloud&,
                            double>(&make_transport),
          py::arg("p"), py::arg("q"), py::arg("path"), py::arg("obstacles"),
          py::arg("delta2"));

    // Relocation.
    py::class_<RelocationSet>(m, "RelocationSet")
        .def(py::init([](PointCloud cloud, Ball source, std::vector<Vec> waypoints) {
                 return RelocationSet{std::move(cloud), std::move(source),
                                      std::move(waypoints)};
             }),
             py::arg("cloud"), py::arg("source"),
             py::arg("waypoints") = std::vector<Vec>{})
        .def_readwrite("cloud", &RelocationSet::cloud)
        .def_readwrite("source", &RelocationSet::source);

    py::class_<RelocationProblem>(m, "RelocationProblem")
        .def(py::init([](std::vector<RelocationSet> sets, std::vector<Ball> targets) {
                 return RelocationProblem{std::move(sets), std::move(targets)};
             }),
             py::arg("sets"), py::arg("targets"));

    py::class_<RelocationResult>(m, "RelocationResult")
        .def_readonly("pipeline", &RelocationResult::pipeline)
        .def_readonly("images", &RelocationResult::images);
    m.def("relocate_disjoint", &relocate_disjoint, py::arg("problem"));

    m.def("layout_targets", &layout_targets, py::arg("l"), py::arg("sources"),
          py::arg("radius"));
    m.def("assign_label_subtargets", &assign_label_subtargets, py::arg("dataset"),
          py::arg("label_balls"));

    py::class_<LiftRelocateResult>(m, "LiftRelocateResult")
        .def_readonly("pipeline", &LiftRelocateResult::pipeline)
        .def_readonly("images", &LiftRelocateResult::images);
    m.def("lift_relocate_project", &lift_relocate_project, py::arg("dataset"),
          py::arg("final_targets"), py::arg("lift_gap") = 0.0);

    // Separability.
    py::class_<Hyperplane>(m, "Hyperplane")
        .def_readonly("normal", &Hyperplane::normal)
        .def_readonly("offset", &Hyperplane::offset);
    py::class_<PairCertificate>(m, "PairCertificate")
        .def_readonly("label_a", &PairCertificate::labelA)
        .def_readonly("label_b", &PairCertificate::labelB)
        .def_readonly("separable", &PairCertificate::separable)
        .def_readonly("plane", &PairCertificate::plane)
        .def_readonly("margin", &PairCertificate::margin);
    py::class_<SeparabilityCertificate>(m, "SeparabilityCertificate")
        .def_readonly("all_separable", &SeparabilityCertificate::allSeparable)
        .def_readonly("pairs", &SeparabilityCertificate::pairs)
        .def("to_json", [](const SeparabilityCertificate& c) {
            return certificate_to_json(c).dump();
        });
    m.def("hulls_intersect", &hulls_intersect);
    m.def("separate_pair", &separate_pair);
    m.def("margin_of", &margin_of);
    m.def("certify_pairwise", &certify_pairwise);

    // Networks.
    py::class_<Network>(m, "Network")
        .def("input_dim", &Network::input_dim)
        .def("output_dim", &Network::output_dim)
        .def("eval", [](const Network& n, const Vec& x) { return network_eval(n, x); })
        .def("eval_cloud", [](const Network& n, const PointCloud& c) {
            return network_eval(n, c);
        })
        .def("to_json", [](const Network& n) { return network_to_json(n).dump(); })
        .def_static("from_json", [](const std::string& s) {
            return network_from_json(nlohmann::json::parse(s));
        });
    m.def("toy_network", &toy_network);
    m.def("hopf_network", &hopf_network);

    // Datasets and IO.
    m.def("sample_ball_cloud", &sample_ball_cloud, py::arg("ball"), py::arg("count"),
          py::arg("seed"), py::arg("surface_only") = false);
    m.def("gen_toy_abc", &gen_toy_abc, py::arg("count_per_class"), py::arg("seed"));
    m.def("gen_hopf_link", &gen_hopf_link, py::arg("count_per_circle"));

    py::class_<SwissRoll>(m, "SwissRoll")
        .def_readonly("cloud", &SwissRoll::cloud)
        .def_readonly("params", &SwissRoll::params);
    m.def("gen_swiss_roll", &gen_swiss_roll, py::arg("t0"), py::arg("t1"),
          py::arg("s_grid"), py::arg("t_grid"));
    m.def("unroll_swiss", &unroll_swiss, py::arg("point"));
    m.def("linking_number", &linking_number, py::arg("loop1"), py::arg("loop2"));

    m.def("read_labeled_csv", &read_labeled_csv, py::arg("path"));
    m.def("write_labeled_csv", &write_labeled_csv, py::arg("dataset"), py::arg("path"));
    m.def("export_svg", &export_svg, py::arg("dataset"), py::arg("path"));
}
