#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "swat/api.hpp"
#include "swat/errors.hpp"
#include "swat/ingestion.hpp"
#include "swat/service.hpp"
#include "swat/snapshot_io.hpp"

namespace py = pybind11;
using swat::api::Json;

namespace {

// Results cross the boundary as JSON text, decoded on the Python side.
std::string dump(const Json& j) { return j.dump(); }

struct Snapshot {
    swat::GraphSnapshot graph;
};

}  // namespace

PYBIND11_MODULE(_swat, m) {
    m.doc() = "Native bindings for the SWAT team-recommendation engine";

    auto base = py::register_exception<swat::Error>(m, "SwatError", PyExc_RuntimeError);
    py::register_exception<swat::UnknownArea>(m, "UnknownArea", base.ptr());
    py::register_exception<swat::UnknownIndividual>(m, "UnknownIndividual", base.ptr());
    py::register_exception<swat::InvalidParams>(m, "InvalidParams", base.ptr());
    py::register_exception<swat::CandidateExplosion>(m, "CandidateExplosion", base.ptr());
    py::register_exception<swat::IoError>(m, "IoError", base.ptr());
    py::register_exception<swat::FormatError>(m, "FormatError", base.ptr());

    py::class_<Snapshot>(m, "Snapshot")
        .def_property_readonly("individual_count", [](const Snapshot& s) { return s.graph.individuals().size(); })
        .def_property_readonly("area_count", [](const Snapshot& s) { return s.graph.areas().size(); })
        .def_property_readonly("area_ids",
                               [](const Snapshot& s) {
                                   std::vector<std::string> ids;
                                   for (const auto& a : s.graph.areas()) ids.push_back(a.id);
                                   return ids;
                               })
        .def("save", [](const Snapshot& s, const std::filesystem::path& p) { swat::save_snapshot(s.graph, p); })
        .def("stats_json", [](const Snapshot& s) { return dump(swat::api::stats(swat::compute_stats(s.graph))); })
        .def("suggest_json",
             [](const Snapshot& s, const std::string& q, int limit) { return dump(swat::api::suggest(s.graph, q, limit)); },
             py::arg("query"), py::arg("limit") = 10)
        .def("experts_json",
             [](const Snapshot& s, const std::string& area, int k, bool expand) {
                 return dump(swat::api::experts(s.graph, area, k, expand));
             },
             py::arg("area"), py::arg("k") = 20, py::arg("expand") = false)
        .def("related_json", [](const Snapshot& s, const std::string& area) { return dump(swat::api::related(s.graph, area)); })
        .def("ego_json",
             [](const Snapshot& s, const std::string& who, int radius) { return dump(swat::api::ego(s.graph, who, radius)); },
             py::arg("individual"), py::arg("radius") = 1)
        .def("recommend_json",
             [](const Snapshot& s, const std::string& body) {
                 auto req = swat::api::parse_recommend_request(Json::parse(body));
                 py::gil_scoped_release unlock;
                 return dump(swat::api::recommend(s.graph, req));
             })
        .def("score_json",
             [](const Snapshot& s, const std::string& body) {
                 return dump(swat::api::score(s.graph, swat::api::parse_score_request(Json::parse(body))));
             })
        .def("distance",
             [](const Snapshot& s, const std::string& a, const std::string& b,
                std::optional<std::vector<std::string>> dims) { return swat::shortest_social_distance(s.graph, a, b, dims); },
             py::arg("a"), py::arg("b"), py::arg("dimensions") = py::none());

    m.def("load", [](const std::filesystem::path& p) { return Snapshot{swat::load_snapshot(p)}; }, py::arg("path"));

    m.def("ingest",
          [](const std::filesystem::path& corpus) {
              auto result = swat::ingest_corpus(corpus);
              py::list anomalies;
              for (const auto& a : result.parse_anomalies.entries)
                  anomalies.append(py::make_tuple(a.where.str(), a.rule, std::string(swat::to_string(a.action))));
              return py::make_tuple(Snapshot{std::move(result.snapshot)}, anomalies, result.derived.entries.size());
          },
          py::arg("corpus"));

    m.def("synth",
          [](const std::filesystem::path& out, std::int64_t individuals, std::int64_t areas, std::int64_t publications,
             std::int64_t dimensions, std::uint64_t seed) {
              swat::write_corpus(swat::generate_synthetic({individuals, areas, publications, dimensions}, seed), out);
          },
          py::arg("out"), py::arg("individuals") = 200, py::arg("areas") = 20, py::arg("publications") = 600,
          py::arg("dimensions") = 2, py::arg("seed") = 1);
}
