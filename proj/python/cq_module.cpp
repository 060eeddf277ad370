// Python bindings: a thin layer over the library. Structured data crosses
// the boundary as the same JSON the CLI emits, so both interfaces stay
// byte-compatible.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cq/errors.hpp"
#include "cq/mutation.hpp"
#include "cq/quiver.hpp"
#include "cq/relations.hpp"
#include "cq/tilted.hpp"
#include "cq/triangulation.hpp"

namespace py = pybind11;
using namespace cq;

namespace {

QuiverFormat format_of(const std::string& name) {
    if (name == "text") return QuiverFormat::text;
    if (name == "json") return QuiverFormat::json;
    if (name == "dot") return QuiverFormat::dot;
    throw invalid_input("unknown format '" + name + "' (expected text|json|dot)");
}

Quiver quiver_from_text(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' ? quiver_from_json_text(text) : parse_quiver(text);
    }
    throw parse_error("empty quiver input");
}

AlgebraPresentation presentation_from_text(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' ? presentation_from_json_text(text) : parse_presentation(text);
    }
    throw parse_error("empty presentation input");
}

} // namespace

PYBIND11_MODULE(cqpy, m) {
    m.doc() = "cluster-tilted algebras of Dynkin type";

    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<indeterminate_error>(m, "IndeterminateError");
    py::register_exception<invalid_input>(m, "InvalidInput");

    py::class_<Quiver>(m, "Quiver")
        .def(py::init<int>(), py::arg("n_vertices") = 0)
        .def("add_vertex", &Quiver::add_vertex, py::arg("label") = "")
        .def("add_arrow", &Quiver::add_arrow, py::arg("name"), py::arg("source"),
             py::arg("target"))
        .def_property_readonly("num_vertices", &Quiver::num_vertices)
        .def_property_readonly("num_arrows", &Quiver::num_arrows)
        .def("is_acyclic", &Quiver::is_acyclic)
        .def("is_connected", &Quiver::is_connected)
        .def("__eq__", [](const Quiver& a, const Quiver& b) { return a == b; })
        .def("__repr__", [](const Quiver& q) {
            return "<Quiver " + std::to_string(q.num_vertices()) + " vertices, " +
                   std::to_string(q.num_arrows()) + " arrows>";
        });

    m.def("parse_quiver", &quiver_from_text, py::arg("text"),
          "Parse a quiver from the text or JSON format.");
    m.def(
        "serialize_quiver",
        [](const Quiver& q, const std::string& fmt) {
            return serialize_quiver(q, format_of(fmt));
        },
        py::arg("quiver"), py::arg("format") = "json");

    m.def("mutate", &mutate, py::arg("quiver"), py::arg("vertex"),
          "Mutation at a vertex (0-based id).");
    m.def(
        "mutation_class_size",
        [](const Quiver& q, long long max_members, long long max_entry) {
            MutationClassOptions opts;
            opts.max_members = max_members;
            opts.max_entry = max_entry;
            MutationClass c = mutation_class(q, opts);
            return py::make_tuple(c.members.size(), c.truncated);
        },
        py::arg("quiver"), py::arg("max_members") = 100000, py::arg("max_entry") = 12,
        "Number of members found and whether a cap truncated the search.");
    m.def(
        "dynkin_type",
        [](const Quiver& q) -> std::optional<std::string> {
            auto t = dynkin_type_of(q);
            if (!t) return std::nullopt;
            return t->to_string();
        },
        py::arg("quiver"), "Dynkin type string (e.g. 'A3'), or None.");
    m.def("canonical_key", &canonical_key, py::arg("quiver"),
          "Isomorphism key: equal keys iff isomorphic quivers.");
    m.def("is_double_path_avoiding", &is_double_path_avoiding, py::arg("quiver"),
          py::arg("max_states") = 100000);

    m.def(
        "synthesize_relations",
        [](const Quiver& q) {
            AlgebraPresentation p = synthesize_relations(q);
            nilpotency_bound(p);
            return serialize_presentation(p, QuiverFormat::json);
        },
        py::arg("quiver"),
        "Relations of a cluster-tilted quiver, as presentation JSON.");

    m.def(
        "cluster_tilt",
        [](const std::string& text, int nilpotency_cap) {
            return serialize_cluster_tilt(
                cluster_tilt(presentation_from_text(text), nilpotency_cap),
                QuiverFormat::json);
        },
        py::arg("presentation"), py::arg("nilpotency_cap") = 24,
        "Build the cluster-tilted presentation from a tilted one; returns JSON.");
    m.def(
        "cluster_tilt_canonical",
        [](const std::string& text, int nilpotency_cap) {
            return serialize_cluster_tilt_canonical(
                cluster_tilt(presentation_from_text(text), nilpotency_cap));
        },
        py::arg("presentation"), py::arg("nilpotency_cap") = 24,
        "Same construction, canonically relabeled JSON (the golden format).");

    m.def(
        "triangulation_count",
        [](int m_gon) {
            return static_cast<long long>(enumerate_triangulations(m_gon).size());
        },
        py::arg("m_gon"));
}
