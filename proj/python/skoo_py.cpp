// Python bindings for the SKOO toolkit. Ontologies cross the boundary as an
// opaque value type; reports come back as JSON text and are decoded on the
// Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skoo/app.hpp"
#include "skoo/error.hpp"
#include "skoo/model.hpp"
#include "skoo/reasoner.hpp"
#include "skoo/schema.hpp"
#include "skoo/transform.hpp"
#include "skoo/turtle.hpp"
#include "skoo/visual.hpp"

namespace py = pybind11;

namespace {

using Triple = std::tuple<std::string, std::string, std::string>;

std::vector<Triple> axiom_triples(const std::set<skoo::Axiom>& axioms) {
    std::vector<Triple> out;
    out.reserve(axioms.size());
    for (const auto& ax : axioms) {
        out.emplace_back(ax.subject().str(), std::string(skoo::to_string(ax.kind())), ax.object().str());
    }
    return out;
}

std::vector<Triple> assertion_triples(const skoo::Ontology& o) {
    std::vector<Triple> out;
    for (const auto& a : o.abox) {
        std::string object = a.object_iri() ? a.object_iri()->str() : std::get<skoo::Literal>(a.object()).lexical;
        out.emplace_back(a.subject().str(), a.predicate().str(), std::move(object));
    }
    return out;
}

skoo::AxiomKind axiom_kind(const std::string& name) {
    for (auto k : {skoo::AxiomKind::SubClassOf, skoo::AxiomKind::EquivalentClass, skoo::AxiomKind::DisjointWith,
                   skoo::AxiomKind::Domain, skoo::AxiomKind::Range}) {
        if (skoo::to_string(k) == name) {
            return k;
        }
    }
    throw skoo::AxiomKindError("unknown axiom kind '" + name + "'");
}

skoo::OutputFormat output_format(const std::string& name) {
    if (name == "json") {
        return skoo::OutputFormat::Json;
    }
    if (name == "dot") {
        return skoo::OutputFormat::Dot;
    }
    throw py::value_error("format must be 'json' or 'dot'");
}

std::string visualize(const skoo::Ontology& graph, const std::optional<std::string>& rules, const std::string& format) {
    auto fmt = output_format(format);
    const auto& bundle = skoo::SchemaBundle::embedded();
    skoo::Ontology merged = skoo::merge(bundle.merged({}, false), graph);
    auto closure = skoo::subsumption_closure(merged);
    auto ruleset = skoo::parse_ruleset(rules ? std::string_view(*rules) : skoo::default_ruleset_text());
    auto vm = skoo::apply_rules(merged, closure, ruleset);
    return fmt == skoo::OutputFormat::Json ? skoo::to_json(vm) : skoo::to_dot(vm);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SKOO ontology toolkit";

    py::register_exception<skoo::Error>(m, "SkooError", PyExc_ValueError);

    py::class_<skoo::Ontology>(m, "Ontology")
        .def(py::init<>())
        .def("serialize", [](const skoo::Ontology& o) { return skoo::serialize_turtle(o); })
        .def("resolve", [](const skoo::Ontology& o, const std::string& term) { return o.resolve(term).str(); })
        .def("axioms", [](const skoo::Ontology& o) { return axiom_triples(o.tbox); })
        .def("assertions", &assertion_triples)
        .def("classes",
             [](const skoo::Ontology& o) {
                 std::vector<std::string> out;
                 for (const auto& c : o.class_iris()) {
                     out.push_back(c.str());
                 }
                 return out;
             })
        .def("prefixes",
             [](const skoo::Ontology& o) {
                 std::map<std::string, std::string> out;
                 for (const auto& [label, ns] : o.prefixes.bindings()) {
                     out.emplace(label, ns.str());
                 }
                 return out;
             })
        .def("add_axiom",
             [](const skoo::Ontology& o, const std::string& kind, const std::string& s, const std::string& t) {
                 return skoo::add_axiom(o, axiom_kind(kind), s, t);
             })
        .def("merge", [](const skoo::Ontology& a, const skoo::Ontology& b) { return skoo::merge(a, b); })
        .def("set_equal", [](const skoo::Ontology& a, const skoo::Ontology& b) { return skoo::set_equal(a, b); })
        .def("empty", &skoo::Ontology::empty)
        .def("__eq__", [](const skoo::Ontology& a, const skoo::Ontology& b) { return a == b; });

    m.def("parse_turtle", [](const std::string& text) { return skoo::parse_turtle_strict(text); });
    m.def("parse_diagnostics", [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& d : skoo::parse_turtle(text).diagnostics) {
            out.push_back(d.format());
        }
        return out;
    });
    m.def("serialize_turtle", [](const skoo::Ontology& o) { return skoo::serialize_turtle(o); });

    m.def("skoo_ontology", &skoo::skoo_ontology);
    m.def("external_fragment", [](const std::string& name) { return skoo::external_fragment(name); });
    m.def("alignment_axioms", [] { return axiom_triples(skoo::alignment_axioms()); });
    m.def("merged_schema", [](const std::vector<std::string>& fragments, bool alignment) {
        std::set<skoo::Fragment> selected;
        for (const auto& f : fragments) {
            selected.insert(skoo::parse_fragment(f));
        }
        return skoo::SchemaBundle::embedded().merged(selected, alignment);
    }, py::arg("fragments") = std::vector<std::string>{}, py::arg("alignment") = false);

    m.def("_check_consistency", [](const skoo::Ontology& o) {
        return skoo::consistency_report_json(skoo::check_consistency(o));
    });
    m.def("is_subclass_of", [](const skoo::Ontology& o, const std::string& sub, const std::string& sup) {
        auto closure = skoo::subsumption_closure(o);
        return skoo::is_subclass_of(closure, o.resolve(sub), o.resolve(sup));
    });
    m.def("_validate", [](const skoo::Ontology& graph) {
        auto report = skoo::validate_instance_graph(graph, skoo::SchemaBundle::embedded());
        return skoo::validation_report_json(report, graph.prefixes);
    });
    m.def("visualize", &visualize, py::arg("graph"), py::arg("rules") = std::nullopt, py::arg("format") = "json");
    m.def("default_rules", [] { return std::string(skoo::default_ruleset_text()); });
}
