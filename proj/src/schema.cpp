#include "skoo/schema.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "skoo/embedded.hpp"
#include "skoo/error.hpp"
#include "skoo/reasoner.hpp"

namespace skoo {

std::optional<std::string_view> embedded_file(std::string_view path) noexcept {
    for (const auto& file : embedded_files()) {
        if (file.path == path) {
            return file.contents;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Fragment fragment) {
    switch (fragment) {
        case Fragment::Dolce: return "dolce";
        case Fragment::Wordnet: return "wordnet";
        case Fragment::Omdoc: return "omdoc";
    }
    return "?";
}

Fragment parse_fragment(std::string_view name) {
    for (Fragment f : all_fragments) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw SchemaError("unknown fragment '" + std::string(name) + "' (expected dolce, wordnet or omdoc)");
}

namespace {

const char* fragment_file(Fragment fragment) {
    switch (fragment) {
        case Fragment::Dolce: return "dolce-frag.ttl";
        case Fragment::Wordnet: return "wordnet-frag.ttl";
        case Fragment::Omdoc: return "omdoc-frag.ttl";
    }
    return "";
}

Ontology parse_schema_file(std::string_view name, std::string_view text) {
    ParseResult result = parse_turtle(text);
    if (!result.ok()) {
        std::string msg = "schema file '" + std::string(name) + "' does not parse:";
        for (const auto& d : result.diagnostics) {
            msg += "\n  " + d.format();
        }
        throw SchemaError(msg);
    }
    return std::move(result.ontology);
}

std::string_view require_embedded(std::string_view path) {
    auto contents = embedded_file(path);
    if (!contents) {
        throw SchemaError("no embedded schema file '" + std::string(path) + "'");
    }
    return *contents;
}

SchemaBundle build_bundle() {
    SchemaBundle bundle;
    bundle.skoo = parse_schema_file("skoo.ttl", require_embedded("skoo.ttl"));
    for (Fragment f : all_fragments) {
        bundle.fragments.emplace(f, parse_schema_file(fragment_file(f), require_embedded(fragment_file(f))));
    }
    bundle.alignment = parse_schema_file("alignment.ttl", require_embedded("alignment.ttl"));
    for (const auto& file : embedded_files()) {
        constexpr std::string_view dir = "fixtures/";
        constexpr std::string_view ext = ".ttl";
        if (file.path.starts_with(dir) && file.path.ends_with(ext)) {
            std::string name(file.path.substr(dir.size(), file.path.size() - dir.size() - ext.size()));
            bundle.fixtures.emplace(name, parse_schema_file(file.path, file.contents));
        }
    }
    return bundle;
}

}  // namespace

const std::vector<std::string>& schema_file_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& file : embedded_files()) {
            out.emplace_back(file.path);
        }
        return out;
    }();
    return names;
}

const SchemaBundle& SchemaBundle::embedded() {
    static const SchemaBundle bundle = build_bundle();
    return bundle;
}

SchemaBundle SchemaBundle::load_directory(const std::filesystem::path& dir) {
    for (const auto& file : embedded_files()) {
        std::filesystem::path path = dir / std::filesystem::path(std::string(file.path));
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw SchemaError("schema directory " + dir.string() + " is missing " + std::string(file.path));
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        if (buf.str() != file.contents) {
            throw SchemaError("schema file " + path.string() + " differs from the embedded copy");
        }
    }
    return embedded();
}

Ontology SchemaBundle::merged(const std::set<Fragment>& selected, bool with_alignment) const {
    Ontology out = skoo;
    for (Fragment f : selected) {
        out = merge(out, fragments.at(f));
    }
    if (with_alignment) {
        out = merge(out, alignment);
    }
    return out;
}

Ontology SchemaBundle::merged_all() const {
    return merged({all_fragments[0], all_fragments[1], all_fragments[2]}, true);
}

Ontology skoo_ontology() { return SchemaBundle::embedded().skoo; }

std::set<Axiom> alignment_axioms() { return SchemaBundle::embedded().alignment.tbox; }

Ontology external_fragment(Fragment fragment) { return SchemaBundle::embedded().fragments.at(fragment); }

Ontology external_fragment(std::string_view name) { return external_fragment(parse_fragment(name)); }

std::string_view default_ruleset_text() { return require_embedded("rules/default.json"); }

Ontology import_domain_ontology(const SchemaBundle& bundle, const Ontology& domain, const std::set<Iri>& top_classes) {
    Ontology out = merge(bundle.skoo, domain);
    const Iri anchor = vocab::skoo("Domain_Object");
    for (const auto& cls : top_classes) {
        if (!domain.declared_classes.contains(cls)) {
            throw SchemaError("top class <" + cls.str() + "> is not declared in the domain ontology");
        }
        out = add_axiom(std::move(out), Axiom::sub_class_of(cls, anchor));
    }
    return out;
}

std::size_t ValidationReport::count(Severity severity) const {
    return static_cast<std::size_t>(
        std::count_if(items.begin(), items.end(), [&](const ValidationItem& i) { return i.severity == severity; }));
}

ValidationReport validate_instance_graph(const Ontology& graph, const SchemaBundle& bundle) {
    ValidationReport report;
    if (graph.empty()) {
        return report;
    }
    Ontology merged = merge(bundle.merged_all(), graph);
    const PrefixMap& pm = merged.prefixes;

    Ontology terminology = merged;
    terminology.abox.clear();
    const std::set<Iri> known_classes = terminology.class_iris();

    auto add = [&](Severity severity, const Iri& subject, std::string message) {
        report.items.push_back({severity, subject, std::move(message)});
    };

    for (const auto& as : graph.abox) {
        if (as.kind() == AssertionKind::TypeOf && !known_classes.contains(*as.object_iri())) {
            add(Severity::Error, as.subject(), "typed by " + pm.display(*as.object_iri()) + ", which is not a known class");
        }
    }

    SubsumptionClosure closure = subsumption_closure(merged);
    ConsistencyReport consistency = check_consistency(merged);
    for (const auto& cls : consistency.unsatisfiable_classes) {
        add(Severity::Error, cls, "class is unsatisfiable: it is subsumed by two disjoint classes");
    }

    std::map<Iri, std::set<Iri>> domains;
    std::map<Iri, std::set<Iri>> ranges;
    for (const auto& ax : merged.tbox) {
        if (ax.kind() == AxiomKind::Domain) {
            domains[ax.subject()].insert(ax.object());
        } else if (ax.kind() == AxiomKind::Range) {
            ranges[ax.subject()].insert(ax.object());
        }
    }

    for (const auto& conflict : consistency.conflicting_individuals) {
        // Name the relations whose domain or range pulled in one side of the
        // disjoint pair.
        std::set<std::string> culprits;
        auto implicates = [&](const std::set<Iri>& classes) {
            return std::any_of(classes.begin(), classes.end(), [&](const Iri& c) {
                return is_subclass_of(closure, c, conflict.class_a) || is_subclass_of(closure, c, conflict.class_b);
            });
        };
        for (const auto& as : merged.abox) {
            if (as.kind() != AssertionKind::Relation) {
                continue;
            }
            if (as.subject() == conflict.individual) {
                if (auto it = domains.find(as.predicate()); it != domains.end() && implicates(it->second)) {
                    culprits.insert("domain of " + pm.display(as.predicate()));
                }
            }
            if (const Iri* o = as.object_iri(); o != nullptr && *o == conflict.individual) {
                if (auto it = ranges.find(as.predicate()); it != ranges.end() && implicates(it->second)) {
                    culprits.insert("range of " + pm.display(as.predicate()));
                }
            }
        }
        std::string message = "inferred types include disjoint classes " + pm.display(conflict.class_a) + " and " +
                              pm.display(conflict.class_b);
        if (!culprits.empty()) {
            message += " (via ";
            bool first = true;
            for (const auto& c : culprits) {
                message += (first ? "" : ", ") + c;
                first = false;
            }
            message += ")";
        }
        add(Severity::Error, conflict.individual, std::move(message));
    }

    auto types = inferred_types_by_individual(merged, closure);
    for (const auto& individual : graph.individuals()) {
        auto it = types.find(individual);
        if (it == types.end() || it->second.empty()) {
            add(Severity::Warning, individual, "individual has no asserted or inferred type");
        }
    }

    std::set<Iri> reported_predicates;
    for (const auto& as : graph.abox) {
        if (as.kind() != AssertionKind::Relation) {
            continue;
        }
        const Iri& p = as.predicate();
        if (merged.declared_properties.contains(p) || domains.contains(p) || ranges.contains(p)) {
            continue;
        }
        if (reported_predicates.insert(p).second) {
            add(Severity::Warning, p, "predicate is not declared and has no domain or range");
        }
    }

    std::sort(report.items.begin(), report.items.end());
    return report;
}

}  // namespace skoo
