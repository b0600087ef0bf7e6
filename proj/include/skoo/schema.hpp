#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skoo/model.hpp"
#include "skoo/turtle.hpp"

namespace skoo {

enum class Fragment { Dolce, Wordnet, Omdoc };

inline constexpr Fragment all_fragments[] = {Fragment::Dolce, Fragment::Wordnet, Fragment::Omdoc};

std::string_view to_string(Fragment fragment);

/// "dolce", "wordnet" or "omdoc"; throws SchemaError otherwise.
Fragment parse_fragment(std::string_view name);

/// The SKOO ontology, the three external fragments, the alignment axioms,
/// and the instance fixtures, parsed once from the embedded schema files.
struct SchemaBundle {
    Ontology skoo;
    std::map<Fragment, Ontology> fragments;
    /// Alignment axioms with the prefixes they are written against.
    Ontology alignment;
    std::map<std::string, Ontology> fixtures;

    /// The compiled-in copy. Parsed on first use; immutable afterwards.
    static const SchemaBundle& embedded();

    /// Reads the schema files from `dir` and refuses (SchemaError) unless
    /// every one is byte-identical to the embedded copy.
    static SchemaBundle load_directory(const std::filesystem::path& dir);

    /// SKOO merged with the selected fragments and, optionally, the
    /// alignment axioms.
    Ontology merged(const std::set<Fragment>& fragments, bool with_alignment) const;

    /// SKOO + all fragments + alignment.
    Ontology merged_all() const;
};

/// Relative paths of the files that make up the schema directory.
const std::vector<std::string>& schema_file_names();

Ontology skoo_ontology();

/// The SKOO/OMDoc/DOLCE/WordNet correspondence axioms (19 of them).
std::set<Axiom> alignment_axioms();

Ontology external_fragment(Fragment fragment);
Ontology external_fragment(std::string_view name);

/// The default mapping ruleset (JSON text).
std::string_view default_ruleset_text();

/// Merges `domain` into SKOO and anchors each listed top class with
/// C ⊑ skoo:Domain_Object. Throws SchemaError when a listed class is not
/// declared in `domain`.
Ontology import_domain_ontology(const SchemaBundle& bundle, const Ontology& domain, const std::set<Iri>& top_classes);

struct ValidationItem {
    Severity severity = Severity::Error;
    Iri subject;
    std::string message;

    auto operator<=>(const ValidationItem&) const = default;
    bool operator==(const ValidationItem&) const = default;
};

struct ValidationReport {
    std::vector<ValidationItem> items;

    std::size_t count(Severity severity) const;
    std::size_t errors() const { return count(Severity::Error); }
    std::size_t warnings() const { return count(Severity::Warning); }
    bool ok() const { return errors() == 0; }
};

/// Checks an instance graph against SKOO, the fragments, and the alignment.
/// Errors: types that are not known classes, unsatisfiable classes, and
/// individuals whose inferred types hit a disjoint pair. Warnings: untyped
/// individuals and undeclared predicates without domain/range.
ValidationReport validate_instance_graph(const Ontology& graph, const SchemaBundle& bundle);

}  // namespace skoo
