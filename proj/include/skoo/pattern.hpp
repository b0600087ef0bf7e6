#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "skoo/model.hpp"
#include "skoo/reasoner.hpp"

namespace skoo {

/// A pattern variable; the name excludes the leading '?'.
struct Variable {
    std::string name;

    auto operator<=>(const Variable&) const = default;
    bool operator==(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, Iri, Literal>;

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
};

/// The binding of `var` must be an individual typed `cls`: through the
/// subsumption closure (and domain/range) when `transitive`, by an asserted
/// rdf:type otherwise.
struct TypeConstraint {
    std::string var;
    Iri cls;
    bool transitive = true;
};

/// A conjunctive basic graph pattern with type constraints.
struct GraphPattern {
    std::vector<TriplePattern> triples;
    std::vector<TypeConstraint> types;

    /// Sorted, without duplicates.
    std::vector<std::string> variables() const;

    /// Throws RuleError when a type-constrained variable is missing from the
    /// triples, a variable is used both as predicate and as subject/object,
    /// or a literal sits in subject or predicate position.
    void validate() const;
};

using Binding = std::map<std::string, Term>;

struct BindingSet {
    std::vector<std::string> variables;
    /// Duplicate-free, sorted by the bound values in `variables` order.
    std::vector<Binding> rows;
};

/// Every assignment under which all triples are ABox assertions (TypeOf
/// assertions match with predicate rdf:type) and all type constraints hold.
/// A pattern without triples matches nothing.
BindingSet match_pattern(const Ontology& graph, const SubsumptionClosure& closure, const GraphPattern& pattern);

}  // namespace skoo
