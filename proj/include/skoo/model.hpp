#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skoo/iri.hpp"

namespace skoo {

enum class AxiomKind { SubClassOf, EquivalentClass, DisjointWith, Domain, Range };

std::string_view to_string(AxiomKind kind);

/// A TBox axiom. Symmetric kinds (EquivalentClass, DisjointWith) are stored
/// with the lexicographically smaller IRI as subject, so (A,B) and (B,A)
/// construct identical values.
class Axiom {
public:
    Axiom(AxiomKind kind, Iri subject, Iri object);

    static Axiom sub_class_of(Iri sub, Iri sup) { return {AxiomKind::SubClassOf, std::move(sub), std::move(sup)}; }
    static Axiom equivalent(Iri a, Iri b) { return {AxiomKind::EquivalentClass, std::move(a), std::move(b)}; }
    static Axiom disjoint(Iri a, Iri b) { return {AxiomKind::DisjointWith, std::move(a), std::move(b)}; }
    static Axiom domain(Iri property, Iri cls) { return {AxiomKind::Domain, std::move(property), std::move(cls)}; }
    static Axiom range(Iri property, Iri cls) { return {AxiomKind::Range, std::move(property), std::move(cls)}; }

    AxiomKind kind() const noexcept { return kind_; }
    const Iri& subject() const noexcept { return subject_; }
    const Iri& object() const noexcept { return object_; }

    /// The RDF predicate this axiom is written with.
    const Iri& predicate() const;

    bool is_symmetric() const noexcept {
        return kind_ == AxiomKind::EquivalentClass || kind_ == AxiomKind::DisjointWith;
    }

    auto operator<=>(const Axiom&) const = default;
    bool operator==(const Axiom&) const = default;

private:
    AxiomKind kind_;
    Iri subject_;
    Iri object_;
};

/// A plain literal; the lexical form is kept byte-for-byte.
struct Literal {
    std::string lexical;

    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;
};

using Term = std::variant<Iri, Literal>;

enum class AssertionKind { TypeOf, Relation };

/// An ABox statement. TypeOf assertions use rdf:type as predicate and always
/// carry a class Iri as object.
class Assertion {
public:
    static Assertion type_of(Iri individual, Iri cls);
    static Assertion relation(Iri subject, Iri predicate, Term object);

    AssertionKind kind() const noexcept { return kind_; }
    const Iri& subject() const noexcept { return subject_; }
    const Iri& predicate() const noexcept { return predicate_; }
    const Term& object() const noexcept { return object_; }

    /// Object as Iri; nullptr for literal objects.
    const Iri* object_iri() const noexcept { return std::get_if<Iri>(&object_); }

    auto operator<=>(const Assertion&) const = default;
    bool operator==(const Assertion&) const = default;

private:
    Assertion(AssertionKind kind, Iri subject, Iri predicate, Term object)
        : kind_(kind), subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {}

    AssertionKind kind_;
    Iri subject_;
    Iri predicate_;
    Term object_;
};

/// TBox + ABox with the prefix map they were written against. A plain value:
/// every operation returns a new Ontology and leaves its inputs untouched.
struct Ontology {
    PrefixMap prefixes;
    std::set<Axiom> tbox;
    std::set<Assertion> abox;
    std::set<Iri> declared_classes;
    std::set<Iri> declared_properties;

    bool empty() const noexcept {
        return tbox.empty() && abox.empty() && declared_classes.empty() && declared_properties.empty();
    }

    /// Resolves "<abs>" or "label:local" against `prefixes`.
    Iri resolve(std::string_view term) const { return prefixes.resolve(term); }

    /// Iris used in class/property position but not declared here.
    std::set<Iri> foreign_iris() const;

    /// Every Iri used in class position by the TBox, declarations, or
    /// TypeOf assertions.
    std::set<Iri> class_iris() const;

    /// Subjects and Iri objects of all ABox assertions (excluding classes
    /// referenced by TypeOf).
    std::set<Iri> individuals() const;

    bool operator==(const Ontology&) const = default;
};

/// Same axioms, assertions, and declarations; prefix maps are not compared.
bool set_equal(const Ontology& a, const Ontology& b);

/// Returns `ontology` with `axiom` in its TBox. Idempotent. Throws
/// AxiomKindError when a Domain/Range axiom names a declared class as its
/// property.
Ontology add_axiom(Ontology ontology, const Axiom& axiom);

/// Same as above, with both endpoints given as "<abs>" or prefixed names
/// resolved against ontology.prefixes (PrefixError when unresolvable).
Ontology add_axiom(Ontology ontology, AxiomKind kind, std::string_view subject, std::string_view object);

Ontology add_assertion(Ontology ontology, const Assertion& assertion);

/// Set union of both ontologies. Throws PrefixError when the two prefix maps
/// bind one label to different namespaces.
Ontology merge(const Ontology& a, const Ontology& b);

Ontology merge_all(const std::vector<Ontology>& parts);

}  // namespace skoo
