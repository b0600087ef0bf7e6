#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "skoo/model.hpp"

namespace skoo {

/// Reflexive-transitive subclass relation over canonical classes. Classes
/// that are equivalent (asserted, or through a subclass cycle) share one
/// canonical representative: the lexicographically smallest member.
class SubsumptionClosure {
public:
    SubsumptionClosure() = default;

    bool knows(const Iri& cls) const { return canon_.contains(cls); }

    /// Canonical representative. Throws UnknownClassError for unknown Iris.
    const Iri& canon(const Iri& cls) const;

    /// Canonical superclasses of canon(cls), itself included.
    const std::set<Iri>& reachable(const Iri& cls) const;

    /// All classes (not only canonical ones) that share canon(cls).
    const std::set<Iri>& equivalents(const Iri& cls) const;

    /// Every known class Iri.
    std::set<Iri> classes() const;

    const std::map<Iri, Iri>& canon_map() const noexcept { return canon_; }
    const std::map<Iri, std::set<Iri>>& reachable_map() const noexcept { return reachable_; }

private:
    friend SubsumptionClosure subsumption_closure(const Ontology& ontology);

    std::map<Iri, Iri> canon_;
    std::map<Iri, std::set<Iri>> reachable_;
    std::map<Iri, std::set<Iri>> members_;
};

SubsumptionClosure subsumption_closure(const Ontology& ontology);

/// True iff canon(sup) is reachable from canon(sub). Throws
/// UnknownClassError when either Iri is unknown to the closure.
bool is_subclass_of(const SubsumptionClosure& closure, const Iri& sub, const Iri& sup);

/// A chain of SubClassOf/EquivalentClass axioms from `from` to `to`, each
/// present in the input ontology. Empty when from == to.
struct SubclassChain {
    Iri from;
    Iri to;
    std::vector<Axiom> steps;

    bool operator==(const SubclassChain&) const = default;
};

enum class ConflictSubject { Class, Individual };

/// Why `subject` is unsatisfiable (a class) or contradictory (an
/// individual): it reaches both sides of `disjointness`.
struct Witness {
    ConflictSubject kind = ConflictSubject::Class;
    Iri subject;
    Axiom disjointness;
    SubclassChain chain_a;
    SubclassChain chain_b;

    bool operator==(const Witness&) const = default;
};

struct IndividualConflict {
    Iri individual;
    Iri class_a;
    Iri class_b;

    auto operator<=>(const IndividualConflict&) const = default;
    bool operator==(const IndividualConflict&) const = default;
};

struct ConsistencyReport {
    bool consistent = true;
    std::set<Iri> unsatisfiable_classes;
    std::set<IndividualConflict> conflicting_individuals;
    /// Sorted by (kind, subject, disjointness).
    std::vector<Witness> witnesses;

    bool operator==(const ConsistencyReport&) const = default;
};

/// A class is unsatisfiable iff its superclasses contain both members of a
/// disjoint pair; an individual conflicts iff its inferred types do.
ConsistencyReport check_consistency(const Ontology& ontology);

/// Inferred (individual, class) pairs: asserted types, domain/range
/// propagation, then closure under superclasses (every member of each
/// reached equivalence class is reported).
std::set<std::pair<Iri, Iri>> infer_types(const Ontology& ontology, const SubsumptionClosure& closure);

/// infer_types grouped by individual.
std::map<Iri, std::set<Iri>> inferred_types_by_individual(const Ontology& ontology, const SubsumptionClosure& closure);

}  // namespace skoo
