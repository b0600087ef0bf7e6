#include "skoo/model.hpp"

#include "skoo/error.hpp"

namespace skoo {

std::string_view to_string(AxiomKind kind) {
    switch (kind) {
        case AxiomKind::SubClassOf: return "SubClassOf";
        case AxiomKind::EquivalentClass: return "EquivalentClass";
        case AxiomKind::DisjointWith: return "DisjointWith";
        case AxiomKind::Domain: return "Domain";
        case AxiomKind::Range: return "Range";
    }
    return "?";
}

Axiom::Axiom(AxiomKind kind, Iri subject, Iri object)
    : kind_(kind), subject_(std::move(subject)), object_(std::move(object)) {
    if (is_symmetric() && object_ < subject_) {
        std::swap(subject_, object_);
    }
}

const Iri& Axiom::predicate() const {
    switch (kind_) {
        case AxiomKind::SubClassOf: return vocab::rdfs_sub_class_of();
        case AxiomKind::EquivalentClass: return vocab::owl_equivalent_class();
        case AxiomKind::DisjointWith: return vocab::owl_disjoint_with();
        case AxiomKind::Domain: return vocab::rdfs_domain();
        case AxiomKind::Range: return vocab::rdfs_range();
    }
    return vocab::rdfs_sub_class_of();
}

Assertion Assertion::type_of(Iri individual, Iri cls) {
    return {AssertionKind::TypeOf, std::move(individual), vocab::rdf_type(), Term{std::move(cls)}};
}

Assertion Assertion::relation(Iri subject, Iri predicate, Term object) {
    if (predicate == vocab::rdf_type()) {
        if (const Iri* cls = std::get_if<Iri>(&object)) {
            return type_of(std::move(subject), *cls);
        }
        throw AxiomKindError("rdf:type object must be a class IRI, not a literal (subject <" + subject.str() + ">)");
    }
    return {AssertionKind::Relation, std::move(subject), std::move(predicate), std::move(object)};
}

std::set<Iri> Ontology::class_iris() const {
    std::set<Iri> out = declared_classes;
    for (const auto& ax : tbox) {
        switch (ax.kind()) {
            case AxiomKind::SubClassOf:
            case AxiomKind::EquivalentClass:
            case AxiomKind::DisjointWith:
                out.insert(ax.subject());
                out.insert(ax.object());
                break;
            case AxiomKind::Domain:
            case AxiomKind::Range:
                out.insert(ax.object());
                break;
        }
    }
    for (const auto& as : abox) {
        if (as.kind() == AssertionKind::TypeOf) {
            out.insert(*as.object_iri());
        }
    }
    return out;
}

std::set<Iri> Ontology::individuals() const {
    std::set<Iri> out;
    for (const auto& as : abox) {
        out.insert(as.subject());
        if (as.kind() == AssertionKind::Relation) {
            if (const Iri* o = as.object_iri()) {
                out.insert(*o);
            }
        }
    }
    return out;
}

std::set<Iri> Ontology::foreign_iris() const {
    std::set<Iri> out;
    for (const auto& cls : class_iris()) {
        if (!declared_classes.contains(cls)) {
            out.insert(cls);
        }
    }
    auto check_property = [&](const Iri& p) {
        if (!declared_properties.contains(p)) {
            out.insert(p);
        }
    };
    for (const auto& ax : tbox) {
        if (ax.kind() == AxiomKind::Domain || ax.kind() == AxiomKind::Range) {
            check_property(ax.subject());
        }
    }
    for (const auto& as : abox) {
        if (as.kind() == AssertionKind::Relation) {
            check_property(as.predicate());
        }
    }
    return out;
}

bool set_equal(const Ontology& a, const Ontology& b) {
    return a.tbox == b.tbox && a.abox == b.abox && a.declared_classes == b.declared_classes &&
           a.declared_properties == b.declared_properties;
}

Ontology add_axiom(Ontology ontology, const Axiom& axiom) {
    if ((axiom.kind() == AxiomKind::Domain || axiom.kind() == AxiomKind::Range) &&
        ontology.declared_classes.contains(axiom.subject())) {
        throw AxiomKindError(std::string(to_string(axiom.kind())) + " axiom subject <" + axiom.subject().str() +
                             "> is a declared class, not a property");
    }
    ontology.tbox.insert(axiom);
    return ontology;
}

Ontology add_axiom(Ontology ontology, AxiomKind kind, std::string_view subject, std::string_view object) {
    Axiom axiom(kind, ontology.resolve(subject), ontology.resolve(object));
    return add_axiom(std::move(ontology), axiom);
}

Ontology add_assertion(Ontology ontology, const Assertion& assertion) {
    ontology.abox.insert(assertion);
    return ontology;
}

Ontology merge(const Ontology& a, const Ontology& b) {
    Ontology out;
    out.prefixes = a.prefixes.merged_with(b.prefixes);
    out.tbox = a.tbox;
    out.tbox.insert(b.tbox.begin(), b.tbox.end());
    out.abox = a.abox;
    out.abox.insert(b.abox.begin(), b.abox.end());
    out.declared_classes = a.declared_classes;
    out.declared_classes.insert(b.declared_classes.begin(), b.declared_classes.end());
    out.declared_properties = a.declared_properties;
    out.declared_properties.insert(b.declared_properties.begin(), b.declared_properties.end());
    return out;
}

Ontology merge_all(const std::vector<Ontology>& parts) {
    Ontology out;
    for (const auto& part : parts) {
        out = merge(out, part);
    }
    return out;
}

}  // namespace skoo
