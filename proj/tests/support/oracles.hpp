#pragma once

// Independent reference implementations used to cross-check the library.
// Nothing here calls into the reasoner or the matcher.

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "skoo/model.hpp"
#include "skoo/pattern.hpp"

namespace oracle {

inline const std::string ns = "http://example.org/rand#";

inline skoo::Iri cls(std::size_t i) { return skoo::Iri(ns + "C" + std::to_string(i)); }

/// Directed graph over class Iris: SubClassOf edges one way, EquivalentClass
/// edges both ways. Reachability is plain DFS per query.
class AxiomGraph {
public:
    explicit AxiomGraph(const skoo::Ontology& o) {
        for (const auto& ax : o.tbox) {
            if (ax.kind() == skoo::AxiomKind::SubClassOf) {
                out_[ax.subject()].insert(ax.object());
            } else if (ax.kind() == skoo::AxiomKind::EquivalentClass) {
                out_[ax.subject()].insert(ax.object());
                out_[ax.object()].insert(ax.subject());
            }
        }
    }

    bool reaches(const skoo::Iri& from, const skoo::Iri& to) const {
        std::set<skoo::Iri> seen{from};
        std::vector<skoo::Iri> stack{from};
        while (!stack.empty()) {
            skoo::Iri cur = stack.back();
            stack.pop_back();
            if (cur == to) {
                return true;
            }
            auto it = out_.find(cur);
            if (it == out_.end()) {
                continue;
            }
            for (const auto& next : it->second) {
                if (seen.insert(next).second) {
                    stack.push_back(next);
                }
            }
        }
        return false;
    }

private:
    std::map<skoo::Iri, std::set<skoo::Iri>> out_;
};

struct RandomOntologyLimits {
    std::size_t max_classes = 50;
    std::size_t max_edges = 150;
    std::size_t max_equivalences = 10;
};

/// Classes C0..Cn-1 (all declared), random subclass edges (cycles allowed)
/// and a few equivalences.
inline skoo::Ontology random_class_graph(std::mt19937& rng, const RandomOntologyLimits& lim = {}) {
    std::uniform_int_distribution<std::size_t> nclasses(1, lim.max_classes);
    std::size_t n = nclasses(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::size_t> nedges(0, lim.max_edges);
    std::uniform_int_distribution<std::size_t> neq(0, lim.max_equivalences);

    skoo::Ontology o;
    o.prefixes.bind("r", skoo::Iri(ns));
    for (std::size_t i = 0; i < n; ++i) {
        o.declared_classes.insert(cls(i));
    }
    std::size_t edges = nedges(rng);
    for (std::size_t e = 0; e < edges; ++e) {
        o.tbox.insert(skoo::Axiom::sub_class_of(cls(pick(rng)), cls(pick(rng))));
    }
    std::size_t eqs = neq(rng);
    for (std::size_t e = 0; e < eqs; ++e) {
        o.tbox.insert(skoo::Axiom::equivalent(cls(pick(rng)), cls(pick(rng))));
    }
    return o;
}

/// (individual, class) pairs: asserted types plus domain/range, closed under
/// the axiom graph.
inline std::set<std::pair<skoo::Iri, skoo::Iri>> inferred_types(const skoo::Ontology& o) {
    std::set<std::pair<skoo::Iri, skoo::Iri>> base;
    std::map<skoo::Iri, std::vector<skoo::Iri>> domains;
    std::map<skoo::Iri, std::vector<skoo::Iri>> ranges;
    for (const auto& ax : o.tbox) {
        if (ax.kind() == skoo::AxiomKind::Domain) {
            domains[ax.subject()].push_back(ax.object());
        } else if (ax.kind() == skoo::AxiomKind::Range) {
            ranges[ax.subject()].push_back(ax.object());
        }
    }
    for (const auto& a : o.abox) {
        if (a.kind() == skoo::AssertionKind::TypeOf) {
            base.emplace(a.subject(), *a.object_iri());
            continue;
        }
        for (const auto& c : domains[a.predicate()]) {
            base.emplace(a.subject(), c);
        }
        if (const skoo::Iri* obj = a.object_iri()) {
            for (const auto& c : ranges[a.predicate()]) {
                base.emplace(*obj, c);
            }
        }
    }
    std::set<skoo::Iri> classes = o.class_iris();
    AxiomGraph g(o);
    std::set<std::pair<skoo::Iri, skoo::Iri>> out;
    for (const auto& [ind, c] : base) {
        for (const auto& d : classes) {
            if (g.reaches(c, d)) {
                out.emplace(ind, d);
            }
        }
        out.emplace(ind, c);
    }
    return out;
}

using Triple = std::tuple<skoo::Iri, skoo::Iri, skoo::Term>;

inline std::set<Triple> abox_triples(const skoo::Ontology& o) {
    std::set<Triple> out;
    for (const auto& a : o.abox) {
        out.emplace(a.subject(), a.predicate(), a.object());
    }
    return out;
}

/// Every term that occurs anywhere in the ABox, in any position.
inline std::vector<skoo::Term> graph_terms(const skoo::Ontology& o) {
    std::set<skoo::Term> terms;
    for (const auto& a : o.abox) {
        terms.insert(a.subject());
        terms.insert(a.predicate());
        terms.insert(a.object());
    }
    return {terms.begin(), terms.end()};
}

inline std::optional<skoo::Term> instantiate(const skoo::PatternTerm& t, const skoo::Binding& b) {
    if (const auto* v = std::get_if<skoo::Variable>(&t)) {
        return b.at(v->name);
    }
    if (const auto* iri = std::get_if<skoo::Iri>(&t)) {
        return skoo::Term{*iri};
    }
    return skoo::Term{std::get<skoo::Literal>(t)};
}

/// Tries every assignment of graph terms to the pattern's variables and
/// keeps the ones that satisfy every triple and type constraint.
inline std::set<skoo::Binding> naive_match(const skoo::Ontology& o, const skoo::GraphPattern& p) {
    std::set<skoo::Binding> out;
    if (p.triples.empty()) {
        return out;
    }
    std::set<std::string> varset;
    for (const auto& t : p.triples) {
        for (const auto* term : {&t.subject, &t.predicate, &t.object}) {
            if (const auto* v = std::get_if<skoo::Variable>(term)) {
                varset.insert(v->name);
            }
        }
    }
    std::vector<std::string> vars(varset.begin(), varset.end());
    std::vector<skoo::Term> domain = graph_terms(o);
    std::set<Triple> triples = abox_triples(o);
    auto inferred = inferred_types(o);
    std::set<std::pair<skoo::Iri, skoo::Iri>> asserted;
    for (const auto& a : o.abox) {
        if (a.kind() == skoo::AssertionKind::TypeOf) {
            asserted.emplace(a.subject(), *a.object_iri());
        }
    }
    if (domain.empty()) {
        return out;
    }

    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
        skoo::Binding b;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            b.emplace(vars[i], domain[idx[i]]);
        }
        bool ok = true;
        for (const auto& t : p.triples) {
            auto s = instantiate(t.subject, b);
            auto pr = instantiate(t.predicate, b);
            auto ob = instantiate(t.object, b);
            const auto* si = std::get_if<skoo::Iri>(&*s);
            const auto* pi = std::get_if<skoo::Iri>(&*pr);
            if (si == nullptr || pi == nullptr || !triples.contains({*si, *pi, *ob})) {
                ok = false;
                break;
            }
        }
        for (const auto& tc : p.types) {
            if (!ok) {
                break;
            }
            const auto* ind = std::get_if<skoo::Iri>(&b.at(tc.var));
            const auto& pool = tc.transitive ? inferred : asserted;
            ok = ind != nullptr && pool.contains({*ind, tc.cls});
        }
        if (ok) {
            out.insert(b);
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == domain.size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) {
            break;
        }
    }
    return out;
}

/// A small random instance graph (≤ max_assertions) with a class hierarchy
/// and domain/range axioms, plus a random pattern (≤ 3 triples) that obeys
/// the pattern invariants.
struct MatcherCase {
    skoo::Ontology graph;
    skoo::GraphPattern pattern;
};

inline MatcherCase random_matcher_case(std::mt19937& rng, std::size_t max_assertions = 30) {
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    std::vector<skoo::Iri> inds, preds, classes;
    for (int i = 0; i < 5; ++i) inds.emplace_back(ns + "i" + std::to_string(i));
    for (int i = 0; i < 2; ++i) preds.emplace_back(ns + "p" + std::to_string(i));
    for (int i = 0; i < 4; ++i) classes.emplace_back(ns + "K" + std::to_string(i));
    std::vector<skoo::Literal> lits{{"a"}, {"b c"}};

    MatcherCase mc;
    auto& g = mc.graph;
    g.prefixes.bind("r", skoo::Iri(ns));
    for (const auto& c : classes) g.declared_classes.insert(c);
    for (const auto& p : preds) g.declared_properties.insert(p);
    for (int e = 0; e < 3; ++e) {
        g.tbox.insert(skoo::Axiom::sub_class_of(classes[pick(4)], classes[pick(4)]));
    }
    if (coin(0.5)) g.tbox.insert(skoo::Axiom::domain(preds[0], classes[pick(4)]));
    if (coin(0.5)) g.tbox.insert(skoo::Axiom::range(preds[1], classes[pick(4)]));

    // Skewed towards fuller graphs so that most patterns have matches.
    std::size_t n = std::max(std::uniform_int_distribution<std::size_t>(0, max_assertions)(rng),
                             std::uniform_int_distribution<std::size_t>(0, max_assertions)(rng));
    for (std::size_t i = 0; i < n; ++i) {
        if (coin(0.35)) {
            g.abox.insert(skoo::Assertion::type_of(inds[pick(5)], classes[pick(4)]));
        } else if (coin(0.15)) {
            g.abox.insert(skoo::Assertion::relation(inds[pick(5)], preds[pick(2)], lits[pick(2)]));
        } else {
            g.abox.insert(skoo::Assertion::relation(inds[pick(5)], preds[pick(2)], inds[pick(5)]));
        }
    }

    const skoo::Iri type = skoo::vocab::rdf_type();
    const skoo::Iri absent(ns + "absent");
    std::vector<std::string> node_vars{"x", "y", "z"};
    auto node_term = [&](bool object_position) -> skoo::PatternTerm {
        double r = std::uniform_real_distribution<double>(0, 1)(rng);
        if (r < 0.75) return skoo::Variable{node_vars[pick(3)]};
        if (r < 0.9) return inds[pick(5)];
        if (object_position && r < 0.97) return lits[pick(2)];
        return absent;
    };

    std::size_t ntriples = 1 + pick(3);
    for (std::size_t i = 0; i < ntriples; ++i) {
        skoo::TriplePattern t{node_term(false), skoo::Variable{"p"}, node_term(true)};
        double r = std::uniform_real_distribution<double>(0, 1)(rng);
        if (r < 0.3) {
            t.predicate = type;
            t.object = coin(0.5) ? skoo::PatternTerm{classes[pick(4)]} : skoo::PatternTerm{skoo::Variable{"k"}};
        } else if (r < 0.8) {
            t.predicate = preds[pick(2)];
        }
        mc.pattern.triples.push_back(std::move(t));
    }

    std::set<std::string> node_bound;
    for (const auto& t : mc.pattern.triples) {
        for (const auto* term : {&t.subject, &t.object}) {
            if (const auto* v = std::get_if<skoo::Variable>(term)) {
                node_bound.insert(v->name);
            }
        }
    }
    // Type constraints only on variables that never stand in predicate position.
    node_bound.erase("p");
    if (!node_bound.empty() && coin(0.5)) {
        std::vector<std::string> vs(node_bound.begin(), node_bound.end());
        mc.pattern.types.push_back({vs[pick(vs.size())], classes[pick(4)], coin(0.6)});
    }
    return mc;
}

}  // namespace oracle
