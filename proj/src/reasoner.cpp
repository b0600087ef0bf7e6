#include "skoo/reasoner.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "skoo/error.hpp"

namespace skoo {

namespace {

// Tarjan's strongly connected components, iterative. Components come out in
// reverse topological order of the condensation: every component reachable
// from C is emitted before C.
std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next_edge;
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& frame = frames.back();
            std::size_t v = frame.node;
            if (frame.next_edge < adj[v].size()) {
                std::size_t w = adj[v][frame.next_edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> component;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                components.push_back(std::move(component));
            }
            frames.pop_back();
            if (!frames.empty()) {
                std::size_t parent = frames.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return components;
}

// The axiom graph with each edge labelled by the axiom that induces it;
// equivalence edges run both ways.
struct AxiomGraph {
    std::map<Iri, std::vector<std::pair<Iri, const Axiom*>>> out;

    explicit AxiomGraph(const Ontology& ontology) {
        for (const auto& ax : ontology.tbox) {
            if (ax.kind() == AxiomKind::SubClassOf) {
                out[ax.subject()].emplace_back(ax.object(), &ax);
            } else if (ax.kind() == AxiomKind::EquivalentClass) {
                out[ax.subject()].emplace_back(ax.object(), &ax);
                out[ax.object()].emplace_back(ax.subject(), &ax);
            }
        }
    }

    // Breadth-first, so the chain is a shortest one.
    std::optional<SubclassChain> chain(const Iri& from, const Iri& to) const {
        if (from == to) {
            return SubclassChain{from, to, {}};
        }
        std::map<Iri, std::pair<Iri, const Axiom*>> parent;
        std::deque<Iri> queue{from};
        std::set<Iri> seen{from};
        while (!queue.empty()) {
            Iri v = queue.front();
            queue.pop_front();
            auto it = out.find(v);
            if (it == out.end()) {
                continue;
            }
            for (const auto& [w, ax] : it->second) {
                if (!seen.insert(w).second) {
                    continue;
                }
                parent.emplace(w, std::make_pair(v, ax));
                if (w == to) {
                    SubclassChain result{from, to, {}};
                    Iri cur = to;
                    while (cur != from) {
                        const auto& [prev, step] = parent.at(cur);
                        result.steps.push_back(*step);
                        cur = prev;
                    }
                    std::reverse(result.steps.begin(), result.steps.end());
                    return result;
                }
                queue.push_back(w);
            }
        }
        return std::nullopt;
    }
};

std::map<Iri, std::set<Iri>> base_types(const Ontology& ontology) {
    std::map<Iri, std::set<Iri>> domains;
    std::map<Iri, std::set<Iri>> ranges;
    for (const auto& ax : ontology.tbox) {
        if (ax.kind() == AxiomKind::Domain) {
            domains[ax.subject()].insert(ax.object());
        } else if (ax.kind() == AxiomKind::Range) {
            ranges[ax.subject()].insert(ax.object());
        }
    }

    std::map<Iri, std::set<Iri>> out;
    for (const auto& as : ontology.abox) {
        if (as.kind() == AssertionKind::TypeOf) {
            out[as.subject()].insert(*as.object_iri());
            continue;
        }
        if (auto it = domains.find(as.predicate()); it != domains.end()) {
            out[as.subject()].insert(it->second.begin(), it->second.end());
        }
        if (const Iri* o = as.object_iri()) {
            if (auto it = ranges.find(as.predicate()); it != ranges.end()) {
                out[*o].insert(it->second.begin(), it->second.end());
            }
        }
    }
    return out;
}

bool witness_less(const Witness& a, const Witness& b) {
    return std::tie(a.kind, a.subject, a.disjointness, a.chain_a.from, a.chain_b.from) <
           std::tie(b.kind, b.subject, b.disjointness, b.chain_a.from, b.chain_b.from);
}

}  // namespace

const Iri& SubsumptionClosure::canon(const Iri& cls) const {
    auto it = canon_.find(cls);
    if (it == canon_.end()) {
        throw UnknownClassError("unknown class <" + cls.str() + ">");
    }
    return it->second;
}

const std::set<Iri>& SubsumptionClosure::reachable(const Iri& cls) const {
    return reachable_.at(canon(cls));
}

const std::set<Iri>& SubsumptionClosure::equivalents(const Iri& cls) const {
    return members_.at(canon(cls));
}

std::set<Iri> SubsumptionClosure::classes() const {
    std::set<Iri> out;
    for (const auto& [cls, _] : canon_) {
        out.insert(cls);
    }
    return out;
}

SubsumptionClosure subsumption_closure(const Ontology& ontology) {
    std::set<Iri> class_set = ontology.class_iris();
    std::vector<Iri> nodes(class_set.begin(), class_set.end());
    std::map<Iri, std::size_t> id;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        id.emplace(nodes[i], i);
    }

    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const auto& ax : ontology.tbox) {
        if (ax.kind() == AxiomKind::SubClassOf) {
            adj[id.at(ax.subject())].push_back(id.at(ax.object()));
        } else if (ax.kind() == AxiomKind::EquivalentClass) {
            adj[id.at(ax.subject())].push_back(id.at(ax.object()));
            adj[id.at(ax.object())].push_back(id.at(ax.subject()));
        }
    }

    auto components = strongly_connected_components(adj);
    std::vector<std::size_t> component_of(nodes.size());
    std::vector<std::size_t> representative(components.size());
    for (std::size_t c = 0; c < components.size(); ++c) {
        std::size_t best = components[c].front();
        for (std::size_t v : components[c]) {
            component_of[v] = c;
            best = std::min(best, v);  // nodes are sorted, so min index = min Iri
        }
        representative[c] = best;
    }

    SubsumptionClosure closure;
    std::vector<std::set<std::size_t>> reach(components.size());
    for (std::size_t c = 0; c < components.size(); ++c) {
        reach[c].insert(c);
        for (std::size_t v : components[c]) {
            for (std::size_t w : adj[v]) {
                std::size_t d = component_of[w];
                if (d != c) {
                    reach[c].insert(reach[d].begin(), reach[d].end());
                }
            }
        }
        const Iri& rep = nodes[representative[c]];
        std::set<Iri>& out = closure.reachable_[rep];
        for (std::size_t d : reach[c]) {
            out.insert(nodes[representative[d]]);
        }
        std::set<Iri>& members = closure.members_[rep];
        for (std::size_t v : components[c]) {
            closure.canon_.emplace(nodes[v], rep);
            members.insert(nodes[v]);
        }
    }
    return closure;
}

bool is_subclass_of(const SubsumptionClosure& closure, const Iri& sub, const Iri& sup) {
    const Iri& target = closure.canon(sup);
    return closure.reachable(sub).contains(target);
}

std::map<Iri, std::set<Iri>> inferred_types_by_individual(const Ontology& ontology,
                                                          const SubsumptionClosure& closure) {
    std::map<Iri, std::set<Iri>> out;
    for (const auto& [individual, types] : base_types(ontology)) {
        std::set<Iri>& inferred = out[individual];
        for (const auto& t : types) {
            if (!closure.knows(t)) {
                inferred.insert(t);
                continue;
            }
            for (const auto& sup : closure.reachable(t)) {
                const auto& members = closure.equivalents(sup);
                inferred.insert(members.begin(), members.end());
            }
        }
    }
    return out;
}

std::set<std::pair<Iri, Iri>> infer_types(const Ontology& ontology, const SubsumptionClosure& closure) {
    std::set<std::pair<Iri, Iri>> out;
    for (const auto& [individual, types] : inferred_types_by_individual(ontology, closure)) {
        for (const auto& t : types) {
            out.emplace(individual, t);
        }
    }
    return out;
}

ConsistencyReport check_consistency(const Ontology& ontology) {
    ConsistencyReport report;
    std::vector<const Axiom*> disjoint;
    for (const auto& ax : ontology.tbox) {
        if (ax.kind() == AxiomKind::DisjointWith) {
            disjoint.push_back(&ax);
        }
    }
    if (disjoint.empty()) {
        return report;
    }

    SubsumptionClosure closure = subsumption_closure(ontology);
    AxiomGraph graph(ontology);

    auto reaches = [&](const Iri& from, const Iri& to) {
        return closure.reachable(from).contains(closure.canon(to));
    };

    for (const auto& [rep, sups] : closure.reachable_map()) {
        for (const Axiom* ax : disjoint) {
            if (!sups.contains(closure.canon(ax->subject())) || !sups.contains(closure.canon(ax->object()))) {
                continue;
            }
            for (const auto& member : closure.equivalents(rep)) {
                report.unsatisfiable_classes.insert(member);
                report.witnesses.push_back(Witness{ConflictSubject::Class, member, *ax,
                                                   *graph.chain(member, ax->subject()),
                                                   *graph.chain(member, ax->object())});
            }
        }
    }

    for (const auto& [individual, types] : base_types(ontology)) {
        for (const Axiom* ax : disjoint) {
            std::optional<Iri> base_a;
            std::optional<Iri> base_b;
            for (const auto& t : types) {
                if (!base_a && reaches(t, ax->subject())) {
                    base_a = t;
                }
                if (!base_b && reaches(t, ax->object())) {
                    base_b = t;
                }
            }
            if (!base_a || !base_b) {
                continue;
            }
            report.conflicting_individuals.insert({individual, ax->subject(), ax->object()});
            report.witnesses.push_back(Witness{ConflictSubject::Individual, individual, *ax,
                                               *graph.chain(*base_a, ax->subject()),
                                               *graph.chain(*base_b, ax->object())});
        }
    }

    std::sort(report.witnesses.begin(), report.witnesses.end(), witness_less);
    report.consistent = report.unsatisfiable_classes.empty() && report.conflicting_individuals.empty();
    return report;
}

}  // namespace skoo
