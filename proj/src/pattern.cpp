#include "skoo/pattern.hpp"

#include <algorithm>
#include <set>

#include "skoo/error.hpp"

namespace skoo {

namespace {

const Variable* as_variable(const PatternTerm& t) { return std::get_if<Variable>(&t); }

Term term_of(const Iri& iri) { return Term{iri}; }

// Per-predicate and per-node indexes over the ABox; TypeOf assertions use
// rdf:type as their predicate.
class TripleIndex {
public:
    explicit TripleIndex(const Ontology& graph) {
        for (const auto& as : graph.abox) {
            all_.push_back(&as);
        }
        for (const Assertion* as : all_) {
            by_predicate_[as->predicate()].push_back(as);
            by_subject_[as->subject()].push_back(as);
            by_object_[as->object()].push_back(as);
            by_predicate_subject_[{as->predicate(), as->subject()}].push_back(as);
            by_predicate_object_[{as->predicate(), as->object()}].push_back(as);
        }
    }

    const std::vector<const Assertion*>& candidates(const Term* s, const Term* p, const Term* o) const {
        const Iri* si = s ? std::get_if<Iri>(s) : nullptr;
        const Iri* pi = p ? std::get_if<Iri>(p) : nullptr;
        if ((s && !si) || (p && !pi)) {
            return none_;  // a literal can only ever be an object
        }
        if (pi) {
            if (si) return lookup(by_predicate_subject_, std::make_pair(*pi, *si));
            if (o) return lookup(by_predicate_object_, std::make_pair(*pi, *o));
            return lookup(by_predicate_, *pi);
        }
        if (si) return lookup(by_subject_, *si);
        if (o) return lookup(by_object_, *o);
        return all_;
    }

private:
    template <typename Map, typename Key>
    const std::vector<const Assertion*>& lookup(const Map& map, const Key& key) const {
        auto it = map.find(key);
        return it == map.end() ? none_ : it->second;
    }

    std::vector<const Assertion*> all_;
    std::vector<const Assertion*> none_;
    std::map<Iri, std::vector<const Assertion*>> by_predicate_;
    std::map<Iri, std::vector<const Assertion*>> by_subject_;
    std::map<Term, std::vector<const Assertion*>> by_object_;
    std::map<std::pair<Iri, Iri>, std::vector<const Assertion*>> by_predicate_subject_;
    std::map<std::pair<Iri, Term>, std::vector<const Assertion*>> by_predicate_object_;
};

class Matcher {
public:
    Matcher(const Ontology& graph, const SubsumptionClosure& closure, const GraphPattern& pattern)
        : pattern_(pattern), index_(graph) {
        bool need_inferred = false;
        bool need_asserted = false;
        for (const auto& c : pattern.types) {
            (c.transitive ? need_inferred : need_asserted) = true;
        }
        if (need_inferred) {
            inferred_ = inferred_types_by_individual(graph, closure);
        }
        if (need_asserted) {
            for (const auto& as : graph.abox) {
                if (as.kind() == AssertionKind::TypeOf) {
                    asserted_[as.subject()].insert(*as.object_iri());
                }
            }
        }
    }

    std::set<Binding> run() {
        Binding binding;
        step(0, binding);
        return std::move(results_);
    }

private:
    // Resolves a pattern position against the current binding; nullptr when
    // it is an unbound variable.
    const Term* resolve(const PatternTerm& t, const Binding& binding, Term& scratch) const {
        if (const Variable* v = as_variable(t)) {
            auto it = binding.find(v->name);
            return it == binding.end() ? nullptr : &it->second;
        }
        if (const Iri* iri = std::get_if<Iri>(&t)) {
            scratch = term_of(*iri);
        } else {
            scratch = Term{std::get<Literal>(t)};
        }
        return &scratch;
    }

    // Binds `t` to `value`, or checks agreement when already bound. Records
    // newly bound names in `added`.
    static bool unify(const PatternTerm& t, const Term& value, Binding& binding, std::vector<std::string>& added) {
        if (const Variable* v = as_variable(t)) {
            auto [it, inserted] = binding.emplace(v->name, value);
            if (inserted) {
                added.push_back(v->name);
                return true;
            }
            return it->second == value;
        }
        if (const Iri* iri = std::get_if<Iri>(&t)) {
            return value == term_of(*iri);
        }
        return value == Term{std::get<Literal>(t)};
    }

    void step(std::size_t i, Binding& binding) {
        if (i == pattern_.triples.size()) {
            if (satisfies_types(binding)) {
                results_.insert(binding);
            }
            return;
        }
        const TriplePattern& tp = pattern_.triples[i];
        Term s_scratch{Literal{}};
        Term p_scratch{Literal{}};
        Term o_scratch{Literal{}};
        const Term* s = resolve(tp.subject, binding, s_scratch);
        const Term* p = resolve(tp.predicate, binding, p_scratch);
        const Term* o = resolve(tp.object, binding, o_scratch);

        for (const Assertion* as : index_.candidates(s, p, o)) {
            std::vector<std::string> added;
            bool ok = unify(tp.subject, term_of(as->subject()), binding, added) &&
                      unify(tp.predicate, term_of(as->predicate()), binding, added) &&
                      unify(tp.object, as->object(), binding, added);
            if (ok) {
                step(i + 1, binding);
            }
            for (const auto& name : added) {
                binding.erase(name);
            }
        }
    }

    bool satisfies_types(const Binding& binding) const {
        for (const auto& c : pattern_.types) {
            auto it = binding.find(c.var);
            if (it == binding.end()) {
                return false;
            }
            const Iri* individual = std::get_if<Iri>(&it->second);
            if (individual == nullptr) {
                return false;
            }
            const auto& types = c.transitive ? inferred_ : asserted_;
            auto found = types.find(*individual);
            if (found == types.end() || !found->second.contains(c.cls)) {
                return false;
            }
        }
        return true;
    }

    const GraphPattern& pattern_;
    TripleIndex index_;
    std::map<Iri, std::set<Iri>> inferred_;
    std::map<Iri, std::set<Iri>> asserted_;
    std::set<Binding> results_;
};

void collect_variable(const PatternTerm& t, std::set<std::string>& out) {
    if (const Variable* v = as_variable(t)) {
        out.insert(v->name);
    }
}

}  // namespace

std::vector<std::string> GraphPattern::variables() const {
    std::set<std::string> names;
    for (const auto& tp : triples) {
        collect_variable(tp.subject, names);
        collect_variable(tp.predicate, names);
        collect_variable(tp.object, names);
    }
    for (const auto& c : types) {
        names.insert(c.var);
    }
    return {names.begin(), names.end()};
}

void GraphPattern::validate() const {
    std::set<std::string> node_vars;
    std::set<std::string> predicate_vars;
    for (const auto& tp : triples) {
        collect_variable(tp.subject, node_vars);
        collect_variable(tp.object, node_vars);
        collect_variable(tp.predicate, predicate_vars);
        if (std::holds_alternative<Literal>(tp.subject) || std::holds_alternative<Literal>(tp.predicate)) {
            throw RuleError("literal in subject or predicate position");
        }
    }
    for (const auto& name : predicate_vars) {
        if (node_vars.contains(name)) {
            throw RuleError("variable ?" + name + " is used both as a predicate and as a subject/object");
        }
    }
    for (const auto& c : types) {
        if (!node_vars.contains(c.var)) {
            throw RuleError("type-constrained variable ?" + c.var + " does not appear as a subject or object");
        }
    }
}

BindingSet match_pattern(const Ontology& graph, const SubsumptionClosure& closure, const GraphPattern& pattern) {
    BindingSet out;
    out.variables = pattern.variables();
    if (pattern.triples.empty()) {
        return out;
    }
    std::set<Binding> rows = Matcher(graph, closure, pattern).run();

    // std::map orders keys by name, so comparing Bindings compares the
    // values in variable-name order.
    out.rows.assign(rows.begin(), rows.end());
    return out;
}

}  // namespace skoo
