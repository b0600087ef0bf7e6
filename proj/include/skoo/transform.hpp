#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skoo/pattern.hpp"
#include "skoo/visual.hpp"

namespace skoo {

enum class ElementKind { Node, Edge, Tree, List, Text, Shape };

std::string_view to_string(ElementKind kind);

/// A string with `{?var}` placeholders. `{?var|local}` substitutes the local
/// name of the bound IRI; `{?var|tag}` the local name lower-cased with '_'
/// turned into '-' (skoo:Domain_Object -> "domain-object").
class Template {
public:
    Template() = default;

    /// Throws RuleError on an unterminated placeholder, a bad variable name,
    /// or an unknown filter.
    static Template parse(std::string_view text);

    const std::string& source() const noexcept { return source_; }
    std::set<std::string> variables() const;

    /// The variable when the template is exactly "{?var}".
    std::optional<std::string> sole_variable() const;

    /// IRIs render in prefixed form where `prefixes` allows it.
    std::string render(const Binding& binding, const PrefixMap& prefixes) const;

private:
    enum class Filter { None, Local, Tag };
    struct Segment {
        std::string text;  // literal text, or the variable name
        bool is_variable = false;
        Filter filter = Filter::None;
    };

    std::string source_;
    std::vector<Segment> segments_;
};

/// One visual element to instantiate per binding row. Which fields are used
/// depends on the kind:
///   node:  id, label (defaults to id), class
///   edge:  id, from, to, label
///   tree:  id, from (parent), to (child)
///   list:  id, to (item)
///   text:  id, label (content)
///   shape: id, class (rect | ellipse | line)
struct EmitTemplate {
    ElementKind kind = ElementKind::Node;
    Template id;
    Template label;
    Template from;
    Template to;
    Template style_class;
};

/// A pattern term as written in a rule file: "?var", "a", "<abs>",
/// "prefix:local", or a quoted literal. Prefixed names are resolved only
/// when the rule is applied, against the graph's prefixes.
struct RuleTriple {
    std::string subject;
    std::string predicate;
    std::string object;
};

struct RuleTypeConstraint {
    std::string var;
    std::string cls;
    bool transitive = true;
};

struct RulePattern {
    std::vector<RuleTriple> triples;
    std::vector<RuleTypeConstraint> types;

    /// Throws PrefixError for unresolvable names, RuleError for invalid
    /// patterns.
    GraphPattern resolve(const PrefixMap& prefixes) const;

    std::set<std::string> bound_variables() const;
};

struct MappingRule {
    std::string name;
    RulePattern where;
    std::vector<EmitTemplate> emit;
};

/// Parses the JSON rule format. Throws RuleError naming the rule and field
/// for malformed JSON, unknown element kinds, missing fields, and emit
/// variables the pattern does not bind.
std::vector<MappingRule> parse_ruleset(std::string_view text);

/// Instantiates every rule over every match. Re-emitting an identical
/// element is a no-op. A conflicting re-emission, an edge endpoint that no
/// rule emitted, and a rule term that does not resolve against the graph's
/// prefixes throw TransformError. The result is sorted by id.
VisualModel apply_rules(const Ontology& graph, const SubsumptionClosure& closure, const std::vector<MappingRule>& rules);

/// The class hierarchy as a model: one node per canonical class plus a tree
/// rooted at owl:Thing in which every class hangs under its smallest direct
/// superclass.
VisualModel class_hierarchy_model(const Ontology& ontology, const SubsumptionClosure& closure);

}  // namespace skoo
