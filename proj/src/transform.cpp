#include "skoo/transform.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "skoo/error.hpp"

namespace skoo {

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::Node: return "node";
        case ElementKind::Edge: return "edge";
        case ElementKind::Tree: return "tree";
        case ElementKind::List: return "list";
        case ElementKind::Text: return "text";
        case ElementKind::Shape: return "shape";
    }
    return "node";
}

namespace {

std::optional<ElementKind> parse_element_kind(std::string_view name) {
    for (ElementKind k : {ElementKind::Node, ElementKind::Edge, ElementKind::Tree, ElementKind::List, ElementKind::Text,
                          ElementKind::Shape}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

bool is_variable_name(std::string_view name) {
    if (name.empty() || (name[0] >= '0' && name[0] <= '9')) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

std::string local_part(const Term& term, const PrefixMap& prefixes) {
    if (const Iri* iri = std::get_if<Iri>(&term)) {
        if (auto compact = prefixes.compact(*iri)) {
            return compact->substr(compact->find(':') + 1);
        }
        return std::string(iri->local_name());
    }
    return std::get<Literal>(term).lexical;
}

std::string as_tag(std::string text) {
    for (char& c : text) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        } else if (c == '_') {
            c = '-';
        }
    }
    return text;
}

enum class RuleTermKind { Variable, Keyword, Absolute, Prefixed, Literal };

struct ParsedRuleTerm {
    RuleTermKind kind;
    std::string text;  // variable name, IRI, prefixed name, or literal value
};

ParsedRuleTerm classify(const std::string& raw) {
    if (raw.empty()) {
        throw RuleError("empty pattern term");
    }
    if (raw[0] == '?') {
        std::string name = raw.substr(1);
        if (!is_variable_name(name)) {
            throw RuleError("invalid variable name '" + raw + "'");
        }
        return {RuleTermKind::Variable, name};
    }
    if (raw == "a") {
        return {RuleTermKind::Keyword, raw};
    }
    if (raw.size() >= 2 && raw.front() == '<' && raw.back() == '>') {
        std::string iri = raw.substr(1, raw.size() - 2);
        if (!Iri::is_absolute(iri)) {
            throw RuleError("malformed IRI in pattern: '" + raw + "'");
        }
        return {RuleTermKind::Absolute, iri};
    }
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        return {RuleTermKind::Literal, raw.substr(1, raw.size() - 2)};
    }
    if (raw.find(':') == std::string::npos) {
        throw RuleError("pattern term '" + raw + "' is neither a variable, an IRI, a prefixed name, nor a literal");
    }
    return {RuleTermKind::Prefixed, raw};
}

PatternTerm resolve_term(const std::string& raw, const PrefixMap& prefixes) {
    ParsedRuleTerm t = classify(raw);
    switch (t.kind) {
        case RuleTermKind::Variable: return Variable{t.text};
        case RuleTermKind::Keyword: return vocab::rdf_type();
        case RuleTermKind::Absolute: return Iri(t.text);
        case RuleTermKind::Prefixed: return prefixes.expand(t.text);
        case RuleTermKind::Literal: return Literal{t.text};
    }
    throw RuleError("unreachable");
}

std::string strip_question_mark(const std::string& var) {
    return !var.empty() && var[0] == '?' ? var.substr(1) : var;
}

}  // namespace

Template Template::parse(std::string_view text) {
    Template t;
    t.source_ = std::string(text);
    std::string literal;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '{' && i + 1 < text.size() && text[i + 1] == '?') {
            auto close = text.find('}', i);
            if (close == std::string_view::npos) {
                throw RuleError("unterminated placeholder in template '" + t.source_ + "'");
            }
            std::string_view body = text.substr(i + 2, close - i - 2);
            Segment seg;
            seg.is_variable = true;
            auto bar = body.find('|');
            seg.text = std::string(body.substr(0, bar));
            if (bar != std::string_view::npos) {
                std::string_view filter = body.substr(bar + 1);
                if (filter == "local") {
                    seg.filter = Filter::Local;
                } else if (filter == "tag") {
                    seg.filter = Filter::Tag;
                } else {
                    throw RuleError("unknown template filter '" + std::string(filter) + "' in '" + t.source_ + "'");
                }
            }
            if (!is_variable_name(seg.text)) {
                throw RuleError("invalid variable '?" + seg.text + "' in template '" + t.source_ + "'");
            }
            if (!literal.empty()) {
                t.segments_.push_back({std::move(literal), false, Filter::None});
                literal.clear();
            }
            t.segments_.push_back(std::move(seg));
            i = close + 1;
        } else {
            literal += text[i++];
        }
    }
    if (!literal.empty()) {
        t.segments_.push_back({std::move(literal), false, Filter::None});
    }
    return t;
}

std::set<std::string> Template::variables() const {
    std::set<std::string> out;
    for (const auto& seg : segments_) {
        if (seg.is_variable) {
            out.insert(seg.text);
        }
    }
    return out;
}

std::optional<std::string> Template::sole_variable() const {
    if (segments_.size() == 1 && segments_[0].is_variable && segments_[0].filter == Filter::None) {
        return segments_[0].text;
    }
    return std::nullopt;
}

std::string Template::render(const Binding& binding, const PrefixMap& prefixes) const {
    std::string out;
    for (const auto& seg : segments_) {
        if (!seg.is_variable) {
            out += seg.text;
            continue;
        }
        auto it = binding.find(seg.text);
        if (it == binding.end()) {
            throw TransformError("template '" + source_ + "' references unbound ?" + seg.text);
        }
        const Term& value = it->second;
        switch (seg.filter) {
            case Filter::None:
                if (const Iri* iri = std::get_if<Iri>(&value)) {
                    out += prefixes.display(*iri);
                } else {
                    out += std::get<Literal>(value).lexical;
                }
                break;
            case Filter::Local: out += local_part(value, prefixes); break;
            case Filter::Tag: out += as_tag(local_part(value, prefixes)); break;
        }
    }
    return out;
}

std::set<std::string> RulePattern::bound_variables() const {
    std::set<std::string> out;
    for (const auto& t : triples) {
        for (const std::string* raw : {&t.subject, &t.predicate, &t.object}) {
            if (!raw->empty() && (*raw)[0] == '?') {
                out.insert(raw->substr(1));
            }
        }
    }
    return out;
}

GraphPattern RulePattern::resolve(const PrefixMap& prefixes) const {
    GraphPattern out;
    for (const auto& t : triples) {
        out.triples.push_back({resolve_term(t.subject, prefixes), resolve_term(t.predicate, prefixes),
                               resolve_term(t.object, prefixes)});
    }
    for (const auto& c : types) {
        out.types.push_back({strip_question_mark(c.var), prefixes.resolve(c.cls), c.transitive});
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Rule file parsing

namespace {

using json = nlohmann::json;

[[noreturn]] void rule_error(const std::string& rule, const std::string& message) {
    throw RuleError("rule '" + rule + "': " + message);
}

std::string required_string(const json& obj, const char* key, const std::string& rule) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        rule_error(rule, std::string("missing string field '") + key + "'");
    }
    return it->get<std::string>();
}

Template template_field(const json& obj, const char* key, const std::string& rule, bool required,
                        const std::string& fallback = {}) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) {
            rule_error(rule, std::string("emit entry needs '") + key + "'");
        }
        return Template::parse(fallback);
    }
    if (!it->is_string()) {
        rule_error(rule, std::string("field '") + key + "' must be a string");
    }
    try {
        return Template::parse(it->get<std::string>());
    } catch (const RuleError& e) {
        rule_error(rule, e.what());
    }
}

RulePattern parse_where(const json& where, const std::string& rule) {
    if (!where.is_object()) {
        rule_error(rule, "'where' must be an object");
    }
    RulePattern pattern;
    auto triples = where.find("triples");
    if (triples == where.end() || !triples->is_array() || triples->empty()) {
        rule_error(rule, "'where.triples' must be a non-empty array");
    }
    for (const auto& t : *triples) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string()) {
            rule_error(rule, "each triple must be an array of three strings");
        }
        pattern.triples.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
    }
    if (auto types = where.find("types"); types != where.end()) {
        if (!types->is_array()) {
            rule_error(rule, "'where.types' must be an array");
        }
        for (const auto& c : *types) {
            if (!c.is_object()) {
                rule_error(rule, "each type constraint must be an object");
            }
            RuleTypeConstraint tc{required_string(c, "var", rule), required_string(c, "class", rule), true};
            if (auto tr = c.find("transitive"); tr != c.end()) {
                if (!tr->is_boolean()) {
                    rule_error(rule, "'transitive' must be a boolean");
                }
                tc.transitive = tr->get<bool>();
            }
            pattern.types.push_back(std::move(tc));
        }
    }

    // Structural checks that need no prefixes; resolution happens at apply time.
    std::set<std::string> node_vars;
    std::set<std::string> predicate_vars;
    try {
        for (const auto& t : pattern.triples) {
            ParsedRuleTerm s = classify(t.subject);
            ParsedRuleTerm p = classify(t.predicate);
            ParsedRuleTerm o = classify(t.object);
            if (s.kind == RuleTermKind::Literal || p.kind == RuleTermKind::Literal) {
                rule_error(rule, "literal in subject or predicate position");
            }
            if (s.kind == RuleTermKind::Variable) node_vars.insert(s.text);
            if (o.kind == RuleTermKind::Variable) node_vars.insert(o.text);
            if (p.kind == RuleTermKind::Variable) predicate_vars.insert(p.text);
        }
    } catch (const RuleError& e) {
        rule_error(rule, e.what());
    }
    for (const auto& v : predicate_vars) {
        if (node_vars.contains(v)) {
            rule_error(rule, "variable ?" + v + " is used both as a predicate and as a subject/object");
        }
    }
    for (const auto& c : pattern.types) {
        std::string name = strip_question_mark(c.var);
        if (!node_vars.contains(name)) {
            rule_error(rule, "type-constrained variable ?" + name + " does not appear in the triples");
        }
        if (c.cls.empty() || (c.cls.front() != '<' && c.cls.find(':') == std::string::npos)) {
            rule_error(rule, "type constraint class '" + c.cls + "' is not an IRI or prefixed name");
        }
    }
    return pattern;
}

EmitTemplate parse_emit(const json& e, const std::string& rule) {
    if (!e.is_object()) {
        rule_error(rule, "each emit entry must be an object");
    }
    std::string kind_name = required_string(e, "kind", rule);
    auto kind = parse_element_kind(kind_name);
    if (!kind) {
        rule_error(rule, "unknown element kind '" + kind_name + "'");
    }
    EmitTemplate t;
    t.kind = *kind;
    t.id = template_field(e, "id", rule, true);
    switch (t.kind) {
        case ElementKind::Node:
            t.label = template_field(e, "label", rule, false, t.id.source());
            t.style_class = template_field(e, "class", rule, false);
            break;
        case ElementKind::Edge:
            t.from = template_field(e, "from", rule, true);
            t.to = template_field(e, "to", rule, true);
            t.label = template_field(e, "label", rule, false);
            break;
        case ElementKind::Tree:
            t.from = template_field(e, "from", rule, true);
            t.to = template_field(e, "to", rule, true);
            break;
        case ElementKind::List:
            t.to = template_field(e, "to", rule, true);
            break;
        case ElementKind::Text:
            t.label = template_field(e, "label", rule, true);
            break;
        case ElementKind::Shape:
            t.style_class = template_field(e, "class", rule, true);
            if (t.style_class.variables().empty() && !parse_shape_kind(t.style_class.source())) {
                rule_error(rule, "unknown shape '" + t.style_class.source() + "' (expected rect, ellipse or line)");
            }
            break;
    }
    return t;
}

}  // namespace

std::vector<MappingRule> parse_ruleset(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw RuleError(std::string("malformed rule file: ") + e.what());
    }
    if (!doc.is_array()) {
        throw RuleError("rule file must be a JSON array of rules");
    }
    std::vector<MappingRule> rules;
    std::set<std::string> names;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& r = doc[i];
        std::string fallback = "#" + std::to_string(i);
        if (!r.is_object()) {
            rule_error(fallback, "must be an object");
        }
        MappingRule rule;
        rule.name = required_string(r, "name", fallback);
        if (!names.insert(rule.name).second) {
            rule_error(rule.name, "duplicate rule name");
        }
        auto where = r.find("where");
        if (where == r.end()) {
            rule_error(rule.name, "missing 'where'");
        }
        rule.where = parse_where(*where, rule.name);
        auto emit = r.find("emit");
        if (emit == r.end() || !emit->is_array()) {
            rule_error(rule.name, "'emit' must be an array");
        }
        for (const auto& e : *emit) {
            rule.emit.push_back(parse_emit(e, rule.name));
        }

        std::set<std::string> bound = rule.where.bound_variables();
        for (const auto& e : rule.emit) {
            for (const Template* t : {&e.id, &e.label, &e.from, &e.to, &e.style_class}) {
                for (const auto& v : t->variables()) {
                    if (!bound.contains(v)) {
                        rule_error(rule.name, "emit references ?" + v + ", which 'where' does not bind");
                    }
                }
            }
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

// ---------------------------------------------------------------------------
// Rule application

namespace {

struct TreeBuilder {
    std::map<std::string, std::vector<std::string>> children;
    std::map<std::string, std::string> parent_of;
};

class ModelBuilder {
public:
    explicit ModelBuilder(const PrefixMap& prefixes) : prefixes_(prefixes) {}

    void emit(const MappingRule& rule, const EmitTemplate& t, const Binding& row) {
        std::string id = t.id.render(row, prefixes_);
        if (id.empty()) {
            fail(rule, "emitted an element with an empty id");
        }
        switch (t.kind) {
            case ElementKind::Node: {
                VisNode node{id, t.label.render(row, prefixes_), t.style_class.render(row, prefixes_), std::nullopt};
                if (auto var = t.id.sole_variable()) {
                    if (const Iri* iri = std::get_if<Iri>(&row.at(*var))) {
                        node.payload = iri->str();
                    }
                }
                put(rule, nodes_, std::move(node), ElementKind::Node);
                break;
            }
            case ElementKind::Edge:
                put(rule, edges_,
                    VisEdge{id, t.from.render(row, prefixes_), t.to.render(row, prefixes_), t.label.render(row, prefixes_)},
                    ElementKind::Edge);
                break;
            case ElementKind::Tree: {
                claim(rule, id, ElementKind::Tree);
                TreeBuilder& tree = trees_[id];
                std::string parent = t.from.render(row, prefixes_);
                std::string child = t.to.render(row, prefixes_);
                auto [it, inserted] = tree.parent_of.emplace(child, parent);
                if (!inserted) {
                    if (it->second != parent) {
                        fail(rule, "tree " + id + ": '" + child + "' already has parent '" + it->second +
                                       "', cannot also hang under '" + parent + "'");
                    }
                    break;
                }
                tree.children[parent].push_back(child);
                break;
            }
            case ElementKind::List: {
                claim(rule, id, ElementKind::List);
                std::vector<std::string>& items = lists_[id];
                std::string item = t.to.render(row, prefixes_);
                if (std::find(items.begin(), items.end(), item) == items.end()) {
                    items.push_back(std::move(item));
                }
                break;
            }
            case ElementKind::Text:
                put(rule, texts_, VisText{id, t.label.render(row, prefixes_)}, ElementKind::Text);
                break;
            case ElementKind::Shape: {
                std::string name = t.style_class.render(row, prefixes_);
                auto shape = parse_shape_kind(name);
                if (!shape) {
                    fail(rule, "unknown shape '" + name + "' for " + id);
                }
                put(rule, shapes_, VisShape{id, *shape}, ElementKind::Shape);
                break;
            }
        }
    }

    VisualModel finish() {
        VisualModel vm;
        for (auto& [id, n] : nodes_) vm.nodes.push_back(std::move(n));
        for (auto& [id, e] : edges_) vm.edges.push_back(std::move(e));
        for (auto& [id, t] : texts_) vm.texts.push_back(std::move(t));
        for (auto& [id, s] : shapes_) vm.shapes.push_back(std::move(s));
        for (auto& [id, items] : lists_) vm.lists.push_back({id, std::move(items)});
        for (auto& [id, tree] : trees_) {
            std::vector<std::string> roots;
            for (const auto& [parent, _] : tree.children) {
                if (!tree.parent_of.contains(parent)) {
                    roots.push_back(parent);
                }
            }
            if (roots.size() != 1) {
                throw TransformError("tree " + id + " has " + std::to_string(roots.size()) + " roots, expected one");
            }
            VisTree vt{id, roots.front(), std::move(tree.children)};
            vm.trees.push_back(std::move(vt));
        }

        std::vector<std::string> dangling;
        for (const auto& e : vm.edges) {
            for (const std::string* end : {&e.from, &e.to}) {
                if (!nodes_.contains(*end)) {
                    dangling.push_back("edge " + e.id + " -> '" + *end + "'");
                }
            }
        }
        if (!dangling.empty()) {
            std::string msg = "dangling edge endpoint(s), no rule emitted a node for:";
            for (const auto& d : dangling) {
                msg += "\n  " + d;
            }
            throw TransformError(msg);
        }
        for (const auto& d : validate_visual_model(vm)) {
            if (d.severity == Severity::Error) {
                throw TransformError("generated model is invalid: " + d.message);
            }
        }
        vm.sort_by_id();
        return vm;
    }

private:
    [[noreturn]] static void fail(const MappingRule& rule, const std::string& message) {
        throw TransformError("rule '" + rule.name + "': " + message);
    }

    void claim(const MappingRule& rule, const std::string& id, ElementKind kind) {
        auto [it, inserted] = kinds_.emplace(id, kind);
        if (!inserted && it->second != kind) {
            fail(rule, "identity '" + id + "' already used by a " + std::string(to_string(it->second)));
        }
    }

    template <typename Element>
    void put(const MappingRule& rule, std::map<std::string, Element>& store, Element element, ElementKind kind) {
        claim(rule, element.id, kind);
        auto [it, inserted] = store.emplace(element.id, element);
        if (!inserted && !(it->second == element)) {
            fail(rule, "conflicting re-emission of " + std::string(to_string(kind)) + " '" + element.id + "'");
        }
    }

    const PrefixMap& prefixes_;
    std::map<std::string, ElementKind> kinds_;
    std::map<std::string, VisNode> nodes_;
    std::map<std::string, VisEdge> edges_;
    std::map<std::string, TreeBuilder> trees_;
    std::map<std::string, std::vector<std::string>> lists_;
    std::map<std::string, VisText> texts_;
    std::map<std::string, VisShape> shapes_;
};

}  // namespace

VisualModel apply_rules(const Ontology& graph, const SubsumptionClosure& closure, const std::vector<MappingRule>& rules) {
    ModelBuilder builder(graph.prefixes);
    for (const auto& rule : rules) {
        GraphPattern pattern;
        try {
            pattern = rule.where.resolve(graph.prefixes);
        } catch (const Error& e) {
            throw TransformError("rule '" + rule.name + "': " + e.what());
        }
        BindingSet rows = match_pattern(graph, closure, pattern);
        for (const auto& row : rows.rows) {
            for (const auto& t : rule.emit) {
                builder.emit(rule, t, row);
            }
        }
    }
    return builder.finish();
}

VisualModel class_hierarchy_model(const Ontology& ontology, const SubsumptionClosure& closure) {
    const PrefixMap& pm = ontology.prefixes;
    auto label_of = [&](const Iri& iri) { return local_part(Term{iri}, pm); };

    const Iri thing = vocab::owl_thing();
    const Iri root_iri = closure.knows(thing) ? closure.canon(thing) : thing;

    std::map<Iri, Iri> parent;
    for (const auto& ax : ontology.tbox) {
        if (ax.kind() != AxiomKind::SubClassOf) {
            continue;
        }
        const Iri& sub = closure.canon(ax.subject());
        const Iri& sup = closure.canon(ax.object());
        if (sub == sup || sub == root_iri) {
            continue;
        }
        auto [it, inserted] = parent.emplace(sub, sup);
        if (!inserted && sup < it->second) {
            it->second = sup;
        }
    }

    VisualModel vm;
    VisTree tree{"classes", pm.display(root_iri), {}};
    vm.nodes.push_back({tree.root, label_of(root_iri), "root", root_iri.str()});
    for (const auto& [rep, _] : closure.reachable_map()) {
        if (rep == root_iri) {
            continue;
        }
        vm.nodes.push_back({pm.display(rep), label_of(rep), "class", rep.str()});
        auto it = parent.find(rep);
        const Iri& up = it == parent.end() ? root_iri : it->second;
        tree.children[pm.display(up)].push_back(pm.display(rep));
    }
    for (auto& [_, kids] : tree.children) {
        std::sort(kids.begin(), kids.end());
    }
    vm.trees.push_back(std::move(tree));
    vm.sort_by_id();
    return vm;
}

}  // namespace skoo
