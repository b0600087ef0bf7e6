#include <algorithm>

#include "doctest.h"
#include "skoo/error.hpp"
#include "skoo/schema.hpp"
#include "skoo/transform.hpp"
#include "skoo/turtle.hpp"

using namespace skoo;

namespace {

Ontology wille_graph() {
    const auto& b = SchemaBundle::embedded();
    return merge(b.skoo, b.fixtures.at("wille-ch3"));
}

VisualModel run(const Ontology& g, std::string_view rules) {
    return apply_rules(g, subsumption_closure(g), parse_ruleset(rules));
}

std::string rule_error(std::string_view text) {
    try {
        parse_ruleset(text);
    } catch (const RuleError& e) {
        return e.what();
    }
    return "";
}

const char* proves_only = R"([{"name": "proves-edge",
  "where": {"triples": [["?proof", "skoo:proves", "?statement"]]},
  "emit": [{"kind": "edge", "id": "{?proof} proves {?statement}", "from": "{?proof}", "to": "{?statement}", "label": "proves"}]}])";

}  // namespace

TEST_CASE("default ruleset") {
    auto rules = parse_ruleset(default_ruleset_text());
    REQUIRE(rules.size() == 4);
    CHECK(rules[0].name == "statement-node");
    CHECK(rules[1].name == "proves-edge");
    CHECK(rules[2].name == "expressed-by-attach");
    CHECK(rules[3].name == "about-edge");
}

TEST_CASE("empty rule list") {
    CHECK(parse_ruleset("[]").empty());
    CHECK(parse_ruleset(" [ ] \n").empty());
}

TEST_CASE("emit variables must be bound by where") {
    std::string msg = rule_error(R"([{"name": "r", "where": {"triples": [["?s", "a", "?t"]]},
        "emit": [{"kind": "node", "id": "{?z}"}]}])");
    CHECK(msg.find("?z") != std::string::npos);
    CHECK(msg.find("'r'") != std::string::npos);
}

TEST_CASE("rule file errors") {
    CHECK_FALSE(rule_error("[").empty());
    CHECK_FALSE(rule_error("{}").empty());
    CHECK_FALSE(rule_error(R"([{"where": {"triples": [["?s","a","?t"]]}, "emit": []}])").empty());
    CHECK(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a","?t"]]},
        "emit": [{"kind": "blob", "id": "{?s}"}]}])").find("blob") != std::string::npos);
    CHECK_FALSE(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a"]]}, "emit": []}])").empty());
    CHECK_FALSE(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a","?t"]]},
        "emit": [{"kind": "node", "id": "{?s"}]}])").empty());
    CHECK_FALSE(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a","?t"]]},
        "emit": [{"kind": "node", "id": "{?s|upper}"}]}])").empty());
    CHECK_FALSE(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a","?t"]],
        "types": [{"var": "?u", "class": "skoo:Theorem", "transitive": true}]}, "emit": []}])").empty());
    CHECK_FALSE(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a","?t"]]},
        "emit": [{"kind": "edge", "id": "{?s}", "from": "{?s}"}]}])").empty());
    CHECK_FALSE(rule_error(R"([{"name": "r", "where": {"triples": [["?s","a","?t"]]}, "emit": []},
        {"name": "r", "where": {"triples": [["?s","a","?t"]]}, "emit": []}])").empty());
}

TEST_CASE("templates") {
    PrefixMap pm;
    pm.bind("skoo", Iri("http://purl.org/net/skoo#"));
    Binding b{{"x", Iri("http://purl.org/net/skoo#Domain_Object")},
              {"y", Iri("http://elsewhere.example/thing")},
              {"l", Literal{"a \"b\""}}};
    CHECK(Template::parse("{?x}").render(b, pm) == "skoo:Domain_Object");
    CHECK(Template::parse("{?x|local}").render(b, pm) == "Domain_Object");
    CHECK(Template::parse("{?x|tag}").render(b, pm) == "domain-object");
    CHECK(Template::parse("{?y} / {?l}").render(b, pm) == "http://elsewhere.example/thing / a \"b\"");
    CHECK(Template::parse("plain").render(b, pm) == "plain");
    CHECK(Template::parse("{?x}").sole_variable() == "x");
    CHECK_FALSE(Template::parse("{?x} ").sole_variable().has_value());
    CHECK(Template::parse("{?x}-{?y|local}").variables() == std::set<std::string>{"x", "y"});
    CHECK_THROWS_AS(Template::parse("{?x"), RuleError);
    CHECK_THROWS_AS(Template::parse("{?}"), RuleError);
}

TEST_CASE("default rules on the wille-ch3 fixture") {
    VisualModel vm = run(wille_graph(), default_ruleset_text());
    CHECK(vm.nodes.size() == 5);
    CHECK(vm.edges.size() == 3);
    std::set<std::string> classes;
    for (const auto& n : vm.nodes) classes.insert(n.style_class);
    CHECK(classes == std::set<std::string>{"law", "equation", "theorem", "notation", "domain-object"});
    std::set<std::string> labels;
    for (const auto& e : vm.edges) labels.insert(e.label);
    CHECK(labels == std::set<std::string>{"isExpressedBy", "isAbout", "denotes"});
    const VisNode* thm = vm.find_node("ex:thm38");
    REQUIRE(thm != nullptr);
    CHECK(thm->label == "thm38");
    CHECK(thm->payload == "http://purl.org/net/skoo/examples/wille-ch3#thm38");
    CHECK(validate_visual_model(vm).empty());
    CHECK(to_json(vm) == to_json(run(wille_graph(), default_ruleset_text())));
}

TEST_CASE("empty ruleset gives an empty model") {
    CHECK(run(wille_graph(), "[]").empty());
}

TEST_CASE("an edge whose endpoints no rule emits is a dangling error") {
    Ontology g = merge(skoo_ontology(), parse_turtle_strict("@prefix ex: <http://example.org/> .\n"
                                                            "@prefix skoo: <http://purl.org/net/skoo#> .\n"
                                                            "ex:p a skoo:Proof .\nex:t a skoo:Theorem .\n"
                                                            "ex:p skoo:proves ex:t .\n"));
    CHECK_THROWS_AS(run(g, proves_only), TransformError);
    VisualModel full = run(g, default_ruleset_text());
    CHECK(full.nodes.size() == 2);
    REQUIRE(full.edges.size() == 1);
    CHECK(full.edges[0].label == "proves");
}

TEST_CASE("re-emission: identical is a no-op, conflicting is an error") {
    Ontology g = wille_graph();
    const char* twice = R"([
      {"name": "a", "where": {"triples": [["?s", "a", "skoo:Theorem"]]}, "emit": [{"kind": "node", "id": "{?s}", "class": "t"}]},
      {"name": "b", "where": {"triples": [["?s", "a", "skoo:Theorem"]]}, "emit": [{"kind": "node", "id": "{?s}", "class": "t"}]}])";
    CHECK(run(g, twice).nodes.size() == 1);
    const char* clash = R"([
      {"name": "a", "where": {"triples": [["?s", "a", "skoo:Theorem"]]}, "emit": [{"kind": "node", "id": "{?s}", "class": "t"}]},
      {"name": "b", "where": {"triples": [["?s", "a", "skoo:Theorem"]]}, "emit": [{"kind": "node", "id": "{?s}", "class": "other"}]}])";
    CHECK_THROWS_AS(run(g, clash), TransformError);
    const char* kinds = R"([
      {"name": "a", "where": {"triples": [["?s", "a", "skoo:Theorem"]]}, "emit": [{"kind": "node", "id": "x"}, {"kind": "text", "id": "x", "label": "x"}]}])";
    CHECK_THROWS_AS(run(g, kinds), TransformError);
}

TEST_CASE("unresolvable prefixes in rules fail at application time") {
    const char* rules = R"([{"name": "a", "where": {"triples": [["?s", "a", "nope:Theorem"]]}, "emit": []}])";
    auto parsed = parse_ruleset(rules);
    Ontology g = wille_graph();
    CHECK_THROWS_AS(apply_rules(g, subsumption_closure(g), parsed), TransformError);
}

TEST_CASE("rule order does not change the node and edge sets") {
    Ontology g = wille_graph();
    auto rules = parse_ruleset(default_ruleset_text());
    auto c = subsumption_closure(g);
    VisualModel forward = apply_rules(g, c, rules);
    std::reverse(rules.begin(), rules.end());
    CHECK(apply_rules(g, c, rules) == forward);
}

TEST_CASE("every element kind can be emitted") {
    Ontology g = wille_graph();
    const char* rules = R"([
      {"name": "n", "where": {"triples": [["?s", "a", "?t"]], "types": [{"var": "?s", "class": "skoo:Statement", "transitive": true}]},
       "emit": [{"kind": "node", "id": "{?s}", "class": "{?t|tag}"},
                {"kind": "node", "id": "root", "class": "root"},
                {"kind": "tree", "id": "statements", "from": "root", "to": "{?s}"},
                {"kind": "list", "id": "all", "to": "{?s}"},
                {"kind": "text", "id": "note-{?s|local}", "label": "about {?s|local}"},
                {"kind": "shape", "id": "box", "class": "rect"}]}])";
    VisualModel vm = run(g, rules);
    CHECK(vm.nodes.size() == 3);
    REQUIRE(vm.trees.size() == 1);
    CHECK(vm.trees[0].root == "root");
    CHECK(vm.trees[0].children.at("root") == std::vector<std::string>{"ex:dispersionLaw", "ex:thm38"});
    REQUIRE(vm.lists.size() == 1);
    CHECK(vm.lists[0].items.size() == 2);
    CHECK(vm.texts.size() == 2);
    REQUIRE(vm.shapes.size() == 1);
    CHECK(vm.shapes[0].shape == ShapeKind::Rect);
    CHECK(is_valid(vm));
}

TEST_CASE("class hierarchy model") {
    Ontology o = SchemaBundle::embedded().merged_all();
    auto c = subsumption_closure(o);
    VisualModel vm = class_hierarchy_model(o, c);
    CHECK(is_valid(vm));
    REQUIRE(vm.trees.size() == 1);
    const VisTree& t = vm.trees[0];
    CHECK(t.root == "owl:Thing");
    std::set<std::string> seen{t.root};
    for (const auto& [parent, kids] : t.children) {
        for (const auto& k : kids) seen.insert(k);
    }
    CHECK(seen.size() == vm.nodes.size());
    CHECK(vm.find_node("skoo:Sci_Knowledge_Item") != nullptr);
    auto under = [&](const std::string& p, const std::string& k) {
        auto it = t.children.find(p);
        return it != t.children.end() && std::find(it->second.begin(), it->second.end(), k) != it->second.end();
    };
    CHECK(under("skoo:Theorem", "skoo:Corollary"));
    CHECK(under("owl:Thing", "skoo:Domain_Object"));
}
