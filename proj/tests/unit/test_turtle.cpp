#include <random>

#include "doctest.h"
#include "skoo/turtle.hpp"
#include "support/files.hpp"
#include "support/generators.hpp"

using namespace skoo;

namespace {

const std::string pre = "@prefix ex: <http://example.org/> .\n";

Ontology parse_ok(const std::string& text) {
    ParseResult r = parse_turtle(text);
    for (const auto& d : r.diagnostics) {
        INFO(d.format());
    }
    REQUIRE(r.ok());
    return r.ontology;
}

const Iri ex(const std::string& local) { return Iri("http://example.org/" + local); }

}  // namespace

TEST_CASE("one subclass statement gives one SubClassOf axiom") {
    Ontology o = parse_ok(
        "@prefix skoo: <http://purl.org/net/skoo#> . skoo:Proof rdfs:subClassOf skoo:Sci_Knowledge_Item .");
    REQUIRE(o.tbox.size() == 1);
    const Axiom& ax = *o.tbox.begin();
    CHECK(ax.kind() == AxiomKind::SubClassOf);
    CHECK(ax.subject() == Iri("http://purl.org/net/skoo#Proof"));
    CHECK(ax.object() == Iri("http://purl.org/net/skoo#Sci_Knowledge_Item"));
    CHECK(o.abox.empty());
}

TEST_CASE("empty input") {
    ParseResult r = parse_turtle("");
    CHECK(r.ok());
    CHECK(r.diagnostics.empty());
    CHECK(r.ontology.empty());
    CHECK(r.ontology.prefixes.empty());

    ParseResult ws = parse_turtle("  \n# only a comment\n\t\n");
    CHECK(ws.diagnostics.empty());
    CHECK(ws.ontology.empty());
}

TEST_CASE("the alignment file has exactly 19 subclass/equivalence axioms") {
    Ontology o = parse_ok(testfs::read(testfs::schema_dir() / "alignment.ttl"));
    std::size_t n = 0;
    for (const auto& ax : o.tbox) {
        n += (ax.kind() == AxiomKind::SubClassOf || ax.kind() == AxiomKind::EquivalentClass) ? 1 : 0;
    }
    CHECK(n == 19);
    CHECK(o.tbox.size() == 19);
    CHECK(o.abox.empty());
}

TEST_CASE("predicates map to axiom and assertion kinds") {
    Ontology o = parse_ok(pre +
                          "ex:A owl:equivalentClass ex:B .\n"
                          "ex:C owl:disjointWith ex:A .\n"
                          "ex:p rdfs:domain ex:A ; rdfs:range ex:B .\n"
                          "ex:A a owl:Class .\n"
                          "ex:p a owl:ObjectProperty .\n"
                          "ex:q a owl:DatatypeProperty .\n"
                          "ex:K a rdfs:Class .\n"
                          "ex:i a ex:A ; rdf:type ex:C ; ex:p ex:j ; ex:q \"lit\" .\n");
    CHECK(o.tbox.contains(Axiom::equivalent(ex("A"), ex("B"))));
    CHECK(o.tbox.contains(Axiom::disjoint(ex("A"), ex("C"))));
    CHECK(o.tbox.contains(Axiom::domain(ex("p"), ex("A"))));
    CHECK(o.tbox.contains(Axiom::range(ex("p"), ex("B"))));
    CHECK(o.tbox.size() == 4);
    CHECK(o.declared_classes == std::set<Iri>{ex("A"), ex("K")});
    CHECK(o.declared_properties == std::set<Iri>{ex("p"), ex("q")});
    CHECK(o.abox.contains(Assertion::type_of(ex("i"), ex("A"))));
    CHECK(o.abox.contains(Assertion::type_of(ex("i"), ex("C"))));
    CHECK(o.abox.contains(Assertion::relation(ex("i"), ex("p"), ex("j"))));
    CHECK(o.abox.contains(Assertion::relation(ex("i"), ex("q"), Literal{"lit"})));
    CHECK(o.abox.size() == 4);
}

TEST_CASE("object and predicate-object lists") {
    Ontology o = parse_ok(pre + "ex:a ex:p ex:b , ex:c ; ex:q ex:d ;\n  ex:r ex:e , ex:f ; .");
    CHECK(o.abox.size() == 5);
    CHECK(o.abox.contains(Assertion::relation(ex("a"), ex("r"), ex("f"))));
}

TEST_CASE("PREFIX directive, absolute IRIs and the empty prefix") {
    Ontology o = parse_ok("PREFIX : <http://example.org/>\nprefix x: <http://x.example/>\n"
                          ":a <http://example.org/p> x:b .");
    CHECK(o.abox.contains(Assertion::relation(ex("a"), ex("p"), Iri("http://x.example/b"))));
}

TEST_CASE("string literals keep their lexical form") {
    Ontology o = parse_ok(pre +
                          "ex:a ex:p \"  spaced  \" , 'single' , \"esc \\\"q\\\" \\\\ \\n \\t \\u00e9\" .\n"
                          "ex:a ex:q \"\"\"multi\nline \"quoted\" \"\"\" , '''also\n''' .\n");
    auto has = [&](const char* p, const std::string& lex) {
        return o.abox.contains(Assertion::relation(ex("a"), ex(p), Literal{lex}));
    };
    CHECK(has("p", "  spaced  "));
    CHECK(has("p", "single"));
    CHECK(has("p", "esc \"q\" \\ \n \t \xc3\xa9"));
    CHECK(has("q", "multi\nline \"quoted\" "));
    CHECK(has("q", "also\n"));
}

TEST_CASE("local names with dots, dashes and digits") {
    Ontology o = parse_ok(pre + "ex:a.b ex:p-1 ex:c.\nex:d ex:p ex:e1 .");
    CHECK(o.abox.contains(Assertion::relation(ex("a.b"), ex("p-1"), ex("c"))));
    CHECK(o.abox.contains(Assertion::relation(ex("d"), ex("p"), ex("e1"))));
}

TEST_CASE("syntax errors carry line and column") {
    std::string text = pre + "ex:a ex:p ex:b .\nex:c ex:p ? .\n";
    ParseResult r = parse_turtle(text);
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Severity::Error);
    CHECK(r.diagnostics[0].line == 3);
    CHECK(r.diagnostics[0].column == 11);
    CHECK(r.diagnostics[0].format().rfind("3:11: error:", 0) == 0);
}

TEST_CASE("columns count code points") {
    ParseResult r = parse_turtle(pre + "ex:a ex:p \"\xc3\xa9\xe2\x88\x80\" ?\n");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].line == 2);
    CHECK(r.diagnostics[0].column == 16);
}

TEST_CASE("diagnostic positions stay inside the input") {
    for (std::string bad : {pre + "ex:a ex:p", pre + "ex:a ex:p \"open", std::string("@prefix ex <http://e/> ."),
                            pre + "ex:a ex:p ex:b", std::string("\n\n")}) {
        ParseResult r = parse_turtle(bad);
        std::size_t lines = 1 + static_cast<std::size_t>(std::count(bad.begin(), bad.end(), '\n'));
        for (const auto& d : r.diagnostics) {
            CHECK(d.line >= 1);
            CHECK(d.line <= lines);
            CHECK(d.column >= 1);
        }
    }
    CHECK_FALSE(parse_turtle(pre + "ex:a ex:p").ok());
    CHECK_FALSE(parse_turtle(pre + "ex:a ex:p ex:b").ok());
    CHECK_FALSE(parse_turtle(pre + "ex:a ex:p \"open").ok());
}

TEST_CASE("an error never corrupts earlier statements") {
    std::string good = pre + "ex:a ex:p ex:b .\nex:A rdfs:subClassOf ex:B .\n";
    Ontology before = parse_ok(good);
    ParseResult r = parse_turtle(good + "ex:c ex:p ex:d ; ex:q _:blank .\nex:e ex:p ex:f .\n");
    CHECK_FALSE(r.ok());
    for (const auto& ax : before.tbox) {
        CHECK(r.ontology.tbox.contains(ax));
    }
    for (const auto& as : before.abox) {
        CHECK(r.ontology.abox.contains(as));
    }
    // The faulty statement is dropped as a whole; parsing resumes after it.
    CHECK_FALSE(r.ontology.abox.contains(Assertion::relation(ex("c"), ex("p"), ex("d"))));
    CHECK(r.ontology.abox.contains(Assertion::relation(ex("e"), ex("p"), ex("f"))));
}

TEST_CASE("unsupported Turtle features are errors") {
    for (const std::string body : {"ex:a ex:p _:b .", "ex:a ex:p [ ex:q ex:r ] .", "ex:a ex:p ( ex:b ) .",
                                   "ex:a ex:p 42 .", "ex:a ex:p true .", "ex:a ex:p \"x\"@en .",
                                   "ex:a ex:p \"1\"^^ex:int .", "@base <http://example.org/> ."}) {
        CAPTURE(body);
        CHECK_FALSE(parse_turtle(pre + body).ok());
    }
}

TEST_CASE("prefix and IRI errors") {
    CHECK_FALSE(parse_turtle("@prefix ex: <http://a.example/> .\n@prefix ex: <http://b.example/> .").ok());
    CHECK(parse_turtle("@prefix ex: <http://a.example/> .\n@prefix ex: <http://a.example/> .").ok());
    CHECK_FALSE(parse_turtle("ex:a ex:p ex:b .").ok());  // unbound prefix
    CHECK_FALSE(parse_turtle("<relative> <http://example.org/p> <http://example.org/o> .").ok());
    CHECK_FALSE(parse_turtle(pre + "ex:A rdfs:subClassOf \"literal\" .").ok());
    CHECK_FALSE(parse_turtle(pre + "\"lit\" ex:p ex:b .").ok());
}

TEST_CASE("parse_turtle_strict throws with diagnostics") {
    try {
        parse_turtle_strict(pre + "ex:a ex:p ? .");
        FAIL("expected TurtleError");
    } catch (const TurtleError& e) {
        CHECK(e.diagnostics().size() == 1);
    }
}

TEST_CASE("serializing the empty ontology gives an empty document") {
    CHECK(serialize_turtle(Ontology{}) == "");
    CHECK(parse_turtle(serialize_turtle(Ontology{})).ontology.empty());
}

TEST_CASE("serialization is sorted and deterministic") {
    Ontology o = parse_ok("@prefix z: <http://z.example/> .\n@prefix a: <http://a.example/> .\n"
                          "z:s z:p a:o .\na:s a:p z:o .\n");
    std::string text = serialize_turtle(o);
    CHECK(text.find("@prefix a:") < text.find("@prefix z:"));
    CHECK(text.find("a:s") < text.find("z:s"));
    CHECK(text == serialize_turtle(parse_ok(text)));

    Ontology skoo_o = parse_ok(testfs::read(testfs::schema_dir() / "skoo.ttl"));
    CHECK(serialize_turtle(skoo_o) == serialize_turtle(skoo_o));
}

TEST_CASE("round trip on every shipped Turtle file") {
    for (const auto* name : {"skoo.ttl", "dolce-frag.ttl", "wordnet-frag.ttl", "omdoc-frag.ttl", "alignment.ttl",
                             "fixtures/wille-ch3.ttl"}) {
        CAPTURE(name);
        Ontology o = parse_ok(testfs::read(testfs::schema_dir() / name));
        Ontology back = parse_ok(serialize_turtle(o));
        CHECK(set_equal(back, o));
        CHECK(back.prefixes == o.prefixes);
    }
}

TEST_CASE("round trip on random ontologies") {
    std::mt19937 rng(20240611);
    for (int i = 0; i < 200; ++i) {
        Ontology o = gen::random_ontology(rng);
        std::string text = serialize_turtle(o);
        CAPTURE(text);
        ParseResult r = parse_turtle(text);
        REQUIRE(r.ok());
        CHECK(set_equal(r.ontology, o));
        CHECK(serialize_turtle(r.ontology) == text);
    }
}
