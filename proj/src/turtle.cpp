#include "skoo/turtle.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace skoo {

std::string_view to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

std::string ParseDiagnostic::format() const {
    std::ostringstream os;
    os << line << ':' << column << ": " << to_string(severity) << ": " << message;
    return os.str();
}

bool ParseResult::ok() const noexcept {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) {
            return false;
        }
    }
    return true;
}

namespace {

std::string join_diagnostics(const std::vector<ParseDiagnostic>& diagnostics) {
    std::string out = "turtle parse failed";
    for (const auto& d : diagnostics) {
        out += "\n  " + d.format();
    }
    return out;
}

}  // namespace

TurtleError::TurtleError(std::vector<ParseDiagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

// rdf:, rdfs:, owl: and xsd: resolve even when the document never declares
// them. An explicit @prefix for one of these labels takes precedence.
std::optional<std::string> standard_namespace(std::string_view label) {
    if (label == "rdf") return "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    if (label == "rdfs") return "http://www.w3.org/2000/01/rdf-schema#";
    if (label == "owl") return "http://www.w3.org/2002/07/owl#";
    if (label == "xsd") return "http://www.w3.org/2001/XMLSchema#";
    return std::nullopt;
}

enum class Tok {
    IriRef,     // <...>, text holds the content between the brackets
    PName,      // prefix:local or prefix:
    A,          // the keyword `a`
    AtPrefix,   // @prefix
    SparqlPrefix,
    String,     // text holds the unescaped value
    Dot,
    Semicolon,
    Comma,
    Unsupported,  // recognized but outside the subset; text holds the reason
    Invalid,      // lexical error; text holds the message
    End,
};

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Position pos;
};

bool is_name_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
           c == '.' || c == ':' || c >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space_and_comments();
        Token tok;
        tok.pos = pos_;
        if (at_end()) {
            tok.kind = Tok::End;
            tok.pos = last_pos_;
            return tok;
        }
        char c = peek();
        switch (c) {
            case '<': return lex_iri(tok);
            case '"':
            case '\'': return lex_string(tok);
            case '.':
                advance();
                tok.kind = Tok::Dot;
                return tok;
            case ';':
                advance();
                tok.kind = Tok::Semicolon;
                return tok;
            case ',':
                advance();
                tok.kind = Tok::Comma;
                return tok;
            case '[':
                advance();
                return unsupported(tok, "blank nodes ('[') are not supported");
            case '(':
                advance();
                return unsupported(tok, "collections ('(') are not supported");
            case '@': return lex_at(tok);
            default: break;
        }
        if (c == '_' && peek(1) == ':') {
            consume_name();
            return unsupported(tok, "blank node labels ('_:') are not supported");
        }
        if ((c >= '0' && c <= '9') || c == '+' || c == '-') {
            advance();
            consume_name();
            return unsupported(tok, "numeric literals are not supported");
        }
        if (is_name_byte(static_cast<unsigned char>(c))) {
            return lex_name(tok);
        }
        advance();
        tok.kind = Tok::Invalid;
        tok.text = std::string("unexpected character '") + c + "'";
        return tok;
    }

private:
    bool at_end() const { return offset_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
    }

    // Columns count code points: continuation bytes never advance them.
    void advance() {
        auto c = static_cast<unsigned char>(text_[offset_]);
        last_pos_ = pos_;
        ++offset_;
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((c & 0xC0) != 0x80) {
            ++pos_.column;
        }
    }

    void skip_space_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else {
                break;
            }
        }
    }

    // A '.' belongs to the name only when a non-dot name byte follows the
    // run of dots; otherwise it terminates the statement.
    std::string consume_name() {
        std::string out;
        while (!at_end() && is_name_byte(static_cast<unsigned char>(peek()))) {
            if (peek() == '.') {
                std::size_t k = offset_;
                while (k < text_.size() && text_[k] == '.') {
                    ++k;
                }
                if (k >= text_.size() || !is_name_byte(static_cast<unsigned char>(text_[k]))) {
                    break;
                }
            }
            out += peek();
            advance();
        }
        return out;
    }

    static Token unsupported(Token tok, std::string reason) {
        tok.kind = Tok::Unsupported;
        tok.text = std::move(reason);
        return tok;
    }

    Token lex_iri(Token tok) {
        advance();  // '<'
        std::string value;
        while (!at_end() && peek() != '>') {
            char c = peek();
            if (c == '\n' || c == ' ') {
                tok.kind = Tok::Invalid;
                tok.text = "unterminated IRI reference";
                return tok;
            }
            value += c;
            advance();
        }
        if (at_end()) {
            tok.kind = Tok::Invalid;
            tok.text = "unterminated IRI reference";
            return tok;
        }
        advance();  // '>'
        tok.kind = Tok::IriRef;
        tok.text = std::move(value);
        return tok;
    }

    Token lex_at(Token tok) {
        advance();  // '@'
        std::string word;
        while (!at_end() && ((peek() >= 'a' && peek() <= 'z') || (peek() >= 'A' && peek() <= 'Z') || peek() == '-')) {
            word += peek();
            advance();
        }
        if (word == "prefix") {
            tok.kind = Tok::AtPrefix;
            return tok;
        }
        if (word == "base") {
            return unsupported(tok, "@base is not supported; use absolute IRIs");
        }
        return unsupported(tok, "language tags ('@" + word + "') are not supported");
    }

    Token lex_name(Token tok) {
        std::string word = consume_name();
        if (word.find(':') != std::string::npos) {
            tok.kind = Tok::PName;
            tok.text = std::move(word);
            return tok;
        }
        if (word == "a") {
            tok.kind = Tok::A;
            return tok;
        }
        std::string upper;
        for (char ch : word) {
            upper += static_cast<char>((ch >= 'a' && ch <= 'z') ? ch - 32 : ch);
        }
        if (upper == "PREFIX") {
            tok.kind = Tok::SparqlPrefix;
            return tok;
        }
        if (upper == "BASE") {
            return unsupported(tok, "BASE is not supported; use absolute IRIs");
        }
        if (word == "true" || word == "false") {
            return unsupported(tok, "boolean literals are not supported");
        }
        tok.kind = Tok::Invalid;
        tok.text = "unexpected bare word '" + word + "'";
        return tok;
    }

    bool read_hex(std::size_t digits, std::uint32_t& cp) {
        cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            if (at_end()) {
                return false;
            }
            char h = peek();
            cp <<= 4;
            if (h >= '0' && h <= '9') {
                cp |= static_cast<std::uint32_t>(h - '0');
            } else if (h >= 'a' && h <= 'f') {
                cp |= static_cast<std::uint32_t>(h - 'a' + 10);
            } else if (h >= 'A' && h <= 'F') {
                cp |= static_cast<std::uint32_t>(h - 'A' + 10);
            } else {
                return false;
            }
            advance();
        }
        return true;
    }

    Token lex_string(Token tok) {
        char quote = peek();
        bool long_form = peek(1) == quote && peek(2) == quote;
        advance();
        if (long_form) {
            advance();
            advance();
        }
        std::string value;
        for (;;) {
            if (at_end()) {
                tok.kind = Tok::Invalid;
                tok.text = "unterminated string literal";
                return tok;
            }
            char c = peek();
            if (long_form && c == quote && peek(1) == quote && peek(2) == quote) {
                advance();
                advance();
                advance();
                break;
            }
            if (!long_form && c == quote) {
                advance();
                break;
            }
            if (!long_form && c == '\n') {
                tok.kind = Tok::Invalid;
                tok.text = "newline in short string literal";
                return tok;
            }
            if (c == '\\') {
                advance();
                if (at_end()) {
                    continue;
                }
                char e = peek();
                advance();
                switch (e) {
                    case 't': value += '\t'; break;
                    case 'b': value += '\b'; break;
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 'f': value += '\f'; break;
                    case '"': value += '"'; break;
                    case '\'': value += '\''; break;
                    case '\\': value += '\\'; break;
                    case 'u':
                    case 'U': {
                        std::uint32_t cp = 0;
                        if (!read_hex(e == 'u' ? 4 : 8, cp) || cp > 0x10FFFF) {
                            tok.kind = Tok::Invalid;
                            tok.text = "bad unicode escape in string literal";
                            return tok;
                        }
                        append_utf8(value, cp);
                        break;
                    }
                    default:
                        tok.kind = Tok::Invalid;
                        tok.text = std::string("unknown escape '\\") + e + "' in string literal";
                        return tok;
                }
                continue;
            }
            value += c;
            advance();
        }
        if (peek() == '@') {
            Token t;
            t.pos = pos_;
            return unsupported(t, "language-tagged literals are not supported");
        }
        if (peek() == '^' && peek(1) == '^') {
            Token t;
            t.pos = pos_;
            advance();
            advance();
            return unsupported(t, "typed literals ('^^') are not supported");
        }
        tok.kind = Tok::String;
        tok.text = std::move(value);
        return tok;
    }

    std::string_view text_;
    std::size_t offset_ = 0;
    Position pos_;
    Position last_pos_;
};

struct ParseFailure {
    Position pos;
    std::string message;
};

struct PendingTriple {
    Iri subject;
    Iri predicate;
    Term object;
    Position pos;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { advance(); }

    ParseResult run() {
        while (current_.kind != Tok::End) {
            try {
                statement();
            } catch (const ParseFailure& failure) {
                report(failure.pos, failure.message);
                recover();
            }
        }
        return std::move(result_);
    }

private:
    void advance() { current_ = lexer_.next(); }

    [[noreturn]] void fail(const Token& tok, const std::string& expected) {
        switch (tok.kind) {
            case Tok::Unsupported:
            case Tok::Invalid: throw ParseFailure{tok.pos, tok.text};
            case Tok::End: throw ParseFailure{tok.pos, "unexpected end of input, expected " + expected};
            default: throw ParseFailure{tok.pos, "expected " + expected};
        }
    }

    void report(Position pos, std::string message) {
        result_.diagnostics.push_back({Severity::Error, pos.line, pos.column, std::move(message)});
    }

    void recover() {
        pending_.clear();
        while (current_.kind != Tok::End && current_.kind != Tok::Dot) {
            advance();
        }
        if (current_.kind == Tok::Dot) {
            advance();
        }
    }

    void expect(Tok kind, const std::string& what) {
        if (current_.kind != kind) {
            fail(current_, what);
        }
        advance();
    }

    void statement() {
        if (current_.kind == Tok::AtPrefix) {
            advance();
            prefix_body();
            expect(Tok::Dot, "'.' after @prefix directive");
            return;
        }
        if (current_.kind == Tok::SparqlPrefix) {
            advance();
            prefix_body();
            return;
        }
        triples();
        expect(Tok::Dot, "'.' at end of statement");
        commit();
    }

    void prefix_body() {
        Token label = current_;
        if (label.kind != Tok::PName || label.text.back() != ':' ||
            label.text.find(':') != label.text.size() - 1) {
            fail(label, "prefix label ending in ':'");
        }
        advance();
        Token ns = current_;
        if (ns.kind != Tok::IriRef) {
            fail(ns, "namespace IRI in angle brackets");
        }
        advance();
        try {
            result_.ontology.prefixes.bind(label.text.substr(0, label.text.size() - 1), Iri(ns.text));
        } catch (const Error& e) {
            throw ParseFailure{ns.pos, e.what()};
        }
    }

    Iri iri_term(const Token& tok) {
        try {
            if (tok.kind == Tok::IriRef) {
                return Iri(tok.text);
            }
            const PrefixMap& pm = result_.ontology.prefixes;
            std::string label = tok.text.substr(0, tok.text.find(':'));
            if (!pm.contains(label)) {
                if (auto ns = standard_namespace(label)) {
                    return Iri(*ns + tok.text.substr(label.size() + 1));
                }
            }
            return pm.expand(tok.text);
        } catch (const Error& e) {
            throw ParseFailure{tok.pos, e.what()};
        }
    }

    void triples() {
        Token subj = current_;
        if (subj.kind != Tok::IriRef && subj.kind != Tok::PName) {
            fail(subj, "subject IRI or prefixed name");
        }
        Iri subject = iri_term(subj);
        advance();
        for (;;) {
            Token verb = current_;
            Iri predicate = vocab::rdf_type();
            if (verb.kind == Tok::A) {
                predicate = vocab::rdf_type();
            } else if (verb.kind == Tok::IriRef || verb.kind == Tok::PName) {
                predicate = iri_term(verb);
            } else {
                fail(verb, "predicate");
            }
            advance();
            for (;;) {
                Token obj = current_;
                if (obj.kind == Tok::String) {
                    pending_.push_back({subject, predicate, Term{Literal{obj.text}}, obj.pos});
                } else if (obj.kind == Tok::IriRef || obj.kind == Tok::PName) {
                    pending_.push_back({subject, predicate, Term{iri_term(obj)}, obj.pos});
                } else {
                    fail(obj, "object");
                }
                advance();
                if (current_.kind != Tok::Comma) {
                    break;
                }
                advance();
            }
            if (current_.kind != Tok::Semicolon) {
                break;
            }
            while (current_.kind == Tok::Semicolon) {
                advance();
            }
            if (current_.kind == Tok::Dot) {
                break;
            }
        }
    }

    // Maps the statement's triples onto the model; nothing is applied unless
    // every triple maps cleanly.
    void commit() {
        std::vector<PendingTriple> triples = std::move(pending_);
        pending_.clear();

        std::set<Iri> new_classes;
        std::set<Iri> new_properties;
        std::vector<Axiom> axioms;
        std::vector<Assertion> assertions;

        auto class_object = [](const PendingTriple& t) -> const Iri& {
            const Iri* o = std::get_if<Iri>(&t.object);
            if (o == nullptr) {
                throw ParseFailure{t.pos, "literal object not allowed for <" + t.predicate.str() + ">"};
            }
            return *o;
        };

        for (const auto& t : triples) {
            const Iri& p = t.predicate;
            if (p == vocab::rdf_type()) {
                const Iri& o = class_object(t);
                if (o == vocab::owl_class() || o == vocab::rdfs_class()) {
                    new_classes.insert(t.subject);
                } else if (o == vocab::owl_object_property() || o == vocab::owl_datatype_property() ||
                           o == vocab::rdf_property()) {
                    new_properties.insert(t.subject);
                } else {
                    assertions.push_back(Assertion::type_of(t.subject, o));
                }
            } else if (p == vocab::rdfs_sub_class_of()) {
                axioms.push_back(Axiom::sub_class_of(t.subject, class_object(t)));
            } else if (p == vocab::owl_equivalent_class()) {
                axioms.push_back(Axiom::equivalent(t.subject, class_object(t)));
            } else if (p == vocab::owl_disjoint_with()) {
                axioms.push_back(Axiom::disjoint(t.subject, class_object(t)));
            } else if (p == vocab::rdfs_domain() || p == vocab::rdfs_range()) {
                const Iri& cls = class_object(t);
                if (result_.ontology.declared_classes.contains(t.subject) || new_classes.contains(t.subject)) {
                    throw ParseFailure{t.pos, "<" + t.subject.str() + "> is a declared class and cannot carry " +
                                                  (p == vocab::rdfs_domain() ? "rdfs:domain" : "rdfs:range")};
                }
                axioms.push_back(p == vocab::rdfs_domain() ? Axiom::domain(t.subject, cls) : Axiom::range(t.subject, cls));
            } else {
                assertions.push_back(Assertion::relation(t.subject, p, t.object));
            }
        }

        // A class declared here after a domain/range axiom on it in an
        // earlier statement is the same kind conflict.
        for (const auto& cls : new_classes) {
            for (const auto& ax : result_.ontology.tbox) {
                if ((ax.kind() == AxiomKind::Domain || ax.kind() == AxiomKind::Range) && ax.subject() == cls) {
                    throw ParseFailure{triples.front().pos,
                                       "<" + cls.str() + "> carries domain/range axioms and cannot be a class"};
                }
            }
        }

        Ontology& onto = result_.ontology;
        onto.declared_classes.insert(new_classes.begin(), new_classes.end());
        onto.declared_properties.insert(new_properties.begin(), new_properties.end());
        onto.tbox.insert(axioms.begin(), axioms.end());
        onto.abox.insert(assertions.begin(), assertions.end());
    }

    Lexer lexer_;
    Token current_;
    std::vector<PendingTriple> pending_;
    ParseResult result_;
};

// ---------------------------------------------------------------------------
// Serialization

std::string escape_literal(const std::string& value) {
    std::string out = "\"";
    for (char c : value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default: out += c; break;
        }
    }
    out += '"';
    return out;
}

std::string write_iri(const PrefixMap& prefixes, const Iri& iri) {
    if (auto c = prefixes.compact(iri)) {
        return *c;
    }
    return "<" + iri.str() + ">";
}

std::string write_term(const PrefixMap& prefixes, const Term& term) {
    if (const Iri* iri = std::get_if<Iri>(&term)) {
        return write_iri(prefixes, *iri);
    }
    return escape_literal(std::get<Literal>(term).lexical);
}

}  // namespace

ParseResult parse_turtle(std::string_view text) { return Parser(text).run(); }

Ontology parse_turtle_strict(std::string_view text) {
    ParseResult result = parse_turtle(text);
    if (!result.ok()) {
        throw TurtleError(std::move(result.diagnostics));
    }
    return std::move(result.ontology);
}

std::string serialize_turtle(const Ontology& ontology) {
    using Triple = std::tuple<Iri, Iri, Term>;
    std::set<Triple> triples;
    for (const auto& cls : ontology.declared_classes) {
        triples.emplace(cls, vocab::rdf_type(), vocab::owl_class());
    }
    for (const auto& prop : ontology.declared_properties) {
        triples.emplace(prop, vocab::rdf_type(), vocab::owl_object_property());
    }
    for (const auto& ax : ontology.tbox) {
        triples.emplace(ax.subject(), ax.predicate(), ax.object());
    }
    for (const auto& as : ontology.abox) {
        triples.emplace(as.subject(), as.predicate(), as.object());
    }

    std::ostringstream os;
    for (const auto& [label, ns] : ontology.prefixes.bindings()) {
        os << "@prefix " << label << ": <" << ns.str() << "> .\n";
    }

    const PrefixMap& pm = ontology.prefixes;
    const Iri* subject = nullptr;
    const Iri* predicate = nullptr;
    for (const auto& [s, p, o] : triples) {
        if (subject == nullptr || *subject != s) {
            if (subject != nullptr) {
                os << " .\n";
            }
            os << '\n' << write_iri(pm, s) << ' ' << (p == vocab::rdf_type() ? "a" : write_iri(pm, p)) << ' ';
        } else if (*predicate != p) {
            os << " ;\n    " << (p == vocab::rdf_type() ? "a" : write_iri(pm, p)) << ' ';
        } else {
            os << ", ";
        }
        os << write_term(pm, o);
        subject = &s;
        predicate = &p;
    }
    if (subject != nullptr) {
        os << " .\n";
    }
    return os.str();
}

}  // namespace skoo
