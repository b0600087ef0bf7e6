#include "skoo/iri.hpp"

#include <algorithm>

#include "skoo/error.hpp"

namespace skoo {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_forbidden_iri_char(unsigned char c) {
    if (c <= 0x20) {
        return true;
    }
    switch (c) {
        case '<': case '>': case '"': case '{': case '}':
        case '|': case '^': case '`': case '\\':
            return true;
        default:
            return false;
    }
}

// PN_CHARS_BASE restricted to ASCII letters; any non-ASCII byte is accepted as
// part of a UTF-8 sequence.
bool is_pn_chars_base(unsigned char c) { return is_alpha(static_cast<char>(c)) || c >= 0x80; }

bool is_pn_chars_u(unsigned char c) { return is_pn_chars_base(c) || c == '_'; }

bool is_pn_chars(unsigned char c) { return is_pn_chars_u(c) || c == '-' || is_digit(static_cast<char>(c)); }

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_absolute(value_)) {
        throw IriError("malformed IRI: '" + value_ + "'");
    }
}

bool Iri::is_absolute(std::string_view value) {
    auto colon = value.find(':');
    if (colon == std::string_view::npos || colon == 0 || !is_alpha(value[0])) {
        return false;
    }
    for (std::size_t i = 1; i < colon; ++i) {
        char c = value[i];
        if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) {
            return false;
        }
    }
    return std::none_of(value.begin(), value.end(),
                        [](char c) { return is_forbidden_iri_char(static_cast<unsigned char>(c)); });
}

std::string_view Iri::local_name() const noexcept {
    std::string_view v = value_;
    auto pos = v.find_last_of("#/:");
    return pos == std::string_view::npos ? v : v.substr(pos + 1);
}

bool is_valid_prefix_label(std::string_view label) {
    if (label.empty()) {
        return true;
    }
    auto first = static_cast<unsigned char>(label.front());
    auto last = static_cast<unsigned char>(label.back());
    if (!is_pn_chars_base(first) || last == '.') {
        return false;
    }
    return std::all_of(label.begin(), label.end(), [](char ch) {
        auto c = static_cast<unsigned char>(ch);
        return is_pn_chars(c) || c == '.';
    });
}

bool is_valid_local_name(std::string_view local) {
    if (local.empty()) {
        return true;
    }
    auto first = static_cast<unsigned char>(local.front());
    auto last = static_cast<unsigned char>(local.back());
    if (!(is_pn_chars_u(first) || is_digit(static_cast<char>(first)) || first == ':') || last == '.') {
        return false;
    }
    return std::all_of(local.begin(), local.end(), [](char ch) {
        auto c = static_cast<unsigned char>(ch);
        return is_pn_chars(c) || c == '.' || c == ':';
    });
}

void PrefixMap::bind(const std::string& label, const Iri& ns) {
    if (!is_valid_prefix_label(label)) {
        throw PrefixError("invalid prefix label '" + label + "'");
    }
    auto [it, inserted] = bindings_.emplace(label, ns);
    if (!inserted && it->second != ns) {
        throw PrefixError("prefix '" + label + ":' already bound to <" + it->second.str() +
                          ">, cannot rebind to <" + ns.str() + ">");
    }
}

std::optional<Iri> PrefixMap::lookup(const std::string& label) const {
    auto it = bindings_.find(label);
    if (it == bindings_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Iri PrefixMap::expand(std::string_view prefixed) const {
    auto colon = prefixed.find(':');
    if (colon == std::string_view::npos) {
        throw PrefixError("not a prefixed name: '" + std::string(prefixed) + "'");
    }
    std::string label(prefixed.substr(0, colon));
    auto it = bindings_.find(label);
    if (it == bindings_.end()) {
        throw PrefixError("unregistered prefix '" + label + ":' in '" + std::string(prefixed) + "'");
    }
    return Iri(it->second.str() + std::string(prefixed.substr(colon + 1)));
}

Iri PrefixMap::resolve(std::string_view term) const {
    if (term.size() >= 2 && term.front() == '<' && term.back() == '>') {
        return Iri(std::string(term.substr(1, term.size() - 2)));
    }
    return expand(term);
}

std::optional<std::string> PrefixMap::compact(const Iri& iri) const {
    const std::string& full = iri.str();
    std::optional<std::string> best;
    for (const auto& [label, ns] : bindings_) {
        const std::string& base = ns.str();
        if (full.size() < base.size() || full.compare(0, base.size(), base) != 0) {
            continue;
        }
        std::string_view local = std::string_view(full).substr(base.size());
        if (!is_valid_local_name(local)) {
            continue;
        }
        std::string candidate = label + ":" + std::string(local);
        if (!best || candidate.size() < best->size() ||
            (candidate.size() == best->size() && candidate < *best)) {
            best = std::move(candidate);
        }
    }
    return best;
}

std::string PrefixMap::display(const Iri& iri) const {
    if (auto c = compact(iri)) {
        return *c;
    }
    return iri.str();
}

PrefixMap PrefixMap::merged_with(const PrefixMap& other) const {
    PrefixMap out = *this;
    for (const auto& [label, ns] : other.bindings_) {
        out.bind(label, ns);
    }
    return out;
}

namespace vocab {

#define SKOO_VOCAB_TERM(fn, ns, local)                       \
    const Iri& fn() {                                         \
        static const Iri value(std::string(ns) + (local));    \
        return value;                                         \
    }

SKOO_VOCAB_TERM(rdf_type, rdf_ns, "type")
SKOO_VOCAB_TERM(rdfs_sub_class_of, rdfs_ns, "subClassOf")
SKOO_VOCAB_TERM(rdfs_domain, rdfs_ns, "domain")
SKOO_VOCAB_TERM(rdfs_range, rdfs_ns, "range")
SKOO_VOCAB_TERM(rdfs_class, rdfs_ns, "Class")
SKOO_VOCAB_TERM(rdf_property, rdf_ns, "Property")
SKOO_VOCAB_TERM(owl_class, owl_ns, "Class")
SKOO_VOCAB_TERM(owl_object_property, owl_ns, "ObjectProperty")
SKOO_VOCAB_TERM(owl_datatype_property, owl_ns, "DatatypeProperty")
SKOO_VOCAB_TERM(owl_equivalent_class, owl_ns, "equivalentClass")
SKOO_VOCAB_TERM(owl_disjoint_with, owl_ns, "disjointWith")
SKOO_VOCAB_TERM(owl_thing, owl_ns, "Thing")

#undef SKOO_VOCAB_TERM

}  // namespace vocab

}  // namespace skoo
