#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace skoo {

/// An absolute IRI. Equality is byte equality of the expanded form; prefixed
/// names are expanded through a PrefixMap before an Iri is ever built.
class Iri {
public:
    /// Throws IriError unless `value` is an absolute IRI (scheme ':' rest,
    /// no whitespace or characters Turtle forbids inside <...>).
    explicit Iri(std::string value);

    static bool is_absolute(std::string_view value);

    const std::string& str() const noexcept { return value_; }

    /// Text after the last '#', '/' or ':'.
    std::string_view local_name() const noexcept;

    auto operator<=>(const Iri&) const = default;
    bool operator==(const Iri&) const = default;

private:
    std::string value_;
};

/// Prefix label (possibly empty) -> namespace IRI.
class PrefixMap {
public:
    PrefixMap() = default;

    /// Binds `label`. Re-binding a label to the same namespace is a no-op;
    /// binding it to a different one throws PrefixError.
    void bind(const std::string& label, const Iri& ns);

    bool contains(const std::string& label) const { return bindings_.contains(label); }
    std::optional<Iri> lookup(const std::string& label) const;

    /// Expands "label:local". Throws PrefixError for an unregistered label.
    Iri expand(std::string_view prefixed) const;

    /// Accepts "<absolute>" or "label:local" and returns the absolute Iri.
    Iri resolve(std::string_view term) const;

    /// Shortest prefixed form for `iri` whose local part is a valid Turtle
    /// local name; nullopt when no binding applies.
    std::optional<std::string> compact(const Iri& iri) const;

    /// Prefixed form when possible, otherwise the bare absolute IRI.
    std::string display(const Iri& iri) const;

    /// Union; throws PrefixError when a label is bound differently.
    PrefixMap merged_with(const PrefixMap& other) const;

    const std::map<std::string, Iri>& bindings() const noexcept { return bindings_; }
    bool empty() const noexcept { return bindings_.empty(); }

    bool operator==(const PrefixMap&) const = default;

private:
    std::map<std::string, Iri> bindings_;
};

/// True when `local` can follow "prefix:" in Turtle without escaping.
bool is_valid_local_name(std::string_view local);

/// True when `label` is a valid Turtle prefix label (may be empty).
bool is_valid_prefix_label(std::string_view label);

namespace vocab {

inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view skoo_ns = "http://purl.org/net/skoo#";

const Iri& rdf_type();
const Iri& rdfs_sub_class_of();
const Iri& rdfs_domain();
const Iri& rdfs_range();
const Iri& rdfs_class();
const Iri& rdf_property();
const Iri& owl_class();
const Iri& owl_object_property();
const Iri& owl_datatype_property();
const Iri& owl_equivalent_class();
const Iri& owl_disjoint_with();
const Iri& owl_thing();

inline Iri skoo(std::string_view local) { return Iri(std::string(skoo_ns) + std::string(local)); }

}  // namespace vocab

}  // namespace skoo
