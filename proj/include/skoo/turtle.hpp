#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "skoo/error.hpp"
#include "skoo/model.hpp"

namespace skoo {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

/// Line and column are 1-based; column counts code points, not bytes.
struct ParseDiagnostic {
    Severity severity = Severity::Error;
    std::size_t line = 1;
    std::size_t column = 1;
    std::string message;

    std::string format() const;
};

struct ParseResult {
    Ontology ontology;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const noexcept;
};

class TurtleError : public Error {
public:
    explicit TurtleError(std::vector<ParseDiagnostic> diagnostics);

    const std::vector<ParseDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<ParseDiagnostic> diagnostics_;
};

/// Parses the supported Turtle subset: @prefix/PREFIX directives, prefixed
/// names, <absolute> IRIs, `a`, ';' and ',' lists, and quoted string
/// literals. Statements are committed only when their terminating '.' is
/// reached; after an error the parser skips to the next '.' and continues,
/// so everything before the faulty statement survives.
ParseResult parse_turtle(std::string_view text);

/// Same as parse_turtle but throws TurtleError if any error was reported.
Ontology parse_turtle_strict(std::string_view text);

/// Deterministic Turtle: prefixes sorted by label, then one block per
/// subject, subjects/predicates/objects sorted by expanded IRI.
std::string serialize_turtle(const Ontology& ontology);

}  // namespace skoo
