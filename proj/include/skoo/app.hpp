#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skoo/error.hpp"
#include "skoo/reasoner.hpp"
#include "skoo/schema.hpp"
#include "skoo/visual.hpp"

namespace skoo {

/// Process exit codes; stable for CI consumers.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain_failure = 1;  // inconsistent, invalid, dangling edges, bad rules
inline constexpr int exit_usage = 2;           // bad arguments, unreadable or unparsable input

/// Version of the JSON report layouts.
inline constexpr int report_schema_version = 1;

enum class OutputFormat { Dot, Json };

struct PipelineConfig {
    std::vector<std::string> inputs;
    std::string ruleset = "default";  // "default" or a path to a rule file
    std::set<Fragment> fragments;
    bool include_alignment = false;
    std::optional<std::string> output;
    std::optional<OutputFormat> format;

    /// The format to write: explicit, else from the output extension
    /// (.dot/.gv or .json), else JSON. Throws Error when an explicit format
    /// contradicts the output extension.
    OutputFormat effective_format() const;
};

/// Parses "dolce,wordnet" / "all" / "" into a fragment set. Throws
/// SchemaError for unknown names.
std::set<Fragment> parse_fragment_list(const std::string& text);

struct CommandResult {
    int exit_code = exit_ok;
    std::string out;  // standard output payload
    std::string err;  // diagnostics for standard error
};

/// The schema in effect: the embedded copy, or the directory named by
/// SKOO_SCHEMA_DIR after it has been checked byte-for-byte against it.
SchemaBundle active_schema();

std::string consistency_report_json(const ConsistencyReport& report);
std::string validation_report_json(const ValidationReport& report, const PrefixMap& prefixes);

/// SKOO + selected fragments + alignment + inputs, then the consistency
/// check. Exit 0 iff consistent.
CommandResult cmd_check(const PipelineConfig& config);

/// Validates the merged inputs as an instance graph. Exit 0 iff no errors.
CommandResult cmd_validate(const PipelineConfig& config);

/// Full pipeline: parse, merge, closure, rules, export. Writes to
/// config.output when set, otherwise returns the bytes in `out`.
CommandResult cmd_viz(const PipelineConfig& config);

/// Everything the HTTP service answers from, computed once at startup.
struct ServiceSnapshot {
    VisualModel model;
    std::string model_json;
    VisualModel classes;
    std::string classes_json;
};

/// A pipeline failure with the exit code it maps to.
class CommandError : public Error {
public:
    CommandError(int exit_code, const std::string& message) : Error(message), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Runs the viz pipeline (JSON) and the class hierarchy export. Throws
/// CommandError on any failure.
ServiceSnapshot load_snapshot(const PipelineConfig& config);

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Read-only request handler over an immutable snapshot. Safe to call from
/// many threads at once.
class Service {
public:
    explicit Service(ServiceSnapshot snapshot, std::optional<std::filesystem::path> static_dir = std::nullopt);

    /// `path` is already percent-decoded; `query` holds decoded parameters.
    HttpResponse handle(const std::string& method, const std::string& path,
                        const std::map<std::string, std::string>& query) const;

    const ServiceSnapshot& snapshot() const noexcept { return snapshot_; }

private:
    HttpResponse node_neighborhood(const std::string& id) const;
    HttpResponse search(const std::map<std::string, std::string>& query) const;
    HttpResponse static_asset(const std::string& path) const;

    ServiceSnapshot snapshot_;
    std::optional<std::filesystem::path> static_dir_;
};

}  // namespace skoo
