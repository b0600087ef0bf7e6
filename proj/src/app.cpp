#include "skoo/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skoo/error.hpp"
#include "skoo/transform.hpp"
#include "skoo/turtle.hpp"

namespace skoo {

using ordered_json = nlohmann::ordered_json;

namespace {

// Failure carrying the exit code it maps to.
struct CommandFailure {
    int exit_code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CommandFailure{exit_usage, "cannot read " + path};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Ontology load_inputs(const std::vector<std::string>& inputs) {
    Ontology merged;
    for (const auto& path : inputs) {
        ParseResult result = parse_turtle(read_file(path));
        if (!result.ok()) {
            std::string msg;
            for (const auto& d : result.diagnostics) {
                msg += path + ":" + d.format() + "\n";
            }
            throw CommandFailure{exit_usage, msg};
        }
        try {
            merged = merge(merged, result.ontology);
        } catch (const PrefixError& e) {
            throw CommandFailure{exit_usage, path + ": " + e.what()};
        }
    }
    return merged;
}

SchemaBundle schema_or_fail() {
    try {
        return active_schema();
    } catch (const SchemaError& e) {
        throw CommandFailure{exit_usage, e.what()};
    }
}

Ontology schema_plus_inputs(const SchemaBundle& schema, const PipelineConfig& config) {
    Ontology inputs = load_inputs(config.inputs);
    try {
        return merge(schema.merged(config.fragments, config.include_alignment), inputs);
    } catch (const PrefixError& e) {
        throw CommandFailure{exit_usage, e.what()};
    }
}

template <typename Fn>
CommandResult guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const CommandFailure& f) {
        CommandResult r;
        r.exit_code = f.exit_code;
        r.err = f.message;
        if (!r.err.empty() && r.err.back() != '\n') {
            r.err += '\n';
        }
        return r;
    }
}

ordered_json chain_json(const SubclassChain& chain) {
    ordered_json steps = ordered_json::array();
    for (const auto& ax : chain.steps) {
        steps.push_back(ordered_json{{"kind", to_string(ax.kind())}, {"subject", ax.subject().str()},
                                     {"object", ax.object().str()}});
    }
    return ordered_json{{"from", chain.from.str()}, {"to", chain.to.str()}, {"steps", std::move(steps)}};
}

std::vector<MappingRule> load_rules(const std::string& ruleset) {
    std::string text = ruleset == "default" ? std::string(default_ruleset_text()) : read_file(ruleset);
    try {
        return parse_ruleset(text);
    } catch (const RuleError& e) {
        throw CommandFailure{exit_domain_failure, e.what()};
    }
}

struct PipelineOutput {
    Ontology merged;
    SubsumptionClosure closure;
    VisualModel model;
};

PipelineOutput run_pipeline(const PipelineConfig& config) {
    SchemaBundle schema = schema_or_fail();
    std::vector<MappingRule> rules = load_rules(config.ruleset);
    PipelineOutput out;
    out.merged = schema_plus_inputs(schema, config);
    out.closure = subsumption_closure(out.merged);
    try {
        out.model = apply_rules(out.merged, out.closure, rules);
    } catch (const TransformError& e) {
        throw CommandFailure{exit_domain_failure, e.what()};
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

ordered_json node_json(const VisNode& n) {
    ordered_json j{{"id", n.id}, {"label", n.label}, {"class", n.style_class}};
    if (n.payload) {
        j["payload"] = *n.payload;
    }
    return j;
}

HttpResponse json_error(int status, const std::string& message) {
    return {status, "application/json", ordered_json{{"error", message}}.dump()};
}

const char* content_type_for(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
    if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
    if (ext == ".css") return "text/css; charset=utf-8";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    if (ext == ".ico") return "image/x-icon";
    return "application/octet-stream";
}

constexpr const char* fallback_index = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>skoo</title></head>
<body>
<h1>skoo</h1>
<p>No viewer bundle is installed. The API is available:</p>
<ul>
<li><a href="/api/model">/api/model</a></li>
<li><a href="/api/classes">/api/classes</a></li>
<li>/api/node/{id}</li>
<li>/api/search?q=...</li>
</ul>
</body></html>
)";

}  // namespace

OutputFormat PipelineConfig::effective_format() const {
    std::optional<OutputFormat> from_extension;
    if (output) {
        std::string ext = lower(std::filesystem::path(*output).extension().string());
        if (ext == ".dot" || ext == ".gv") {
            from_extension = OutputFormat::Dot;
        } else if (ext == ".json") {
            from_extension = OutputFormat::Json;
        }
    }
    if (format && from_extension && *format != *from_extension) {
        throw Error("--format " + std::string(*format == OutputFormat::Dot ? "dot" : "json") +
                    " contradicts output file " + *output);
    }
    return format.value_or(from_extension.value_or(OutputFormat::Json));
}

std::set<Fragment> parse_fragment_list(const std::string& text) {
    std::set<Fragment> out;
    if (text.empty()) {
        return out;
    }
    if (text == "all") {
        return {std::begin(all_fragments), std::end(all_fragments)};
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        item = first == std::string::npos ? "" : item.substr(first, item.find_last_not_of(" \t") - first + 1);
        if (item == "all") {
            out.insert(std::begin(all_fragments), std::end(all_fragments));
        } else if (!item.empty()) {
            out.insert(parse_fragment(item));
        }
    }
    return out;
}

SchemaBundle active_schema() {
    const char* dir = std::getenv("SKOO_SCHEMA_DIR");
    if (dir != nullptr && *dir != '\0') {
        return SchemaBundle::load_directory(dir);
    }
    return SchemaBundle::embedded();
}

std::string consistency_report_json(const ConsistencyReport& report) {
    ordered_json doc;
    doc["schema_version"] = report_schema_version;
    doc["consistent"] = report.consistent;
    auto& unsat = doc["unsatisfiable_classes"] = ordered_json::array();
    for (const auto& cls : report.unsatisfiable_classes) {
        unsat.push_back(cls.str());
    }
    auto& conflicts = doc["conflicting_individuals"] = ordered_json::array();
    for (const auto& c : report.conflicting_individuals) {
        conflicts.push_back(ordered_json{{"individual", c.individual.str()}, {"class_a", c.class_a.str()},
                                         {"class_b", c.class_b.str()}});
    }
    auto& witnesses = doc["witnesses"] = ordered_json::array();
    for (const auto& w : report.witnesses) {
        witnesses.push_back(ordered_json{
            {"kind", w.kind == ConflictSubject::Class ? "class" : "individual"},
            {"subject", w.subject.str()},
            {"disjoint", ordered_json::array({w.disjointness.subject().str(), w.disjointness.object().str()})},
            {"chain_a", chain_json(w.chain_a)},
            {"chain_b", chain_json(w.chain_b)},
        });
    }
    return doc.dump(2) + "\n";
}

std::string validation_report_json(const ValidationReport& report, const PrefixMap& prefixes) {
    ordered_json doc;
    doc["schema_version"] = report_schema_version;
    doc["errors"] = report.errors();
    doc["warnings"] = report.warnings();
    auto& items = doc["items"] = ordered_json::array();
    for (const auto& item : report.items) {
        items.push_back(ordered_json{{"severity", to_string(item.severity)},
                                     {"subject", prefixes.display(item.subject)},
                                     {"message", item.message}});
    }
    return doc.dump(2) + "\n";
}

CommandResult cmd_check(const PipelineConfig& config) {
    return guarded([&] {
        SchemaBundle schema = schema_or_fail();
        Ontology merged = schema_plus_inputs(schema, config);
        ConsistencyReport report = check_consistency(merged);
        CommandResult r;
        r.out = consistency_report_json(report);
        r.exit_code = report.consistent ? exit_ok : exit_domain_failure;
        if (!report.consistent) {
            r.err = "inconsistent: " + std::to_string(report.unsatisfiable_classes.size()) +
                    " unsatisfiable class(es), " + std::to_string(report.conflicting_individuals.size()) +
                    " conflicting individual(s)\n";
        }
        return r;
    });
}

CommandResult cmd_validate(const PipelineConfig& config) {
    return guarded([&] {
        SchemaBundle schema = schema_or_fail();
        Ontology graph = load_inputs(config.inputs);
        ValidationReport report;
        PrefixMap prefixes;
        try {
            report = validate_instance_graph(graph, schema);
            prefixes = schema.merged_all().prefixes.merged_with(graph.prefixes);
        } catch (const PrefixError& e) {
            throw CommandFailure{exit_usage, e.what()};
        }
        CommandResult r;
        r.out = validation_report_json(report, prefixes);
        r.exit_code = report.ok() ? exit_ok : exit_domain_failure;
        return r;
    });
}

CommandResult cmd_viz(const PipelineConfig& config) {
    return guarded([&] {
        OutputFormat format = OutputFormat::Json;
        try {
            format = config.effective_format();
        } catch (const Error& e) {
            throw CommandFailure{exit_usage, e.what()};
        }
        PipelineOutput pipeline = run_pipeline(config);
        std::string bytes;
        try {
            bytes = format == OutputFormat::Dot ? to_dot(pipeline.model) : to_json(pipeline.model);
        } catch (const ModelError& e) {
            throw CommandFailure{exit_domain_failure, e.what()};
        }
        if (format == OutputFormat::Json) {
            bytes += '\n';
        }
        CommandResult r;
        if (config.output) {
            std::ofstream out(*config.output, std::ios::binary);
            if (!out || !(out << bytes)) {
                throw CommandFailure{exit_usage, "cannot write " + *config.output};
            }
        } else {
            r.out = std::move(bytes);
        }
        return r;
    });
}

ServiceSnapshot load_snapshot(const PipelineConfig& config) {
    try {
        PipelineOutput pipeline = run_pipeline(config);
        ServiceSnapshot snap;
        snap.model = std::move(pipeline.model);
        snap.model_json = to_json(snap.model) + "\n";
        snap.classes = class_hierarchy_model(pipeline.merged, pipeline.closure);
        snap.classes_json = to_json(snap.classes) + "\n";
        return snap;
    } catch (const CommandFailure& f) {
        throw CommandError(f.exit_code, f.message);
    }
}

Service::Service(ServiceSnapshot snapshot, std::optional<std::filesystem::path> static_dir)
    : snapshot_(std::move(snapshot)), static_dir_(std::move(static_dir)) {}

HttpResponse Service::handle(const std::string& method, const std::string& path,
                             const std::map<std::string, std::string>& query) const {
    if (method != "GET" && method != "HEAD") {
        return json_error(405, "method not allowed");
    }
    if (path == "/api/model") {
        return {200, "application/json", snapshot_.model_json};
    }
    if (path == "/api/classes") {
        return {200, "application/json", snapshot_.classes_json};
    }
    constexpr std::string_view node_prefix = "/api/node/";
    if (path.starts_with(node_prefix)) {
        return node_neighborhood(path.substr(node_prefix.size()));
    }
    if (path == "/api/search") {
        return search(query);
    }
    if (path.starts_with("/api/") || path == "/api") {
        return json_error(404, "no such endpoint: " + path);
    }
    return static_asset(path);
}

HttpResponse Service::node_neighborhood(const std::string& id) const {
    const VisualModel& m = snapshot_.model;
    const VisNode* node = m.find_node(id);
    if (node == nullptr) {
        return json_error(404, "unknown node: " + id);
    }
    VisualModel out;
    std::set<std::string> neighbor_ids{id};
    for (const auto& e : m.edges) {
        if (e.from == id || e.to == id) {
            out.edges.push_back(e);
            neighbor_ids.insert(e.from);
            neighbor_ids.insert(e.to);
        }
    }
    for (const auto& n : m.nodes) {
        if (neighbor_ids.contains(n.id)) {
            out.nodes.push_back(n);
        }
    }
    out.sort_by_id();
    return {200, "application/json", to_json(out) + "\n"};
}

HttpResponse Service::search(const std::map<std::string, std::string>& query) const {
    auto it = query.find("q");
    if (it == query.end()) {
        return json_error(400, "missing query parameter 'q'");
    }
    std::string needle = lower(it->second);
    std::vector<const VisNode*> hits;
    for (const auto& n : snapshot_.model.nodes) {
        if (lower(n.label).find(needle) != std::string::npos) {
            hits.push_back(&n);
        }
    }
    std::sort(hits.begin(), hits.end(), [](auto* a, auto* b) { return a->id < b->id; });
    ordered_json arr = ordered_json::array();
    for (const auto* n : hits) {
        arr.push_back(node_json(*n));
    }
    return {200, "application/json", arr.dump() + "\n"};
}

HttpResponse Service::static_asset(const std::string& path) const {
    std::string rel = path == "/" ? "index.html" : path.substr(1);
    if (!static_dir_) {
        if (rel == "index.html") {
            return {200, "text/html; charset=utf-8", fallback_index};
        }
        return json_error(404, "not found: " + path);
    }
    std::filesystem::path candidate = std::filesystem::path(rel).lexically_normal();
    if (candidate.is_absolute() || candidate.empty() || *candidate.begin() == "..") {
        return json_error(404, "not found: " + path);
    }
    std::filesystem::path full = *static_dir_ / candidate;
    std::ifstream in(full, std::ios::binary);
    if (!in || std::filesystem::is_directory(full)) {
        if (rel == "index.html") {
            return {200, "text/html; charset=utf-8", fallback_index};
        }
        return json_error(404, "not found: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return {200, content_type_for(full), buf.str()};
}

}  // namespace skoo
