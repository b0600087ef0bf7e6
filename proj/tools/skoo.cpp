// skoo: consistency checking, instance validation, and visual-model export
// for SKOO knowledge graphs.
//
//   skoo check    [--fragments LIST] [--alignment] INPUT...
//   skoo validate INPUT...
//   skoo viz      [--rules FILE|default] [--format dot|json] [--out FILE] INPUT...
//   skoo serve    [--rules FILE|default] [--port N] [--static DIR] INPUT...

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "skoo/app.hpp"
#include "skoo/error.hpp"
#include "skoo/server.hpp"

namespace {

skoo::HttpServer* running_server = nullptr;

void handle_signal(int) {
    if (running_server != nullptr) {
        running_server->stop();
    }
}

int emit(const skoo::CommandResult& r) {
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SKOO knowledge graph toolkit"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string fragments;
    bool alignment = false;
    std::string rules = "default";
    std::string format;
    std::string out;
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string static_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("inputs", inputs, "Turtle input files");
        cmd->add_option("--fragments", fragments, "External fragments to merge: dolce,wordnet,omdoc or all");
        cmd->add_flag("--alignment", alignment, "Merge the SKOO correspondence axioms");
        cmd->add_option("--rules", rules, "Mapping rule file, or 'default'");
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot", "json"}));
        cmd->add_option("--out", out, "Output file (default: standard output)");
        cmd->add_option("--port", port, "HTTP port for serve")->check(CLI::Range(0, 65535));
    };

    auto* check = app.add_subcommand("check", "Merge SKOO, fragments, alignment and inputs; check consistency");
    auto* validate = app.add_subcommand("validate", "Validate inputs as SKOO instance graphs");
    auto* viz = app.add_subcommand("viz", "Apply mapping rules and export the visual model");
    auto* serve = app.add_subcommand("serve", "Serve the visual model and the viewer over HTTP");
    for (auto* cmd : {check, validate, viz, serve}) {
        add_common(cmd);
    }
    serve->add_option("--host", host, "Address to bind");
    serve->add_option("--static", static_dir, "Directory holding the viewer bundle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? skoo::exit_ok : skoo::exit_usage;
    }

    skoo::PipelineConfig config;
    config.inputs = inputs;
    config.ruleset = rules;
    config.include_alignment = alignment;
    if (!out.empty()) {
        config.output = out;
    }
    if (!format.empty()) {
        config.format = format == "dot" ? skoo::OutputFormat::Dot : skoo::OutputFormat::Json;
    }
    try {
        config.fragments = skoo::parse_fragment_list(fragments);
    } catch (const skoo::Error& e) {
        std::cerr << e.what() << '\n';
        return skoo::exit_usage;
    }

    if (check->parsed()) {
        return emit(skoo::cmd_check(config));
    }
    if (validate->parsed()) {
        return emit(skoo::cmd_validate(config));
    }
    if (viz->parsed()) {
        return emit(skoo::cmd_viz(config));
    }

    std::optional<skoo::Service> service;
    try {
        std::optional<std::filesystem::path> assets;
        if (!static_dir.empty()) {
            assets = static_dir;
        }
        service.emplace(skoo::load_snapshot(config), assets);
    } catch (const skoo::CommandError& e) {
        std::cerr << e.what() << '\n';
        return e.exit_code();
    }
    skoo::HttpServer server(*service);
    int bound = server.bind(host, port);
    if (bound < 0) {
        std::cerr << "cannot bind " << host << ':' << port << '\n';
        return skoo::exit_usage;
    }
    running_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "serving on http://" << host << ':' << bound << "/\n";
    server.listen();
    running_server = nullptr;
    return skoo::exit_ok;
}
