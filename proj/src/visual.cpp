#include "skoo/visual.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "skoo/error.hpp"

namespace skoo {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Rect: return "rect";
        case ShapeKind::Ellipse: return "ellipse";
        case ShapeKind::Line: return "line";
    }
    return "rect";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view name) {
    if (name == "rect") return ShapeKind::Rect;
    if (name == "ellipse") return ShapeKind::Ellipse;
    if (name == "line") return ShapeKind::Line;
    return std::nullopt;
}

const VisNode* VisualModel::find_node(std::string_view id) const {
    for (const auto& n : nodes) {
        if (n.id == id) {
            return &n;
        }
    }
    return nullptr;
}

void VisualModel::sort_by_id() {
    auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
    std::sort(nodes.begin(), nodes.end(), by_id);
    std::sort(edges.begin(), edges.end(), by_id);
    std::sort(trees.begin(), trees.end(), by_id);
    std::sort(lists.begin(), lists.end(), by_id);
    std::sort(texts.begin(), texts.end(), by_id);
    std::sort(shapes.begin(), shapes.end(), by_id);
}

namespace {

void check_tree(const VisTree& tree, const std::set<std::string>& node_ids, std::vector<ModelDiagnostic>& out) {
    auto error = [&](std::string id, std::string message) {
        out.push_back({Severity::Error, std::move(id), "tree " + tree.id + ": " + std::move(message)});
    };
    if (!node_ids.contains(tree.root)) {
        error(tree.root, "root '" + tree.root + "' is not a node");
    }
    std::map<std::string, std::string> parent_of;
    for (const auto& [parent, kids] : tree.children) {
        if (!node_ids.contains(parent)) {
            error(parent, "parent '" + parent + "' is not a node");
        }
        for (const auto& kid : kids) {
            if (!node_ids.contains(kid)) {
                error(kid, "child '" + kid + "' is not a node");
            }
            if (kid == tree.root) {
                error(kid, "root '" + kid + "' appears as a child");
            }
            auto [it, inserted] = parent_of.emplace(kid, parent);
            if (!inserted) {
                error(kid, "'" + kid + "' has more than one parent");
            }
        }
    }
    // Every parent must hang off the root; walking up must terminate there.
    for (const auto& [parent, kids] : tree.children) {
        std::set<std::string> seen;
        std::string cur = parent;
        while (cur != tree.root) {
            if (!seen.insert(cur).second) {
                error(parent, "cycle through '" + cur + "'");
                break;
            }
            auto it = parent_of.find(cur);
            if (it == parent_of.end()) {
                error(cur, "'" + cur + "' is not reachable from the root");
                break;
            }
            cur = it->second;
        }
    }
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': break;
            default: out += c; break;
        }
    }
    out += '"';
    return out;
}

void require_valid(const VisualModel& vm) {
    for (const auto& d : validate_visual_model(vm)) {
        if (d.severity == Severity::Error) {
            throw ModelError("invalid visual model: " + d.message);
        }
    }
}

const ordered_json& field(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ModelError(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string string_field(const ordered_json& obj, const char* key) {
    const auto& v = field(obj, key);
    if (!v.is_string()) {
        throw ModelError(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::vector<std::string> string_array(const ordered_json& v, const char* key) {
    if (!v.is_array()) {
        throw ModelError(std::string("field '") + key + "' must be an array");
    }
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw ModelError(std::string("field '") + key + "' must hold strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

const ordered_json& array_section(const ordered_json& doc, const char* key) {
    static const ordered_json empty = ordered_json::array();
    auto it = doc.find(key);
    if (it == doc.end()) {
        return empty;
    }
    if (!it->is_array()) {
        throw ModelError(std::string("'") + key + "' must be an array");
    }
    return *it;
}

}  // namespace

std::vector<ModelDiagnostic> validate_visual_model(const VisualModel& vm) {
    std::vector<ModelDiagnostic> out;
    std::set<std::string> all_ids;
    auto claim = [&](const std::string& id, std::string_view what) {
        if (id.empty()) {
            out.push_back({Severity::Error, id, std::string(what) + " with empty id"});
        } else if (!all_ids.insert(id).second) {
            out.push_back({Severity::Error, id, "duplicate identity '" + id + "'"});
        }
    };

    std::set<std::string> node_ids;
    for (const auto& n : vm.nodes) {
        claim(n.id, "node");
        node_ids.insert(n.id);
    }
    for (const auto& e : vm.edges) claim(e.id, "edge");
    for (const auto& t : vm.trees) claim(t.id, "tree");
    for (const auto& l : vm.lists) claim(l.id, "list");
    for (const auto& t : vm.texts) claim(t.id, "text");
    for (const auto& s : vm.shapes) claim(s.id, "shape");

    for (const auto& e : vm.edges) {
        if (!node_ids.contains(e.from)) {
            out.push_back({Severity::Error, e.from, "edge " + e.id + " starts at unknown node '" + e.from + "'"});
        }
        if (!node_ids.contains(e.to)) {
            out.push_back({Severity::Error, e.to, "edge " + e.id + " ends at unknown node '" + e.to + "'"});
        }
        if (e.from == e.to) {
            out.push_back({Severity::Warning, e.id, "edge " + e.id + " is a self-loop on '" + e.from + "'"});
        }
    }
    for (const auto& t : vm.trees) {
        check_tree(t, node_ids, out);
    }
    for (const auto& l : vm.lists) {
        for (const auto& item : l.items) {
            if (!all_ids.contains(item)) {
                out.push_back({Severity::Error, item, "list " + l.id + " references unknown element '" + item + "'"});
            }
        }
    }
    return out;
}

bool is_valid(const VisualModel& vm) {
    auto diagnostics = validate_visual_model(vm);
    return std::none_of(diagnostics.begin(), diagnostics.end(),
                        [](const ModelDiagnostic& d) { return d.severity == Severity::Error; });
}

std::string to_dot(const VisualModel& vm) {
    require_valid(vm);
    std::vector<const VisNode*> nodes;
    for (const auto& n : vm.nodes) nodes.push_back(&n);
    std::vector<const VisEdge*> edges;
    for (const auto& e : vm.edges) edges.push_back(&e);
    std::sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
    std::sort(edges.begin(), edges.end(), [](auto* a, auto* b) { return a->id < b->id; });

    std::string out = "digraph \"skoo\" {\n";
    for (const auto* n : nodes) {
        out += "  " + dot_quote(n->id) + " [label=" + dot_quote(n->label) + ", class=" + dot_quote(n->style_class) + "];\n";
    }
    for (const auto* e : edges) {
        out += "  " + dot_quote(e->from) + " -> " + dot_quote(e->to) + " [id=" + dot_quote(e->id) +
               ", label=" + dot_quote(e->label) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string to_json(const VisualModel& vm) {
    require_valid(vm);
    ordered_json doc = ordered_json::object();
    auto& nodes = doc["nodes"] = ordered_json::array();
    for (const auto& n : vm.nodes) {
        ordered_json j;
        j["id"] = n.id;
        j["label"] = n.label;
        j["class"] = n.style_class;
        if (n.payload) {
            j["payload"] = *n.payload;
        }
        nodes.push_back(std::move(j));
    }
    auto& edges = doc["edges"] = ordered_json::array();
    for (const auto& e : vm.edges) {
        edges.push_back(ordered_json{{"id", e.id}, {"from", e.from}, {"to", e.to}, {"label", e.label}});
    }
    auto& trees = doc["trees"] = ordered_json::array();
    for (const auto& t : vm.trees) {
        ordered_json children = ordered_json::object();
        for (const auto& [parent, kids] : t.children) {
            children[parent] = kids;
        }
        trees.push_back(ordered_json{{"id", t.id}, {"root", t.root}, {"children", std::move(children)}});
    }
    auto& lists = doc["lists"] = ordered_json::array();
    for (const auto& l : vm.lists) {
        lists.push_back(ordered_json{{"id", l.id}, {"items", l.items}});
    }
    auto& texts = doc["texts"] = ordered_json::array();
    for (const auto& t : vm.texts) {
        texts.push_back(ordered_json{{"id", t.id}, {"content", t.content}});
    }
    auto& shapes = doc["shapes"] = ordered_json::array();
    for (const auto& s : vm.shapes) {
        shapes.push_back(ordered_json{{"id", s.id}, {"shape", to_string(s.shape)}});
    }
    return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

VisualModel visual_model_from_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError(std::string("visual model JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ModelError("visual model JSON must be an object");
    }
    VisualModel vm;
    for (const auto& j : array_section(doc, "nodes")) {
        VisNode n{string_field(j, "id"), string_field(j, "label"), string_field(j, "class"), std::nullopt};
        if (j.contains("payload")) {
            n.payload = string_field(j, "payload");
        }
        vm.nodes.push_back(std::move(n));
    }
    for (const auto& j : array_section(doc, "edges")) {
        vm.edges.push_back({string_field(j, "id"), string_field(j, "from"), string_field(j, "to"), string_field(j, "label")});
    }
    for (const auto& j : array_section(doc, "trees")) {
        VisTree t{string_field(j, "id"), string_field(j, "root"), {}};
        const auto& children = field(j, "children");
        if (!children.is_object()) {
            throw ModelError("tree children must be an object");
        }
        for (const auto& [parent, kids] : children.items()) {
            t.children[parent] = string_array(kids, "children");
        }
        vm.trees.push_back(std::move(t));
    }
    for (const auto& j : array_section(doc, "lists")) {
        vm.lists.push_back({string_field(j, "id"), string_array(field(j, "items"), "items")});
    }
    for (const auto& j : array_section(doc, "texts")) {
        vm.texts.push_back({string_field(j, "id"), string_field(j, "content")});
    }
    for (const auto& j : array_section(doc, "shapes")) {
        std::string name = string_field(j, "shape");
        auto kind = parse_shape_kind(name);
        if (!kind) {
            throw ModelError("unknown shape '" + name + "'");
        }
        vm.shapes.push_back({string_field(j, "id"), *kind});
    }
    return vm;
}

}  // namespace skoo
