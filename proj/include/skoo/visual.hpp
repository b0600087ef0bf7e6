#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skoo/turtle.hpp"

namespace skoo {

struct VisNode {
    std::string id;
    std::string label;
    std::string style_class;
    std::optional<std::string> payload;  // source IRI, when the node stands for one

    bool operator==(const VisNode&) const = default;
};

struct VisEdge {
    std::string id;
    std::string from;
    std::string to;
    std::string label;

    bool operator==(const VisEdge&) const = default;
};

/// Parent -> ordered children, all node identities.
struct VisTree {
    std::string id;
    std::string root;
    std::map<std::string, std::vector<std::string>> children;

    bool operator==(const VisTree&) const = default;
};

struct VisList {
    std::string id;
    std::vector<std::string> items;

    bool operator==(const VisList&) const = default;
};

struct VisText {
    std::string id;
    std::string content;

    bool operator==(const VisText&) const = default;
};

enum class ShapeKind { Rect, Ellipse, Line };

std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view name);

struct VisShape {
    std::string id;
    ShapeKind shape = ShapeKind::Rect;

    bool operator==(const VisShape&) const = default;
};

/// Geometry-free description of what to display. Layout is left to the
/// consumer (a DOT engine or the browser viewer).
struct VisualModel {
    std::vector<VisNode> nodes;
    std::vector<VisEdge> edges;
    std::vector<VisTree> trees;
    std::vector<VisList> lists;
    std::vector<VisText> texts;
    std::vector<VisShape> shapes;

    bool empty() const noexcept {
        return nodes.empty() && edges.empty() && trees.empty() && lists.empty() && texts.empty() && shapes.empty();
    }

    const VisNode* find_node(std::string_view id) const;

    /// Sorts every element list by id.
    void sort_by_id();

    bool operator==(const VisualModel&) const = default;
};

struct ModelDiagnostic {
    Severity severity = Severity::Error;
    std::string id;  // offending identity
    std::string message;

    bool operator==(const ModelDiagnostic&) const = default;
};

/// One diagnostic per violated invariant: duplicate identities, empty ids,
/// dangling edge endpoints, malformed trees (missing root, cycle, several
/// parents, unknown nodes), unknown list items. Self-loops are warnings.
std::vector<ModelDiagnostic> validate_visual_model(const VisualModel& vm);

/// True when validate_visual_model reports no errors.
bool is_valid(const VisualModel& vm);

/// DOT digraph with one statement per node and edge, ordered by id. Throws
/// ModelError for an invalid model.
std::string to_dot(const VisualModel& vm);

/// Compact JSON with fixed key order:
/// nodes, edges, trees, lists, texts, shapes. Throws ModelError for an
/// invalid model.
std::string to_json(const VisualModel& vm);

/// Inverse of to_json. Throws ModelError on malformed input.
VisualModel visual_model_from_json(std::string_view text);

}  // namespace skoo
