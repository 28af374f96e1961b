#pragma once

#include <string>

#include <json.hpp>

#include "acgi/wl.hpp"

namespace acgi {

struct GraphParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphDocument {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, no duplicates
    std::vector<int> colors;                 // empty, or one color per vertex
    nlohmann::json cfi_meta;                 // present on generated gadget pairs

    static GraphDocument from_colored(const ColoredGraph& g);
    ColoredGraph to_colored() const;
    bool operator==(const GraphDocument& o) const {
        return n == o.n && edges == o.edges && colors == o.colors;
    }
};

GraphDocument parse_graph_json(const std::string& text);
// whitespace edge list: first line "n m", then m lines "u v"
GraphDocument parse_graph_text(const std::string& text);
// accepts either format
GraphDocument load_graph_document(const std::string& text);
GraphDocument load_graph_file(const std::string& path);

nlohmann::json graph_to_json(const GraphDocument& doc);
std::string emit_graph_json(const GraphDocument& doc);

}  // namespace acgi
