#include "acgi/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace acgi {

using nlohmann::json;

GraphDocument GraphDocument::from_colored(const ColoredGraph& g) {
    GraphDocument doc;
    doc.n = g.n;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (u < v) doc.edges.push_back({u, v});
    std::sort(doc.edges.begin(), doc.edges.end());
    bool all_zero = std::all_of(g.colors.begin(), g.colors.end(), [](int c) { return c == 0; });
    if (!all_zero) doc.colors = g.colors;
    return doc;
}

ColoredGraph GraphDocument::to_colored() const { return ColoredGraph::from_edges(n, edges, colors); }

namespace {

GraphDocument validate(GraphDocument doc) {
    if (doc.n < 0) throw GraphParseError("graph: n must be nonnegative");
    std::sort(doc.edges.begin(), doc.edges.end());
    for (std::size_t i = 0; i < doc.edges.size(); ++i) {
        auto [u, v] = doc.edges[i];
        if (u >= v) throw GraphParseError("graph: edges must satisfy u < v (got " + std::to_string(u) +
                                          "," + std::to_string(v) + ")");
        if (v >= doc.n) throw GraphParseError("graph: vertex " + std::to_string(v) + " out of range");
        if (i && doc.edges[i] == doc.edges[i - 1]) throw GraphParseError("graph: duplicate edge");
    }
    if (!doc.colors.empty() && static_cast<int>(doc.colors.size()) != doc.n)
        throw GraphParseError("graph: colors must have length n");
    return doc;
}

}  // namespace

GraphDocument parse_graph_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw GraphParseError(std::string("graph json: ") + e.what());
    }
    GraphDocument doc;
    if (!j.contains("n") || !j["n"].is_number_integer()) throw GraphParseError("graph json: missing integer n");
    doc.n = j["n"].get<int>();
    if (j.contains("edges")) {
        for (auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw GraphParseError("graph json: edges must be pairs");
            doc.edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
    }
    if (j.contains("colors")) doc.colors = j["colors"].get<std::vector<int>>();
    if (j.contains("cfi")) doc.cfi_meta = j["cfi"];
    return validate(std::move(doc));
}

GraphDocument parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#')
                return true;
        }
        return false;
    };
    if (!next_line()) throw GraphParseError("graph text: empty input");
    std::istringstream head(line);
    int n = -1;
    std::size_t m = 0;
    if (!(head >> n >> m)) throw GraphParseError("graph text: line " + std::to_string(lineno) + ": expected 'n m'");
    GraphDocument doc;
    doc.n = n;
    for (std::size_t i = 0; i < m; ++i) {
        if (!next_line())
            throw GraphParseError("graph text: line " + std::to_string(lineno + 1) + ": expected " +
                                  std::to_string(m) + " edges, got " + std::to_string(i));
        std::istringstream es(line);
        int u, v;
        if (!(es >> u >> v))
            throw GraphParseError("graph text: line " + std::to_string(lineno) + ": expected 'u v'");
        doc.edges.push_back({std::min(u, v), std::max(u, v)});
    }
    return validate(std::move(doc));
}

GraphDocument load_graph_document(const std::string& text) {
    std::size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return parse_graph_json(text);
    return parse_graph_text(text);
}

GraphDocument load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_graph_document(buf.str());
}

json graph_to_json(const GraphDocument& doc) {
    json j;
    j["n"] = doc.n;
    j["edges"] = json::array();
    for (auto& [u, v] : doc.edges) j["edges"].push_back({u, v});
    if (!doc.colors.empty()) j["colors"] = doc.colors;
    if (!doc.cfi_meta.is_null()) j["cfi"] = doc.cfi_meta;
    return j;
}

std::string emit_graph_json(const GraphDocument& doc) { return graph_to_json(doc).dump(2) + "\n"; }

}  // namespace acgi
