#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace acgi {

struct ColoredGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists, loop-free
    std::vector<int> colors;            // vertex colors, size n

    static ColoredGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                   std::vector<int> colors = {});
    bool has_edge(int u, int v) const;
    bool operator==(const ColoredGraph&) const = default;
};

struct StableColoring {
    int k = 1;
    std::vector<int> tuple_colors;                      // over n^k tuples
    std::vector<std::pair<int, std::size_t>> histogram;  // (color, count), sorted
    int rounds = 0;
};

// Folklore k-WL for k = 2, 3; k = 1 is classic color refinement by neighbor
// multisets. Colors are canonicalized by first occurrence of the sorted
// signatures, so two runs of the same graph agree.
StableColoring wl_refine(const ColoredGraph& g, int k);

// Joint refinement of both graphs with a shared signature dictionary; true
// iff the stable histograms differ.
bool wl_distinguishes(const ColoredGraph& a, const ColoredGraph& b, int k);

}  // namespace acgi
