#pragma once

#include <string>

#include "acgi/functor.hpp"
#include "acgi/sym_model.hpp"
#include "acgi/wl.hpp"

namespace acgi {

struct BaseGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v

    static BaseGraph make(int n, std::vector<std::pair<int, int>> edges);  // checks connectivity
    std::vector<std::vector<int>> adjacency() const;
};

BaseGraph base_k4();
BaseGraph base_k33();
BaseGraph base_cube();
BaseGraph base_cycle(int n);
BaseGraph base_random_connected(int n, std::uint64_t seed);

// The twisted/untwisted gadget pair. Vertices: first the even-subset gadget
// vertices c_{x,Y} (color 0), then a_{x,e} and b_{x,e} for each incident pair
// (color 1). Both graphs share the vertex set; the edge sets differ by the
// twist at one special edge.
struct CfiPair {
    ColoredGraph plain, twisted;
    int base_n = 0;
    std::size_t n1 = 0, n2 = 0;  // |X1| and |X2| blocks
    std::pair<int, int> special_edge;
    std::vector<std::string> vertex_names;
};

CfiPair build_cfi(const BaseGraph& q, std::pair<int, int> special_edge);

// Exact F_2 ranks of the lower block rows [A21 A22] of the two adjacency
// matrices, with the unit diagonal on the gadget block.
std::pair<std::size_t, std::size_t> rank_distinguisher(const CfiPair& pair);

// Encoding of a 2-colored gadget graph in U(x)U + U + U + k, with the
// relation made reflexive on the second color class so the rank functor
// sees the same block the rank distinguisher uses.
StructureEncoding encode_cfi_graph(const ColoredGraph& g);

// The degree-3 functor whose evaluation on such an encoding is the column
// space of the lower block: dim eval = rank of the block.
FunctorExpr cfi_functor(const FieldSpec& F2, int n_total);

}  // namespace acgi
