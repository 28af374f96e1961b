#include "acgi/cfi.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace acgi {

BaseGraph BaseGraph::make(int n, std::vector<std::pair<int, int>> edges) {
    BaseGraph g;
    g.n = n;
    for (auto& [u, v] : edges) {
        if (u == v || u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("BaseGraph: bad edge");
        g.edges.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    // connectivity
    std::vector<std::vector<int>> adj = g.adjacency();
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
    }
    if (count != n) throw std::invalid_argument("BaseGraph: graph must be connected");
    for (int v = 0; v < n; ++v)
        if (adj[v].empty()) throw std::invalid_argument("BaseGraph: isolated vertex");
    return g;
}

std::vector<std::vector<int>> BaseGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

BaseGraph base_k4() { return BaseGraph::make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

BaseGraph base_k33() {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) e.push_back({a, b});
    return BaseGraph::make(6, std::move(e));
}

BaseGraph base_cube() {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < 8; ++v)
        for (int bit = 0; bit < 3; ++bit) {
            int w = v ^ (1 << bit);
            if (v < w) e.push_back({v, w});
        }
    return BaseGraph::make(8, std::move(e));
}

BaseGraph base_cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return BaseGraph::make(n, std::move(e));
}

BaseGraph base_random_connected(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> e;
    // random spanning tree, then extra edges
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng() % v);
        e.push_back({u, v});
    }
    int extra = static_cast<int>(rng() % (n + 1));
    for (int i = 0; i < extra; ++i) {
        int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        if (u != v) e.push_back({std::min(u, v), std::max(u, v)});
    }
    return BaseGraph::make(n, std::move(e));
}

namespace {

// even-cardinality subsets of a set of size deg, in Gray-code order
std::vector<std::uint32_t> even_subsets(int deg) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < (1u << deg); ++i) {
        std::uint32_t gray = i ^ (i >> 1);
        if (__builtin_popcount(gray) % 2 == 0) out.push_back(gray);
    }
    return out;
}

}  // namespace

CfiPair build_cfi(const BaseGraph& q, std::pair<int, int> special_edge) {
    auto [sx, sy] = special_edge;
    if (sx > sy) std::swap(sx, sy);
    if (std::find(q.edges.begin(), q.edges.end(), std::make_pair(sx, sy)) == q.edges.end())
        throw std::invalid_argument("build_cfi: special edge is not an edge of the base graph");

    // incident edge lists (indices into q.edges)
    std::vector<std::vector<int>> incident(q.n);
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        incident[q.edges[e].first].push_back(static_cast<int>(e));
        incident[q.edges[e].second].push_back(static_cast<int>(e));
    }

    CfiPair pair;
    pair.base_n = q.n;
    pair.special_edge = {sx, sy};

    // vertex ids: all c_{x,Y} first, then a_{x,e}, b_{x,e} grouped by (x, e)
    std::vector<std::vector<int>> c_id(q.n);
    for (int x = 0; x < q.n; ++x) {
        int deg = static_cast<int>(incident[x].size());
        for (std::uint32_t mask : even_subsets(deg)) {
            c_id[x].push_back(static_cast<int>(pair.vertex_names.size()));
            std::string name = "c_" + std::to_string(x) + "_" + std::to_string(mask);
            pair.vertex_names.push_back(std::move(name));
        }
    }
    pair.n1 = pair.vertex_names.size();
    std::map<std::pair<int, int>, int> a_id, b_id;  // (x, edge index) -> vertex
    for (int x = 0; x < q.n; ++x)
        for (int e : incident[x]) {
            a_id[{x, e}] = static_cast<int>(pair.vertex_names.size());
            pair.vertex_names.push_back("a_" + std::to_string(x) + "_" + std::to_string(e));
            b_id[{x, e}] = static_cast<int>(pair.vertex_names.size());
            pair.vertex_names.push_back("b_" + std::to_string(x) + "_" + std::to_string(e));
        }
    pair.n2 = pair.vertex_names.size() - pair.n1;

    std::vector<std::pair<int, int>> edges;
    // gadget edges: a for members of Y, b for the complement
    for (int x = 0; x < q.n; ++x) {
        int deg = static_cast<int>(incident[x].size());
        auto masks = even_subsets(deg);
        for (std::size_t yi = 0; yi < masks.size(); ++yi) {
            int c = c_id[x][yi];
            for (int pos = 0; pos < deg; ++pos) {
                int e = incident[x][pos];
                bool in_y = (masks[yi] >> pos) & 1;
                edges.push_back({c, in_y ? a_id[{x, e}] : b_id[{x, e}]});
            }
        }
    }
    // cross edges along each base edge
    std::vector<std::pair<int, int>> cross_plain, cross_twisted;
    int special_index = -1;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [x, y] = q.edges[e];
        int ei = static_cast<int>(e);
        if (x == sx && y == sy) special_index = ei;
        cross_plain.push_back({a_id[{x, ei}], a_id[{y, ei}]});
        cross_plain.push_back({b_id[{x, ei}], b_id[{y, ei}]});
        if (x == sx && y == sy) {
            cross_twisted.push_back({a_id[{x, ei}], b_id[{y, ei}]});
            cross_twisted.push_back({a_id[{y, ei}], b_id[{x, ei}]});
        } else {
            cross_twisted.push_back({a_id[{x, ei}], a_id[{y, ei}]});
            cross_twisted.push_back({b_id[{x, ei}], b_id[{y, ei}]});
        }
    }
    (void)special_index;

    int total = static_cast<int>(pair.vertex_names.size());
    std::vector<int> colors(total, 1);
    for (std::size_t v = 0; v < pair.n1; ++v) colors[v] = 0;

    std::vector<std::pair<int, int>> plain_edges = edges, twisted_edges = edges;
    plain_edges.insert(plain_edges.end(), cross_plain.begin(), cross_plain.end());
    twisted_edges.insert(twisted_edges.end(), cross_twisted.begin(), cross_twisted.end());
    pair.plain = ColoredGraph::from_edges(total, plain_edges, colors);
    pair.twisted = ColoredGraph::from_edges(total, twisted_edges, colors);
    return pair;
}

namespace {

// rank over F_2 of [A21 | A22 + I] for one gadget graph
std::size_t block_rank(const ColoredGraph& g, std::size_t n1, std::size_t n2) {
    FieldSpec F2 = FieldSpec::prime(2);
    FpMatrix b(n2, n1 + n2);
    for (std::size_t r = 0; r < n2; ++r) {
        int v = static_cast<int>(n1 + r);
        for (int w : g.adj[v]) b.at(r, w) = 1;
        b.at(r, v) = F2.add(b.at(r, v), 1);  // reflexive gadget block
    }
    return rref(F2, b).second;
}

}  // namespace

std::pair<std::size_t, std::size_t> rank_distinguisher(const CfiPair& pair) {
    return {block_rank(pair.plain, pair.n1, pair.n2), block_rank(pair.twisted, pair.n1, pair.n2)};
}

StructureEncoding encode_cfi_graph(const ColoredGraph& g) {
    Relation rel{2, {}};
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) rel.tuples.push_back({u, v});
    for (int v = 0; v < g.n; ++v)
        if (g.colors[v] == 1) rel.tuples.push_back({v, v});
    Relation color0{1, {}}, color1{1, {}};
    for (int v = 0; v < g.n; ++v) (g.colors[v] == 0 ? color0 : color1).tuples.push_back({v});
    return encode_structure_free(g.n, {rel, color0, color1});
}

FunctorExpr cfi_functor(const FieldSpec& F2, int n_total) {
    if (F2.p != 2 || F2.k != 1) throw std::invalid_argument("cfi_functor: the rank functor needs F_2");
    const std::size_t n = static_cast<std::size_t>(n_total);
    const int d = 3;
    Representation V = rep_light(nullptr, n * n + 2 * n + 1, 2, "U^2+U^1+U^1+k");
    Representation EndU = rep_light(nullptr, n * n, 2, "EndU");
    Representation U = rep_light(nullptr, n, 1, "U");

    // F1 = diag . p2 : V -> End(U), the projection onto the span of the
    // second color class
    FunctorExpr p2 = FunctorExpr::linear(F2, d, V, U, LinearMap::block_pick(V.dim, n * n + n, n));
    FunctorExpr f1 = FunctorExpr::compose(
        FunctorExpr::linear(F2, d, U, EndU, LinearMap::diag_embed(n)), p2);
    // F2(Z) = Z (x) U
    FunctorExpr id_end = FunctorExpr::linear(F2, d, EndU, EndU, LinearMap::identity(n * n));
    FunctorExpr full_u = FunctorExpr::const_full(F2, d, EndU, U);
    FunctorExpr f2 = FunctorExpr::tensor(id_end, full_u);
    // F3: End(U) (x) U -> U, f (x) v -> f(v)
    FunctorExpr f3a = FunctorExpr::linear(F2, d, f2.target(), U, LinearMap::contract(n));
    FunctorExpr inner = FunctorExpr::compose(f3a, FunctorExpr::compose(f2, f1));
    // F4 = q : V -> End(U)
    FunctorExpr f4 = FunctorExpr::linear(F2, d, V, EndU, LinearMap::block_pick(V.dim, 0, n * n));
    FunctorExpr paired = FunctorExpr::tensor(f4, inner);
    FunctorExpr f3b = FunctorExpr::linear(F2, d, paired.target(), U, LinearMap::contract(n));
    return FunctorExpr::compose(f3b, paired);
}

}  // namespace acgi
