#include "acgi/wl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace acgi {

ColoredGraph ColoredGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                      std::vector<int> colors) {
    ColoredGraph g;
    g.n = n;
    g.adj.resize(n);
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("ColoredGraph: vertex out of range");
        if (u == v) throw std::invalid_argument("ColoredGraph: loops are not allowed");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& lst : g.adj) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    if (colors.empty()) colors.assign(n, 0);
    if (static_cast<int>(colors.size()) != n) throw std::invalid_argument("ColoredGraph: colors length");
    g.colors = std::move(colors);
    return g;
}

bool ColoredGraph::has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

namespace {

using Sig = std::vector<int>;

std::size_t pow_sz(int n, int k) {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
    return r;
}

// initial color of a k-tuple: equality pattern, vertex colors, adjacency bits
Sig tuple_atom(const ColoredGraph& g, const std::vector<int>& tup) {
    Sig s;
    int k = static_cast<int>(tup.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            s.push_back(tup[i] == tup[j]);
            s.push_back(g.has_edge(tup[i], tup[j]));
        }
    for (int i = 0; i < k; ++i) s.push_back(g.colors[tup[i]]);
    return s;
}

struct Refiner {
    // joint state of one or two graphs refined in lockstep
    std::vector<const ColoredGraph*> graphs;
    int k;
    std::vector<std::vector<int>> colors;  // per graph, over n^k tuples

    explicit Refiner(std::vector<const ColoredGraph*> gs, int kk) : graphs(std::move(gs)), k(kk) {
        std::map<Sig, int> dict;
        for (const ColoredGraph* g : graphs) {
            std::vector<int> col(pow_sz(g->n, k));
            std::vector<int> tup(k);
            for (std::size_t t = 0; t < col.size(); ++t) {
                std::size_t tmp = t;
                for (int q = k - 1; q >= 0; --q) {
                    tup[q] = static_cast<int>(tmp % g->n);
                    tmp /= g->n;
                }
                Sig s = tuple_atom(*g, tup);
                auto [it, fresh] = dict.try_emplace(s, static_cast<int>(dict.size()));
                col[t] = it->second;
            }
            colors.push_back(std::move(col));
        }
        canonicalize();
    }

    // one refinement round; returns true if any class split
    bool round() {
        std::map<Sig, int> dict;
        std::vector<std::vector<int>> next(colors.size());
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const ColoredGraph& g = *graphs[gi];
            const std::vector<int>& col = colors[gi];
            std::vector<int> out(col.size());
            std::vector<int> tup(k);
            for (std::size_t t = 0; t < col.size(); ++t) {
                std::size_t tmp = t;
                for (int q = k - 1; q >= 0; --q) {
                    tup[q] = static_cast<int>(tmp % g.n);
                    tmp /= g.n;
                }
                Sig sig{col[t]};
                if (k == 1) {
                    // classic color refinement: neighbor color multiset
                    std::vector<int> nb;
                    for (int w : g.adj[tup[0]]) nb.push_back(col[w]);
                    std::sort(nb.begin(), nb.end());
                    sig.insert(sig.end(), nb.begin(), nb.end());
                } else {
                    // folklore: multiset over w of the k-vector of substituted colors
                    std::vector<Sig> subs;
                    subs.reserve(g.n);
                    for (int w = 0; w < g.n; ++w) {
                        Sig v(k);
                        for (int pos = 0; pos < k; ++pos) {
                            std::size_t stride = pow_sz(g.n, k - 1 - pos);
                            std::size_t t2 = t - static_cast<std::size_t>(tup[pos]) * stride +
                                             static_cast<std::size_t>(w) * stride;
                            v[pos] = col[t2];
                        }
                        subs.push_back(std::move(v));
                    }
                    std::sort(subs.begin(), subs.end());
                    for (auto& v : subs) sig.insert(sig.end(), v.begin(), v.end());
                }
                auto [it, fresh] = dict.try_emplace(sig, static_cast<int>(dict.size()));
                out[t] = it->second;
            }
            next[gi] = std::move(out);
        }
        bool changed = false;
        for (std::size_t gi = 0; gi < colors.size(); ++gi)
            if (count_classes(next[gi]) != count_classes(colors[gi])) changed = true;
        // joint class count can grow even when per-graph counts are stable
        if (!changed) changed = joint_classes(next) != joint_classes(colors);
        colors = std::move(next);
        canonicalize();
        return changed;
    }

    static std::size_t count_classes(const std::vector<int>& col) {
        std::vector<int> c = col;
        std::sort(c.begin(), c.end());
        return std::unique(c.begin(), c.end()) - c.begin();
    }

    std::size_t joint_classes(const std::vector<std::vector<int>>& cols) const {
        std::vector<int> all;
        for (auto& c : cols) all.insert(all.end(), c.begin(), c.end());
        std::sort(all.begin(), all.end());
        return std::unique(all.begin(), all.end()) - all.begin();
    }

    // stable ids: first occurrence order after sorting signatures, shared
    // across the graphs so histograms are comparable
    void canonicalize() {
        std::map<int, int> remap;
        std::vector<int> seen;
        for (auto& col : colors) seen.insert(seen.end(), col.begin(), col.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (std::size_t i = 0; i < seen.size(); ++i) remap[seen[i]] = static_cast<int>(i);
        for (auto& col : colors)
            for (auto& c : col) c = remap[c];
    }

    void run() {
        std::size_t cap = 0;
        for (auto& col : colors) cap = std::max(cap, col.size());
        for (std::size_t r = 0; r <= cap + 1; ++r)
            if (!round()) return;
    }

    std::vector<std::pair<int, std::size_t>> histogram(std::size_t gi) const {
        std::map<int, std::size_t> h;
        for (int c : colors[gi]) ++h[c];
        return {h.begin(), h.end()};
    }
};

}  // namespace

StableColoring wl_refine(const ColoredGraph& g, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("wl_refine: k must be 1, 2 or 3");
    Refiner r({&g}, k);
    int rounds = 0;
    std::size_t cap = pow_sz(g.n, k);
    for (std::size_t i = 0; i <= cap + 1; ++i) {
        ++rounds;
        if (!r.round()) break;
    }
    StableColoring out;
    out.k = k;
    out.tuple_colors = r.colors[0];
    out.histogram = r.histogram(0);
    out.rounds = rounds;
    return out;
}

bool wl_distinguishes(const ColoredGraph& a, const ColoredGraph& b, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("wl_distinguishes: k must be 1, 2 or 3");
    if (a.n != b.n) throw std::invalid_argument("wl_distinguishes: size mismatch");
    Refiner r({&a, &b}, k);
    r.run();
    return r.histogram(0) != r.histogram(1);
}

}  // namespace acgi
