#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "acgi/cfi.hpp"
#include "acgi/oracle.hpp"
#include "acgi/wl.hpp"

using namespace acgi;

namespace {

ColoredGraph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return ColoredGraph::from_edges(n, e);
}

ColoredGraph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return ColoredGraph::from_edges(n, e);
}

ColoredGraph two_cycles3() {
    return ColoredGraph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

ColoredGraph relabel(const ColoredGraph& g, const Perm& m) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v])
            if (v < w) e.push_back({std::min(m[v], m[w]), std::max(m[v], m[w])});
    std::vector<int> colors(g.n);
    for (int v = 0; v < g.n; ++v) colors[m[v]] = g.colors[v];
    return ColoredGraph::from_edges(g.n, e, colors);
}

ColoredGraph random_graph(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2) e.push_back({i, j});
    return ColoredGraph::from_edges(n, e);
}

}  // namespace

TEST_CASE("1-WL basics") {
    // vertex-transitive: a single class
    StableColoring c6 = wl_refine(cycle(6), 1);
    CHECK(c6.histogram.size() == 1);

    // P3: ends vs middle
    StableColoring p3 = wl_refine(path(3), 1);
    CHECK(p3.histogram.size() == 2);

    // C6 vs C3 + C3: both 2-regular, identical histograms
    CHECK_FALSE(wl_distinguishes(cycle(6), two_cycles3(), 1));

    // P4 vs K3 + isolated vertex: degree sequences differ
    ColoredGraph k3_iso = ColoredGraph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(wl_distinguishes(path(4), k3_iso, 1));

    CHECK_THROWS(wl_refine(path(3), 4));
    CHECK_THROWS(wl_refine(path(3), 0));
    CHECK_THROWS(wl_distinguishes(path(3), path(4), 1));  // size mismatch
}

TEST_CASE("2-WL separates C6 from C3 + C3") {
    CHECK(wl_distinguishes(cycle(6), two_cycles3(), 2));
}

TEST_CASE("WL never distinguishes isomorphic graphs") {
    std::mt19937_64 rng(5);
    for (int n : {4, 5, 6}) {
        for (int it = 0; it < 15; ++it) {
            ColoredGraph g = random_graph(n, rng);
            Perm m = perm_identity(n);
            std::shuffle(m.begin(), m.end(), rng);
            ColoredGraph h = relabel(g, m);
            CHECK_FALSE(wl_distinguishes(g, h, 1));
            CHECK_FALSE(wl_distinguishes(g, h, 2));
            if (n <= 5) CHECK_FALSE(wl_distinguishes(g, h, 3));
        }
    }
}

TEST_CASE("monotonicity: k-distinguished implies (k+1)-distinguished") {
    std::mt19937_64 rng(77);
    int hits = 0;
    for (int it = 0; it < 40; ++it) {
        int n = 4 + static_cast<int>(rng() % 2);
        ColoredGraph g = random_graph(n, rng);
        ColoredGraph h = random_graph(n, rng);
        bool d1 = wl_distinguishes(g, h, 1);
        bool d2 = wl_distinguishes(g, h, 2);
        bool d3 = wl_distinguishes(g, h, 3);
        if (d1) {
            CHECK(d2);
            ++hits;
        }
        if (d2) CHECK(d3);
    }
    CHECK(hits > 5);
}

TEST_CASE("1-WL is blind on the CFI pair over K33") {
    CfiPair pair = build_cfi(base_k33(), {0, 3});
    CHECK(pair.plain.n == 60);
    CHECK_FALSE(wl_distinguishes(pair.plain, pair.twisted, 1));
}
