#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "acgi/category.hpp"
#include "acgi/oracle.hpp"

using namespace acgi;

namespace {

Relation sym_edges(const std::vector<std::pair<int, int>>& e) {
    Relation r{2, {}};
    for (auto& [u, v] : e) {
        r.tuples.push_back({u, v});
        r.tuples.push_back({v, u});
    }
    return r;
}

AffineSubspace random_affine(const FieldSpec& F, std::size_t ambient, std::mt19937_64& rng,
                             std::size_t max_dirs = 1) {
    std::uniform_int_distribution<std::uint64_t> u(0, F.p - 1);
    std::uniform_int_distribution<std::size_t> nd(0, max_dirs);
    FpVec pt(ambient);
    for (auto& x : pt) x = u(rng);
    FpMatrix dirs(nd(rng), ambient);
    for (auto& x : dirs.a) x = u(rng);
    return AffineSubspace::make(F, std::move(pt), FpSubspace::span(F, dirs));
}

}  // namespace

TEST_CASE("group table") {
    GroupTable g4(4);
    CHECK(g4.size() == 24);
    for (std::size_t i = 0; i < g4.size(); ++i) {
        CHECK(g4.index_of(g4.perms[i]) == i);
        std::size_t inv = g4.inverse(i);
        CHECK(g4.mult(i, inv) == g4.index_of(perm_identity(4)));
    }
    // associativity spot check
    std::mt19937_64 rng(1);
    for (int it = 0; it < 50; ++it) {
        std::size_t a = rng() % 24, b = rng() % 24, c = rng() % 24;
        CHECK(g4.mult(g4.mult(a, b), c) == g4.mult(a, g4.mult(b, c)));
    }
}

TEST_CASE("orbit witnesses") {
    FieldSpec F5 = FieldSpec::prime(5);
    SymRingModel m(4, 2, F5);
    Relation p3 = sym_edges({{0, 1}, {1, 2}});
    Relation p3_relabeled = sym_edges({{2, 3}, {3, 1}});
    Relation k3 = sym_edges({{0, 1}, {1, 2}, {0, 2}});
    StructureEncoding e1 = encode_structure(m, {p3});
    StructureEncoding e2 = encode_structure(m, {p3_relabeled});
    StructureEncoding e3 = encode_structure(m, {k3});

    auto id_witness = orbit_witness(e1, e1);
    REQUIRE(id_witness.has_value());
    CHECK(*id_witness == perm_identity(4));

    auto w = orbit_witness(e1, e2);
    REQUIRE(w.has_value());
    TensorShape shape{4, e1.arities};
    CHECK(act_tensor(shape, *w, e1.vec) == e2.vec);

    CHECK_FALSE(orbit_witness(e1, e3).has_value());
}

TEST_CASE("brute-force Hom agrees with the symbolic path on random objects") {
    FieldSpec F5 = FieldSpec::prime(5);
    SymRingModel model(4, 2, F5);
    Representation mat = conjugation_rep(model);
    TensorShape shape{4, {2}};
    std::mt19937_64 rng(97);
    for (int it = 0; it < 50; ++it) {
        AffineSubspace x1 = random_affine(F5, 16, rng);
        AffineSubspace x2 = random_affine(F5, 16, rng);
        HomSpace h = hom_space(mat, x1, x2);
        BruteHom bh = hom_space_bruteforce(F5, shape, 2, x1, x2);
        CHECK(bh.rd_dim == model.dim());
        CHECK(h.dim() == bh.hom_dim);
        // after mapping to function space, the ideals agree as subspaces
        if (it < 10) {
            FpSubspace mapped = [&] {
                std::vector<FpVec> rows;
                FpSubspace ideal = annihilator(F5, h.funcs);
                const auto& perms = model.sample_points();
                for (std::size_t r = 0; r < ideal.dim(); ++r) {
                    FpVec fn(perms.size(), 0);
                    for (std::size_t gi = 0; gi < perms.size(); ++gi) {
                        std::uint64_t acc = 0;
                        for (std::size_t i = 0; i < model.dim(); ++i)
                            acc = F5.add(acc, F5.mul(ideal.basis.at(r, i), model.evaluate(i, perms[gi])));
                        fn[gi] = acc;
                    }
                    rows.push_back(std::move(fn));
                }
                return rows.empty() ? FpSubspace::zero(perms.size()) : FpSubspace::span_rows(F5, rows);
            }();
            CHECK(mapped == bh.ideal_functions);
        }
    }
}

TEST_CASE("sigma_g functionals annihilate the generating space when g moves X1 into X2") {
    FieldSpec F5 = FieldSpec::prime(5);
    SymRingModel model(4, 2, F5);
    Representation mat = conjugation_rep(model);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> val(0, 4);
    for (const Perm& g : model.sample_points()) {
        FpVec a(16);
        for (auto& x : a) x = val(rng);
        FpVec ga = mu_eval(mat, model.sigma(g), a);
        FpSubspace s = generating_space(mat, AffineSubspace::singleton(F5, a),
                                        AffineSubspace::singleton(F5, ga));
        FpVec sg = model.sigma(g);
        for (std::size_t r = 0; r < s.dim(); ++r) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < model.dim(); ++i)
                acc = F5.add(acc, F5.mul(s.basis.at(r, i), sg[i]));
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("graph isomorphism search") {
    ColoredGraph self = ColoredGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto w = graph_iso_search(self, self);
    REQUIRE(w.has_value());

    ColoredGraph c6 = ColoredGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    ColoredGraph cc3 = ColoredGraph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK_FALSE(graph_iso_search(c6, cc3).has_value());

    // random relabelings are found and verified
    std::mt19937_64 rng(6);
    for (int it = 0; it < 20; ++it) {
        int n = 6 + static_cast<int>(rng() % 3);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.push_back({i, j});
        ColoredGraph g = ColoredGraph::from_edges(n, edges);
        Perm m = perm_identity(n);
        std::shuffle(m.begin(), m.end(), rng);
        std::vector<std::pair<int, int>> edges2;
        for (auto& [u, v] : edges) edges2.push_back({std::min(m[u], m[v]), std::max(m[u], m[v])});
        ColoredGraph h = ColoredGraph::from_edges(n, edges2);
        auto iso = graph_iso_search(g, h);
        REQUIRE(iso.has_value());
        for (int u = 0; u < n; ++u)
            for (int v : g.adj[u]) CHECK(h.has_edge((*iso)[u], (*iso)[v]));
    }
}

TEST_CASE("soundness on all 4-vertex graph pairs: NotIsomorphic implies no witness") {
    FieldSpec F5 = FieldSpec::prime(5);
    SymRingModel model(4, 2, F5);
    // the 11 isomorphism classes of simple graphs on 4 vertices
    std::vector<std::vector<std::pair<int, int>>> graphs = {
        {},
        {{0, 1}},
        {{0, 1}, {2, 3}},
        {{0, 1}, {1, 2}},
        {{0, 1}, {1, 2}, {2, 3}},
        {{0, 1}, {1, 2}, {0, 2}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
        {{0, 1}, {1, 2}, {0, 2}, {0, 3}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}},
        {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}},
        {{0, 1}, {0, 2}, {0, 3}},
    };
    std::vector<StructureEncoding> encs;
    for (auto& e : graphs) encs.push_back(encode_structure(model, {sym_edges(e)}));
    for (std::size_t i = 0; i < encs.size(); ++i)
        for (std::size_t j = 0; j < encs.size(); ++j) {
            AffineSubspace x1 = AffineSubspace::singleton(F5, encs[i].vec);
            AffineSubspace x2 = AffineSubspace::singleton(F5, encs[j].vec);
            IsoVerdict v = is_isomorphic(encs[i].rep, x1, x2, {.seed = i * 16 + j, .trials = 8});
            bool oracle_iso = orbit_witness(encs[i], encs[j]).has_value();
            CHECK(oracle_iso == (i == j));
            if (v.not_isomorphic()) CHECK_FALSE(oracle_iso);
            if (oracle_iso) CHECK(v.isomorphic());
        }
}
