#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "acgi/torus_model.hpp"

using namespace acgi;

namespace {

// dense coords of a Laurent polynomial given as {exp: coeff}
FpVec laurent(const TorusRingModel& m, const std::map<int, std::uint64_t>& terms) {
    FpVec v(m.dim(), 0);
    for (auto& [e, c] : terms) v[m.index_of(e)] = c % m.field().p;
    return v;
}

FpSubspace random_subspace(const RingModel& m, std::mt19937_64& rng, std::size_t max_rows) {
    std::uniform_int_distribution<std::uint64_t> u(0, m.field().p - 1);
    std::uniform_int_distribution<std::size_t> rows(0, max_rows);
    FpMatrix mat(rows(rng), m.dim());
    for (auto& x : mat.a) x = u(rng);
    return FpSubspace::span(m.field(), mat);
}

// N^2 coordinates of Delta(v)
FpVec delta_vec(const RingModel& m, std::span<const std::uint64_t> v) { return coproduct_expand(m, v); }

// span of A (x) R_d + R_d (x) B inside R_d (x) R_d
RrefAccumulator two_sided_span(const RingModel& m, const FpSubspace& a, const FpSubspace& b) {
    const FieldSpec& F = m.field();
    std::size_t n = m.dim();
    RrefAccumulator acc(F, n * n);
    FpVec row(n * n);
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(row.begin(), row.end(), 0);
            for (std::size_t i = 0; i < n; ++i) row[i * n + j] = a.basis.at(r, i);
            acc.insert(row);
        }
    for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(row.begin(), row.end(), 0);
            for (std::size_t j = 0; j < n; ++j) row[i * n + j] = b.basis.at(r, j);
            acc.insert(row);
        }
    return acc;
}

}  // namespace

TEST_CASE("torus model structure") {
    FieldSpec F7 = FieldSpec::prime(7);
    TorusRingModel m(5, F7);
    CHECK(m.dim() == 11);
    for (int e = 0; e <= 5; ++e) CHECK(m.dim_at(e) == std::size_t(2 * e + 1));

    // counit of t^3 - 2 is 1 - 2 = -1
    FpVec f = laurent(m, {{3, 1}, {0, 5}});
    const FpVec eps = m.counit_vector();
    std::uint64_t val = 0;
    for (std::size_t i = 0; i < m.dim(); ++i) val = F7.add(val, F7.mul(f[i], eps[i]));
    CHECK(val == 6);  // -1 mod 7

    // antipode of t^5 - 1 is t^-5 - 1
    FpVec g = laurent(m, {{5, 1}, {0, 6}});
    CHECK(m.antipode_apply(g) == laurent(m, {{-5, 1}, {0, 6}}));

    // grouplike coassociativity and counit law on every basis element
    for (std::size_t i = 0; i < m.dim(); ++i) {
        auto cop = m.coproduct(i);
        REQUIRE(cop.size() == 1);
        CHECK(cop[0].left->terms == SparseVec::unit(i).terms);
        CHECK(cop[0].right->terms == SparseVec::unit(i).terms);
        CHECK(m.counit(i) == 1);
    }

    // products truncate outside the exponent window
    CHECK(m.product(m.index_of(3), m.index_of(2)).has_value());
    CHECK_FALSE(m.product(m.index_of(3), m.index_of(3)).has_value());
}

TEST_CASE("one step closure basics") {
    FieldSpec F7 = FieldSpec::prime(7);
    TorusRingModel m(5, F7);
    FpSubspace zero = FpSubspace::zero(m.dim());
    CHECK(one_step_closure(m, zero).dim() == 0);

    // a subspace that is already a truncated ideal stays put
    FpVec t2m1 = laurent(m, {{2, 1}, {0, 6}});
    std::vector<FpVec> rows;
    for (int b = -5; b <= 3; ++b) {
        FpVec v(m.dim(), 0);
        v[m.index_of(b + 2)] = 1;
        v[m.index_of(b)] = 6;
        rows.push_back(v);
    }
    FpSubspace ideal = FpSubspace::span_rows(F7, rows);
    CHECK(ideal.dim() == 9);
    CHECK(one_step_closure(m, ideal) == ideal);
}

namespace {

// (Delta (x) id) Delta = (id (x) Delta) Delta on every basis element,
// expanded into n^3 coordinates
void check_coassociativity(const RingModel& m) {
    const FieldSpec& F = m.field();
    const std::size_t n = m.dim();
    std::vector<FpVec> delta = coproduct_matrix(m);
    for (std::size_t b = 0; b < n; ++b) {
        FpVec lhs(n * n * n, 0), rhs(n * n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t c = delta[b][i * n + j];
                if (!c) continue;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        std::uint64_t dl = delta[i][k * n + l];
                        if (dl)
                            lhs[(k * n + l) * n + j] =
                                F.add(lhs[(k * n + l) * n + j], F.mul(c, dl));
                        std::uint64_t dr = delta[j][k * n + l];
                        if (dr)
                            rhs[(i * n + k) * n + l] =
                                F.add(rhs[(i * n + k) * n + l], F.mul(c, dr));
                    }
            }
        CHECK(lhs == rhs);
    }
}

}  // namespace

TEST_CASE("coproduct matrix is coassociative") {
    FieldSpec F5 = FieldSpec::prime(5);
    TorusRingModel m(3, F5);
    check_coassociativity(m);
}

TEST_CASE("one step from the diagonal generator") {
    FieldSpec F7 = FieldSpec::prime(7);
    TorusRingModel m(5, F7);
    FpVec gen = laurent(m, {{5, 1}, {3, 6}});  // t^5 - t^3
    FpSubspace s = FpSubspace::span_rows(F7, {gen});
    FpSubspace step = one_step_closure(m, s);
    CHECK(subspace_leq(F7, s, step));
    // the window products t^b (t^2 - 1) for b in [-2, 3] appear in one pass;
    // the remaining b in [-5, -3] need a second pass through lower windows
    for (int b = -2; b <= 3; ++b) {
        FpVec v(m.dim(), 0);
        v[m.index_of(b + 2)] = 1;
        v[m.index_of(b)] = 6;
        CHECK(subspace_contains(F7, step, v));
    }
    CHECK(step.dim() == 6);
    CHECK(closure(m, s).span.dim() == 9);
}

TEST_CASE("Gm worked example: diagonal target ideal") {
    for (std::uint64_t p : {7ull, 11ull, 31ull}) {
        FieldSpec F = FieldSpec::prime(p);
        TorusRingModel m(5, F);
        FpVec gen = laurent(m, {{5, 1}, {3, p - 1}});  // t^5 - t^3
        FpSubspace s = FpSubspace::span_rows(F, {gen});
        TruncatedIdeal ideal = closure(m, s);
        CHECK(ideal.span.dim() == 9);
        // spanned by t^b (t^2 - 1) for b in [-5, 3]
        for (int b = -5; b <= 3; ++b) {
            FpVec v(m.dim(), 0);
            v[m.index_of(b + 2)] = 1;
            v[m.index_of(b)] = p - 1;
            CHECK(subspace_contains(F, ideal.span, v));
        }
        CHECK(m.dim() - ideal.span.dim() == 2);  // R_5 / I is 2-dimensional
    }
}

TEST_CASE("Gm worked example: singleton pair reaches a unit iff 31 is one") {
    // S = span{t^3 - 2, t^5 - 1}; the elimination chain ends at the constant 31
    for (std::uint64_t p : {7ull, 11ull, 13ull}) {
        FieldSpec F = FieldSpec::prime(p);
        TorusRingModel m(5, F);
        FpSubspace s = FpSubspace::span_rows(
            F, {laurent(m, {{3, 1}, {0, p - 2}}), laurent(m, {{5, 1}, {0, p - 1}})});
        CHECK(closure(m, s).span.dim() == m.dim());
    }
    {
        FieldSpec F = FieldSpec::prime(31);
        TorusRingModel m(5, F);
        FpSubspace s = FpSubspace::span_rows(
            F, {laurent(m, {{3, 1}, {0, 29}}), laurent(m, {{5, 1}, {0, 30}})});
        TruncatedIdeal ideal = closure(m, s);
        CHECK(ideal.span.dim() < m.dim());
        // sigma_4 annihilates the ideal: 4^3 = 2 and 4^5 = 1 mod 31
        FpVec sigma = m.sigma(4);
        for (std::size_t r = 0; r < ideal.span.dim(); ++r) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < m.dim(); ++i)
                acc = F.add(acc, F.mul(ideal.span.basis.at(r, i), sigma[i]));
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("span of 1 closes to everything") {
    FieldSpec F5 = FieldSpec::prime(5);
    TorusRingModel m(4, F5);
    FpVec one(m.dim(), 0);
    one[m.unit_index()] = 1;
    CHECK(closure(m, FpSubspace::span_rows(F5, {one})).span.dim() == m.dim());
}

TEST_CASE("closure is monotone, idempotent and extensive") {
    FieldSpec F5 = FieldSpec::prime(5);
    TorusRingModel m(4, F5);
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 40; ++it) {
        FpSubspace s = random_subspace(m, rng, 3);
        FpSubspace s2 = random_subspace(m, rng, 2);
        TruncatedIdeal cs = closure(m, s);
        CHECK(subspace_leq(F5, s, cs.span));                          // extensive
        CHECK(closure(m, cs.span).span == cs.span);                   // idempotent
        TruncatedIdeal cu = closure(m, subspace_sum(F5, s, s2));
        CHECK(subspace_leq(F5, cs.span, cu.span));                    // monotone
    }
}

TEST_CASE("coideal propagation through closure") {
    FieldSpec F5 = FieldSpec::prime(5);
    TorusRingModel m(4, F5);
    const std::size_t n = m.dim();
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> coin(0, 1);
    auto random_coord_span = [&]() {
        std::vector<FpVec> rows;
        for (std::size_t i = 0; i < n; ++i)
            if (coin(rng)) {
                FpVec v(n, 0);
                v[i] = 1;
                rows.push_back(std::move(v));
            }
        return rows.empty() ? FpSubspace::zero(n) : FpSubspace::span_rows(F5, rows);
    };
    int nontrivial = 0;
    for (int it = 0; it < 60; ++it) {
        FpSubspace b = random_coord_span();
        FpSubspace c = random_coord_span();
        // A := the largest subspace with Delta(A) inside B (x) R + R (x) C
        RrefAccumulator w = two_sided_span(m, b, c);
        FpMatrix residuals(n, n * n);
        for (std::size_t i = 0; i < n; ++i) {
            FpVec unit(n, 0);
            unit[i] = 1;
            FpVec dv = delta_vec(m, unit);
            w.reduce(dv);
            std::copy(dv.begin(), dv.end(), residuals.row(i).begin());
        }
        FpSubspace a = kernel(F5, transpose(residuals));
        if (a.dim() == 0 || a.dim() == n) continue;
        ++nontrivial;
        FpSubspace ca = closure(m, a).span;
        RrefAccumulator target = two_sided_span(m, closure(m, b).span, closure(m, c).span);
        for (std::size_t r = 0; r < ca.dim(); ++r) {
            FpVec dv = delta_vec(m, ca.basis.row(r));
            CHECK(target.reduce(dv));
        }
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("weight representation") {
    FieldSpec F7 = FieldSpec::prime(7);
    TorusRingModel m(5, F7);
    Representation v35 = weight_rep(m, {3, 5});
    CHECK(v35.ell == 5);
    CHECK(comodule_axiom_holds(v35, 0));
    CHECK(comodule_axiom_holds(v35, 1));
    // sigma_t evaluation reproduces (t^3 x, t^5 y)
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> u(1, 6);
    for (int it = 0; it < 20; ++it) {
        std::uint64_t t = u(rng), x = u(rng), y = u(rng);
        FpVec w{x, y};
        FpVec img = mu_eval(v35, m.sigma(t), w);
        CHECK(img[0] == F7.mul(F7.pow(t, 3), x));
        CHECK(img[1] == F7.mul(F7.pow(t, 5), y));
    }
    CHECK(weight_rep(m, {0}).ell == 0);
    CHECK_THROWS(weight_rep(m, {6}));
}
