#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "acgi/modiso.hpp"

using namespace acgi;

namespace {

FpMatrix random_invertible(const FieldSpec& F, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> u(0, F.p - 1);
    while (true) {
        FpMatrix g(n, n);
        for (auto& x : g.a) x = u(rng);
        if (matrix_rank(F, g) == n) return g;
    }
}

MatrixTupleModule conjugate(const FieldSpec& F, const MatrixTupleModule& m, const FpMatrix& g) {
    auto ginv = matrix_inverse(F, g);
    std::vector<FpMatrix> mats;
    for (const auto& a : m.mats) mats.push_back(mat_mul(F, g, mat_mul(F, a, *ginv)));
    return MatrixTupleModule::make(m.n, std::move(mats));
}

bool check_cert(const FieldSpec& F, const ModIsoVerdict& v, const MatrixTupleModule& m,
                const MatrixTupleModule& n) {
    if (!v.isomorphic()) return false;
    FieldSpec Fc = v.ext_degree == 1 ? F : FieldSpec::extension(F.p, v.ext_degree);
    if (matrix_rank(Fc, v.cert) != m.n) return false;
    for (std::size_t i = 0; i < m.mats.size(); ++i)
        if (mat_mul(Fc, v.cert, m.mats[i]) != mat_mul(Fc, n.mats[i], v.cert)) return false;
    return true;
}

}  // namespace

TEST_CASE("intertwiner spaces") {
    FieldSpec F3 = FieldSpec::prime(3);
    // zero tuples: everything intertwines
    MatrixTupleModule z = MatrixTupleModule::make(2, {FpMatrix(2, 2)});
    CHECK(intertwiner_space(F3, z, z).dim() == 4);

    // A = J2, B = 0: {C : C J2 = 0} is the 2-dimensional space with zero first column
    FpMatrix j2(2, 2);
    j2.at(0, 1) = 1;
    MatrixTupleModule mj = MatrixTupleModule::make(2, {j2});
    FpSubspace tw = intertwiner_space(F3, mj, z);
    CHECK(tw.dim() == 2);
    CHECK(subspace_contains(F3, tw, FpVec{0, 1, 0, 0}));
    CHECK(subspace_contains(F3, tw, FpVec{0, 0, 0, 1}));

    // conjugated tuple contains the conjugating matrix
    FieldSpec F7 = FieldSpec::prime(7);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> u(0, 6);
    for (int it = 0; it < 10; ++it) {
        std::vector<FpMatrix> mats(2, FpMatrix(3, 3));
        for (auto& m : mats)
            for (auto& x : m.a) x = u(rng);
        MatrixTupleModule m = MatrixTupleModule::make(3, std::move(mats));
        FpMatrix g = random_invertible(F7, 3, rng);
        MatrixTupleModule n = conjugate(F7, m, g);
        CHECK(subspace_contains(F7, intertwiner_space(F7, m, n), g.a));
    }

    CHECK_THROWS(intertwiner_space(F3, z, MatrixTupleModule::make(3, {FpMatrix(3, 3)})));
}

TEST_CASE("conjugated tuples are certified isomorphic") {
    FieldSpec F7 = FieldSpec::prime(7);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::uint64_t> u(0, 6);
    for (std::size_t n : {2, 4, 8}) {
        std::vector<FpMatrix> mats(2, FpMatrix(n, n));
        for (auto& m : mats)
            for (auto& x : m.a) x = u(rng);
        MatrixTupleModule m = MatrixTupleModule::make(n, std::move(mats));
        MatrixTupleModule nn = conjugate(F7, m, random_invertible(F7, n, rng));
        ModIsoVerdict v = modules_isomorphic(F7, m, nn, {.seed = 7});
        CHECK(check_cert(F7, v, m, nn));
    }
}

TEST_CASE("nilpotent type is an obstruction: J2 vs J1+J1") {
    FieldSpec F3 = FieldSpec::prime(3);
    FpMatrix j2(2, 2);
    j2.at(0, 1) = 1;
    MatrixTupleModule m = MatrixTupleModule::make(2, {j2});
    MatrixTupleModule n = MatrixTupleModule::make(2, {FpMatrix(2, 2)});
    ModIsoVerdict v = modules_isomorphic(F3, m, n);
    CHECK(v.not_isomorphic());
}

TEST_CASE("identity module is isomorphic to itself") {
    FieldSpec F2 = FieldSpec::prime(2);
    FpMatrix a(3, 3);
    a.at(0, 1) = 1;
    a.at(1, 2) = 1;
    MatrixTupleModule m = MatrixTupleModule::make(3, {a});
    ModIsoVerdict v = modules_isomorphic(F2, m, m);
    CHECK(check_cert(F2, v, m, m));
}

TEST_CASE("verdicts agree with brute force over tiny fields") {
    for (std::uint64_t p : {2ull, 3ull}) {
        FieldSpec F = FieldSpec::prime(p);
        std::mt19937_64 rng(p);
        std::uniform_int_distribution<std::uint64_t> u(0, p - 1);
        for (int it = 0; it < 30; ++it) {
            std::size_t n = 2 + it % 2;  // n = 2 or 3
            std::vector<FpMatrix> am(2, FpMatrix(n, n)), bm(2, FpMatrix(n, n));
            for (auto& m : am)
                for (auto& x : m.a) x = u(rng);
            for (auto& m : bm)
                for (auto& x : m.a) x = u(rng);
            MatrixTupleModule m = MatrixTupleModule::make(n, am);
            MatrixTupleModule nn = MatrixTupleModule::make(n, bm);
            // brute force: enumerate all C over F_p, keep invertible intertwiners
            bool brute_iso = false;
            std::size_t cells = n * n;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < cells; ++i) total *= p;
            for (std::uint64_t code = 0; code < total && !brute_iso; ++code) {
                FpMatrix c(n, n);
                std::uint64_t t = code;
                for (auto& x : c.a) {
                    x = t % p;
                    t /= p;
                }
                if (matrix_rank(F, c) != n) continue;
                bool ok = true;
                for (std::size_t i = 0; i < 2 && ok; ++i)
                    ok = mat_mul(F, c, m.mats[i]) == mat_mul(F, nn.mats[i], c);
                brute_iso = ok;
            }
            ModIsoOptions opt;
            opt.seed = it;
            opt.exhaustive_budget = 1 << 20;
            ModIsoVerdict v = modules_isomorphic(F, m, nn, opt);
            ModIsoVerdict v2 = modules_isomorphic(F, nn, m, opt);
            CHECK(v.kind != ModIsoVerdict::Kind::Inconclusive);
            CHECK(v.isomorphic() == brute_iso);
            CHECK(v2.isomorphic() == brute_iso);  // symmetric
            if (v.isomorphic()) CHECK(check_cert(F, v, m, nn));
        }
    }
}
