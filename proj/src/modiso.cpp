#include "acgi/modiso.hpp"

#include <cmath>
#include <random>

namespace acgi {

using u64 = std::uint64_t;

MatrixTupleModule MatrixTupleModule::make(std::size_t n, std::vector<FpMatrix> mats) {
    for (auto& m : mats)
        if (m.rows != n || m.cols != n) throw std::invalid_argument("MatrixTupleModule: matrices must be n x n");
    return MatrixTupleModule{n, std::move(mats)};
}

FpSubspace intertwiner_space(const FieldSpec& F, const MatrixTupleModule& m,
                             const MatrixTupleModule& n) {
    if (m.n != n.n || m.mats.size() != n.mats.size())
        throw std::invalid_argument("intertwiner_space: shape mismatch");
    const std::size_t nn = m.n;
    const std::size_t r = m.mats.size();
    // unknowns C_{ab}; equations (C A_i - B_i C)_{ab} = 0
    FpMatrix sys(r * nn * nn, nn * nn);
    for (std::size_t i = 0; i < r; ++i) {
        const FpMatrix& A = m.mats[i];
        const FpMatrix& B = n.mats[i];
        for (std::size_t a = 0; a < nn; ++a)
            for (std::size_t b = 0; b < nn; ++b) {
                std::size_t eq = (i * nn + a) * nn + b;
                // (C A)_{ab} = sum_c C_{ac} A_{cb}; (B C)_{ab} = sum_c B_{ac} C_{cb}
                for (std::size_t c = 0; c < nn; ++c) {
                    sys.at(eq, a * nn + c) = F.add(sys.at(eq, a * nn + c), A.at(c, b));
                    sys.at(eq, c * nn + b) = F.sub(sys.at(eq, c * nn + b), B.at(a, c));
                }
            }
    }
    return kernel(F, sys);
}

std::size_t matrix_rank(const FieldSpec& F, const FpMatrix& m) { return rref(F, m).second; }

std::optional<FpMatrix> matrix_inverse(const FieldSpec& F, const FpMatrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    std::size_t n = m.rows;
    FpMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(m.row(r).begin(), m.row(r).end(), aug.row(r).begin());
        aug.at(r, n + r) = 1;
    }
    auto [red, rank] = rref_dense(F, std::move(aug));
    if (rank < n) return std::nullopt;
    // full rank on the left block iff pivots are exactly the first n columns
    for (std::size_t r = 0; r < n; ++r)
        if (red.at(r, r) != 1) return std::nullopt;
    FpMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        std::copy(red.row(r).begin() + n, red.row(r).end(), inv.row(r).begin());
    return inv;
}

namespace {

FpMatrix unflatten(std::span<const u64> v, std::size_t n) {
    FpMatrix m(n, n);
    std::copy(v.begin(), v.end(), m.a.begin());
    return m;
}

bool is_intertwiner(const FieldSpec& F, const FpMatrix& C, const MatrixTupleModule& m,
                    const MatrixTupleModule& n) {
    for (std::size_t i = 0; i < m.mats.size(); ++i)
        if (mat_mul(F, C, m.mats[i]) != mat_mul(F, n.mats[i], C)) return false;
    return true;
}

}  // namespace

ModIsoVerdict modules_isomorphic(const FieldSpec& F, const MatrixTupleModule& m,
                                 const MatrixTupleModule& n, const ModIsoOptions& opt) {
    ModIsoVerdict out{ModIsoVerdict::Kind::Inconclusive, "", {}, 1, 0};
    const std::size_t nn = m.n;
    if (nn == 0) {
        out.kind = ModIsoVerdict::Kind::Isomorphic;
        out.cert = FpMatrix(0, 0);
        out.reason = "zero-dimensional modules";
        return out;
    }
    FpSubspace hom_mn = intertwiner_space(F, m, n);
    FpSubspace hom_nn = intertwiner_space(F, n, n);
    if (hom_mn.dim() != hom_nn.dim()) {
        out.kind = ModIsoVerdict::Kind::NotIsomorphic;
        out.reason = "dim Hom(M,N) = " + std::to_string(hom_mn.dim()) +
                     " != dim Hom(N,N) = " + std::to_string(hom_nn.dim());
        return out;
    }
    if (hom_mn.dim() == 0) {
        out.kind = ModIsoVerdict::Kind::NotIsomorphic;
        out.reason = "Hom(M,N) = 0";
        return out;
    }
    // joint column/row space obstruction: every intertwiner maps into the joint
    // column space and its row space sits inside the joint row space
    {
        RrefAccumulator cols(F, nn), rows(F, nn);
        for (std::size_t i = 0; i < hom_mn.dim(); ++i) {
            FpMatrix C = unflatten(hom_mn.basis.row(i), nn);
            for (std::size_t r = 0; r < nn; ++r) {
                rows.insert(C.row(r));
                FpVec col(nn);
                for (std::size_t r2 = 0; r2 < nn; ++r2) col[r2] = C.at(r2, r);
                cols.insert(col);
            }
        }
        if (cols.rank() < nn || rows.rank() < nn) {
            out.kind = ModIsoVerdict::Kind::NotIsomorphic;
            out.reason = "no intertwiner can be invertible (joint column/row space is proper)";
            return out;
        }
    }
    auto accept = [&](FpMatrix C, unsigned ext_deg) {
        out.kind = ModIsoVerdict::Kind::Isomorphic;
        out.cert = std::move(C);
        out.ext_degree = ext_deg;
        out.reason = "verified invertible intertwiner";
        return out;
    };
    // deterministic candidates: basis intertwiners (covers C = identity when M == N)
    for (std::size_t i = 0; i < hom_mn.dim(); ++i) {
        FpMatrix C = unflatten(hom_mn.basis.row(i), nn);
        if (matrix_rank(F, C) == nn) return accept(std::move(C), 1);
    }
    const std::size_t dim = hom_mn.dim();
    // exhaustive sweep when the space is small; conclusive either way
    double budget_log = static_cast<double>(dim) * std::log2(static_cast<double>(F.size()));
    if (budget_log <= std::log2(static_cast<double>(opt.exhaustive_budget))) {
        u64 total = 1;
        for (std::size_t i = 0; i < dim; ++i) total *= F.size();
        for (u64 code = 1; code < total; ++code) {
            u64 c = code;
            FpVec coeff(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                coeff[i] = c % F.size();
                c /= F.size();
            }
            FpVec flat = vec_mat(F, coeff, hom_mn.basis);
            FpMatrix C = unflatten(flat, nn);
            if (matrix_rank(F, C) == nn) return accept(std::move(C), 1);
        }
        out.kind = ModIsoVerdict::Kind::NotIsomorphic;
        out.reason = "no invertible intertwiner (exhaustive over " + F.describe() + ")";
        return out;
    }
    // randomized search, over an extension when the base field is small
    FieldSpec Fs = F;
    unsigned ext = 1;
    while (Fs.size() <= 2 * nn && Fs.k < 8) {
        ++ext;
        Fs = FieldSpec::extension(F.p, ext);
    }
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ull + 1);
    std::uniform_int_distribution<u64> unif(0, Fs.size() - 1);
    for (unsigned t = 0; t < opt.trials; ++t) {
        ++out.trials_used;
        FpVec coeff(dim);
        for (auto& c : coeff) c = unif(rng);
        FpVec flat = vec_mat(Fs, coeff, hom_mn.basis);
        FpMatrix C = unflatten(flat, nn);
        if (matrix_rank(Fs, C) == nn) {
            if (!is_intertwiner(Fs, C, m, n)) continue;  // cannot happen; cheap sanity
            return accept(std::move(C), ext);
        }
    }
    out.kind = ModIsoVerdict::Kind::Inconclusive;
    out.reason = "no invertible intertwiner found in " + std::to_string(opt.trials) +
                 " trials over " + Fs.describe();
    return out;
}

}  // namespace acgi
