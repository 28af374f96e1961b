#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acgi/linalg.hpp"

namespace acgi {

// A module over the free algebra on r generators: x_i acts as mats[i].
struct MatrixTupleModule {
    std::size_t n = 0;
    std::vector<FpMatrix> mats;

    static MatrixTupleModule make(std::size_t n, std::vector<FpMatrix> mats);
};

// All C with C A_i = B_i C, as a subspace of n x n matrices (row-major vectors).
FpSubspace intertwiner_space(const FieldSpec& F, const MatrixTupleModule& m,
                             const MatrixTupleModule& n);

struct ModIsoOptions {
    std::uint64_t seed = 0;
    unsigned trials = 64;
    std::size_t exhaustive_budget = 1 << 14;  // enumerate the intertwiner space when q^dim fits
};

struct ModIsoVerdict {
    enum class Kind { Isomorphic, NotIsomorphic, Inconclusive } kind;
    std::string reason;
    FpMatrix cert;            // invertible intertwiner when Isomorphic
    unsigned ext_degree = 1;  // field the certificate lives over
    unsigned trials_used = 0;

    bool isomorphic() const { return kind == Kind::Isomorphic; }
    bool not_isomorphic() const { return kind == Kind::NotIsomorphic; }
};

ModIsoVerdict modules_isomorphic(const FieldSpec& F, const MatrixTupleModule& m,
                                 const MatrixTupleModule& n, const ModIsoOptions& opt = {});

// rank of a square matrix over F, and exact inverse when it exists
std::size_t matrix_rank(const FieldSpec& F, const FpMatrix& m);
std::optional<FpMatrix> matrix_inverse(const FieldSpec& F, const FpMatrix& m);

}  // namespace acgi
