#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "acgi/fields.hpp"

namespace acgi {

using FpVec = std::vector<std::uint64_t>;

struct FpMatrix {
    std::size_t rows = 0, cols = 0;
    FpVec a;  // row-major, entries in [0, q)

    FpMatrix() = default;
    FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    std::uint64_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    std::span<const std::uint64_t> row(std::size_t r) const { return {a.data() + r * cols, cols}; }
    std::span<std::uint64_t> row(std::size_t r) { return {a.data() + r * cols, cols}; }

    static FpMatrix identity(std::size_t n);
    static FpMatrix from_rows(const std::vector<FpVec>& rows_in);
    bool operator==(const FpMatrix&) const = default;
};

FpMatrix transpose(const FpMatrix& m);
FpMatrix mat_mul(const FieldSpec& F, const FpMatrix& a, const FpMatrix& b);
FpVec mat_vec(const FieldSpec& F, const FpMatrix& m, std::span<const std::uint64_t> x);
FpVec vec_mat(const FieldSpec& F, std::span<const std::uint64_t> x, const FpMatrix& m);

// Reduced row echelon form and rank. Dispatches to a sparse elimination when
// the matrix is large and its density is below 5%; both paths produce the
// same (unique) RREF. Zero rows are kept, pivots strictly increase.
std::pair<FpMatrix, std::size_t> rref(const FieldSpec& F, const FpMatrix& m);
std::pair<FpMatrix, std::size_t> rref_dense(const FieldSpec& F, FpMatrix m);
std::pair<FpMatrix, std::size_t> rref_sparse(const FieldSpec& F, const FpMatrix& m);

// Row space of a matrix in canonical form: RREF basis with zero rows dropped.
struct FpSubspace {
    std::size_t ambient = 0;
    FpMatrix basis;  // RREF, basis.rows == dim

    static FpSubspace zero(std::size_t ambient);
    static FpSubspace full(std::size_t ambient);
    static FpSubspace span(const FieldSpec& F, const FpMatrix& rows);
    static FpSubspace span_rows(const FieldSpec& F, const std::vector<FpVec>& rows);

    std::size_t dim() const { return basis.rows; }
    bool operator==(const FpSubspace&) const = default;
};

FpSubspace kernel(const FieldSpec& F, const FpMatrix& m);  // {x : m x = 0}
FpSubspace subspace_sum(const FieldSpec& F, const FpSubspace& a, const FpSubspace& b);
FpSubspace subspace_intersect(const FieldSpec& F, const FpSubspace& a, const FpSubspace& b);
FpSubspace annihilator(const FieldSpec& F, const FpSubspace& a);
bool subspace_contains(const FieldSpec& F, const FpSubspace& a, std::span<const std::uint64_t> v);
bool subspace_leq(const FieldSpec& F, const FpSubspace& a, const FpSubspace& b);  // a <= b

// One solution of m x = rhs, free variables set to zero; nullopt when
// rhs is outside the column space.
std::optional<FpVec> solve(const FieldSpec& F, const FpMatrix& m, std::span<const std::uint64_t> rhs);

// Incremental RREF basis. insert() reduces the vector against the rows held
// so far and, if a nonzero remainder survives, normalizes it and updates the
// older rows, so the row set stays in RREF throughout.
class RrefAccumulator {
public:
    RrefAccumulator(const FieldSpec& F, std::size_t width);

    bool insert(std::span<const std::uint64_t> v);  // true if the rank grew
    bool insert_subspace(const FpSubspace& s);
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    FpSubspace to_subspace() const;
    // Reduces v in place against the current rows; returns true if it hit zero.
    bool reduce(std::span<std::uint64_t> v) const;

private:
    const FieldSpec* F_;
    std::size_t width_;
    std::vector<FpVec> rows_;         // sorted by pivot column
    std::vector<std::size_t> pivots_;
};

// RREF basis that remembers how each reduced vector decomposes over the
// inserted independent vectors. insert() returns either the new basis index
// or the coordinates of the vector over the previously inserted ones.
class SolveBasis {
public:
    SolveBasis(const FieldSpec& F, std::size_t width);

    struct InsertResult {
        bool independent;
        std::size_t index;  // set when independent
        FpVec coords;       // set when dependent: v = sum coords[i] * inserted_i
    };
    InsertResult insert(std::span<const std::uint64_t> v);
    std::optional<FpVec> express(std::span<const std::uint64_t> v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    const FieldSpec* F_;
    std::size_t width_;
    std::size_t n_inserted_ = 0;
    std::vector<FpVec> rows_;    // echelon rows, each paired with its expression
    std::vector<FpVec> exprs_;   // rows_[i] = sum exprs_[i][j] * inserted_j
    std::vector<std::size_t> pivots_;
};

}  // namespace acgi
