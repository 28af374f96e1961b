#pragma once

#include <optional>

#include "acgi/linalg.hpp"

namespace acgi {

// An element of Aff(V): empty, or point + direction subspace. Nonempty values
// are canonical (point reduced modulo the directions), so equality is
// field-by-field. dim() is nullopt for the empty space.
struct AffineSubspace {
    bool is_empty = true;
    FpVec point;
    FpSubspace dirs;

    static AffineSubspace empty(std::size_t ambient);
    static AffineSubspace singleton(const FieldSpec& F, FpVec v);
    static AffineSubspace linear(FpSubspace dirs);
    static AffineSubspace make(const FieldSpec& F, FpVec point, FpSubspace dirs);

    std::size_t ambient() const { return dirs.ambient; }
    std::optional<int> dim() const;
    bool contains(const FieldSpec& F, std::span<const std::uint64_t> v) const;
    bool contains_zero() const;
    bool operator==(const AffineSubspace&) const = default;
};

// Reduce a point modulo an RREF direction basis to its canonical representative.
FpVec reduce_mod_subspace(const FieldSpec& F, const FpSubspace& s, FpVec v);

AffineSubspace affine_intersect(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b);
// Affine hull of the union.
AffineSubspace affine_join(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b);
// Minkowski sum {a + b}.
AffineSubspace affine_sum(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b);
// X^+ = {f : f(x) = 1 for all x in X}.
AffineSubspace affine_plus_dual(const FieldSpec& F, const AffineSubspace& x);

}  // namespace acgi
