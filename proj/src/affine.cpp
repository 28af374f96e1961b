#include "acgi/affine.hpp"

#include <algorithm>
#include <stdexcept>

namespace acgi {

FpVec reduce_mod_subspace(const FieldSpec& F, const FpSubspace& s, FpVec v) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t c = 0;
        while (c < s.ambient && s.basis.at(i, c) == 0) ++c;
        if (c == s.ambient || v[c] == 0) continue;
        std::uint64_t f = v[c];
        for (std::size_t j = c; j < s.ambient; ++j) v[j] = F.sub(v[j], F.mul(f, s.basis.at(i, j)));
    }
    return v;
}

AffineSubspace AffineSubspace::empty(std::size_t ambient) {
    AffineSubspace a;
    a.is_empty = true;
    a.point.assign(ambient, 0);
    a.dirs = FpSubspace::zero(ambient);
    return a;
}

AffineSubspace AffineSubspace::singleton(const FieldSpec& F, FpVec v) {
    return make(F, std::move(v), FpSubspace::zero(v.size()));
}

AffineSubspace AffineSubspace::linear(FpSubspace dirs) {
    AffineSubspace a;
    a.is_empty = false;
    a.point.assign(dirs.ambient, 0);
    a.dirs = std::move(dirs);
    return a;
}

AffineSubspace AffineSubspace::make(const FieldSpec& F, FpVec point, FpSubspace dirs) {
    if (point.size() != dirs.ambient) throw std::invalid_argument("AffineSubspace: ambient mismatch");
    AffineSubspace a;
    a.is_empty = false;
    a.point = reduce_mod_subspace(F, dirs, std::move(point));
    a.dirs = std::move(dirs);
    return a;
}

std::optional<int> AffineSubspace::dim() const {
    if (is_empty) return std::nullopt;
    return static_cast<int>(dirs.dim());
}

bool AffineSubspace::contains(const FieldSpec& F, std::span<const std::uint64_t> v) const {
    if (is_empty) return false;
    FpVec w(v.begin(), v.end());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = F.sub(w[i], point[i]);
    return subspace_contains(F, dirs, w);
}

bool AffineSubspace::contains_zero() const {
    if (is_empty) return false;
    return std::all_of(point.begin(), point.end(), [](std::uint64_t x) { return x == 0; });
}

AffineSubspace affine_intersect(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("affine_intersect: ambient mismatch");
    std::size_t n = a.ambient();
    if (a.is_empty || b.is_empty) return AffineSubspace::empty(n);
    // p_a + x for x in dirs(a), with p_a + x - p_b in dirs(b):
    // solve [A^T | B^T] (u; v)^T = p_b - p_a, directions = intersect
    FpMatrix m(n, a.dirs.dim() + b.dirs.dim());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < a.dirs.dim(); ++i) m.at(r, i) = a.dirs.basis.at(i, r);
        for (std::size_t i = 0; i < b.dirs.dim(); ++i)
            m.at(r, a.dirs.dim() + i) = F.neg(b.dirs.basis.at(i, r));
    }
    FpVec rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = F.sub(b.point[r], a.point[r]);
    auto sol = solve(F, m, rhs);
    if (!sol) return AffineSubspace::empty(n);
    FpVec u(sol->begin(), sol->begin() + a.dirs.dim());
    FpVec x = vec_mat(F, u, a.dirs.basis);
    FpVec pt(n);
    for (std::size_t r = 0; r < n; ++r) pt[r] = F.add(a.point[r], x[r]);
    return AffineSubspace::make(F, std::move(pt), subspace_intersect(F, a.dirs, b.dirs));
}

AffineSubspace affine_join(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("affine_join: ambient mismatch");
    if (a.is_empty) return b;
    if (b.is_empty) return a;
    std::size_t n = a.ambient();
    FpVec diff(n);
    for (std::size_t r = 0; r < n; ++r) diff[r] = F.sub(b.point[r], a.point[r]);
    FpSubspace dirs = subspace_sum(F, a.dirs, b.dirs);
    dirs = subspace_sum(F, dirs, FpSubspace::span_rows(F, {diff}));
    return AffineSubspace::make(F, a.point, std::move(dirs));
}

AffineSubspace affine_sum(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("affine_sum: ambient mismatch");
    if (a.is_empty || b.is_empty) return AffineSubspace::empty(a.ambient());
    FpVec pt(a.ambient());
    for (std::size_t r = 0; r < pt.size(); ++r) pt[r] = F.add(a.point[r], b.point[r]);
    return AffineSubspace::make(F, std::move(pt), subspace_sum(F, a.dirs, b.dirs));
}

AffineSubspace affine_plus_dual(const FieldSpec& F, const AffineSubspace& x) {
    std::size_t n = x.ambient();
    if (x.is_empty) return AffineSubspace::linear(FpSubspace::full(n));
    if (x.contains_zero()) return AffineSubspace::empty(n);
    // u with u(point) = 1, u(dirs) = 0; directions (k point + dirs)^perp
    FpMatrix m(1 + x.dirs.dim(), n);
    std::copy(x.point.begin(), x.point.end(), m.row(0).begin());
    for (std::size_t i = 0; i < x.dirs.dim(); ++i)
        std::copy(x.dirs.basis.row(i).begin(), x.dirs.basis.row(i).end(), m.row(1 + i).begin());
    FpVec rhs(1 + x.dirs.dim(), 0);
    rhs[0] = 1;
    auto u = solve(F, m, rhs);
    if (!u) throw std::logic_error("affine_plus_dual: inconsistent system");  // cannot happen, 0 not in X
    FpSubspace span_x = subspace_sum(F, x.dirs, FpSubspace::span_rows(F, {x.point}));
    return AffineSubspace::make(F, std::move(*u), annihilator(F, span_x));
}

}  // namespace acgi
