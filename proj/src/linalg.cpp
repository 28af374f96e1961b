#include "acgi/linalg.hpp"

#include <algorithm>
#include <map>

namespace acgi {

using u64 = std::uint64_t;

FpMatrix FpMatrix::identity(std::size_t n) {
    FpMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<FpVec>& rows_in) {
    if (rows_in.empty()) return FpMatrix(0, 0);
    FpMatrix m(rows_in.size(), rows_in[0].size());
    for (std::size_t r = 0; r < rows_in.size(); ++r) {
        if (rows_in[r].size() != m.cols) throw std::invalid_argument("from_rows: ragged rows");
        std::copy(rows_in[r].begin(), rows_in[r].end(), m.a.begin() + r * m.cols);
    }
    return m;
}

FpMatrix transpose(const FpMatrix& m) {
    FpMatrix t(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

FpMatrix mat_mul(const FieldSpec& F, const FpMatrix& a, const FpMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    FpMatrix out(a.rows, b.cols);
    op_counter() += 2 * a.rows * a.cols * b.cols;
    if (F.is_prime_field()) {
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t l = 0; l < a.cols; ++l) {
                u64 v = a.at(i, l);
                if (!v) continue;
                const u64* brow = b.a.data() + l * b.cols;
                u64* orow = out.a.data() + i * b.cols;
                for (std::size_t j = 0; j < b.cols; ++j)
                    orow[j] = (orow[j] + (unsigned __int128)v * brow[j]) % F.p;
            }
    } else {
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t l = 0; l < a.cols; ++l) {
                u64 v = a.at(i, l);
                if (!v) continue;
                for (std::size_t j = 0; j < b.cols; ++j)
                    out.at(i, j) = F.add(out.at(i, j), F.mul(v, b.at(l, j)));
            }
    }
    return out;
}

FpVec mat_vec(const FieldSpec& F, const FpMatrix& m, std::span<const u64> x) {
    if (m.cols != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    FpVec out(m.rows, 0);
    op_counter() += 2 * m.rows * m.cols;
    for (std::size_t r = 0; r < m.rows; ++r) {
        u64 acc = 0;
        const u64* row = m.a.data() + r * m.cols;
        if (F.is_prime_field()) {
            unsigned __int128 s = 0;
            for (std::size_t c = 0; c < m.cols; ++c) s += (unsigned __int128)row[c] * x[c];
            acc = static_cast<u64>(s % F.p);
        } else {
            for (std::size_t c = 0; c < m.cols; ++c) acc = F.add(acc, F.mul(row[c], x[c]));
        }
        out[r] = acc;
    }
    return out;
}

FpVec vec_mat(const FieldSpec& F, std::span<const u64> x, const FpMatrix& m) {
    if (m.rows != x.size()) throw std::invalid_argument("vec_mat: shape mismatch");
    FpVec out(m.cols, 0);
    op_counter() += 2 * m.rows * m.cols;
    for (std::size_t r = 0; r < m.rows; ++r) {
        u64 v = x[r];
        if (!v) continue;
        const u64* row = m.a.data() + r * m.cols;
        for (std::size_t c = 0; c < m.cols; ++c) out[c] = F.add(out[c], F.mul(v, row[c]));
    }
    return out;
}

std::pair<FpMatrix, std::size_t> rref_dense(const FieldSpec& F, FpMatrix m) {
    std::size_t rank = 0;
    op_counter() += m.rows * m.cols;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        u64 inv = F.inv(m.at(rank, col));
        if (inv != 1)
            for (std::size_t c = col; c < m.cols; ++c) m.at(rank, c) = F.mul(m.at(rank, c), inv);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            u64 f = m.at(r, col);
            if (!f) continue;
            op_counter() += 2 * (m.cols - col);
            if (F.is_prime_field()) {
                const u64 p = F.p;
                u64* dst = m.a.data() + r * m.cols;
                const u64* src = m.a.data() + rank * m.cols;
                u64 fc = p - f;
                for (std::size_t c = col; c < m.cols; ++c)
                    dst[c] = (dst[c] + (unsigned __int128)fc * src[c]) % p;
            } else {
                for (std::size_t c = col; c < m.cols; ++c)
                    m.at(r, c) = F.sub(m.at(r, c), F.mul(f, m.at(rank, c)));
            }
        }
        ++rank;
    }
    return {std::move(m), rank};
}

std::pair<FpMatrix, std::size_t> rref_sparse(const FieldSpec& F, const FpMatrix& m) {
    // rows as sorted (col, val) lists; same elimination order as the dense path
    using SRow = std::vector<std::pair<std::size_t, u64>>;
    std::vector<SRow> rows(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            if (m.at(r, c)) rows[r].push_back({c, m.at(r, c)});

    auto axpy = [&](SRow& dst, u64 f, const SRow& src) {
        // dst -= f * src
        SRow out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        op_counter() += 2 * src.size();
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                out.push_back({src[j].first, F.neg(F.mul(f, src[j].second))});
                ++j;
            } else {
                u64 v = F.sub(dst[i].second, F.mul(f, src[j].second));
                if (v) out.push_back({dst[i].first, v});
                ++i;
                ++j;
            }
        }
        dst = std::move(out);
    };

    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && (rows[piv].empty() || rows[piv].front().first != col)) ++piv;
        if (piv == m.rows) continue;
        std::swap(rows[piv], rows[rank]);
        u64 inv = F.inv(rows[rank].front().second);
        if (inv != 1)
            for (auto& [c, v] : rows[rank]) v = F.mul(v, inv);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || rows[r].empty()) continue;
            auto it = std::lower_bound(rows[r].begin(), rows[r].end(), col,
                                       [](const auto& e, std::size_t c) { return e.first < c; });
            if (it == rows[r].end() || it->first != col) continue;
            axpy(rows[r], it->second, rows[rank]);
        }
        ++rank;
    }
    FpMatrix out(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto& [c, v] : rows[r]) out.at(r, c) = v;
    return {std::move(out), rank};
}

std::pair<FpMatrix, std::size_t> rref(const FieldSpec& F, const FpMatrix& m) {
    std::size_t cells = m.rows * m.cols;
    if (cells > 1 << 14) {
        std::size_t nnz = 0;
        for (u64 v : m.a) nnz += (v != 0);
        if (nnz * 20 < cells) return rref_sparse(F, m);
    }
    return rref_dense(F, m);
}

FpSubspace FpSubspace::zero(std::size_t ambient) {
    FpSubspace s;
    s.ambient = ambient;
    s.basis = FpMatrix(0, ambient);
    return s;
}

FpSubspace FpSubspace::full(std::size_t ambient) {
    FpSubspace s;
    s.ambient = ambient;
    s.basis = FpMatrix::identity(ambient);
    return s;
}

FpSubspace FpSubspace::span(const FieldSpec& F, const FpMatrix& rows) {
    auto [r, rank] = rref(F, rows);
    FpSubspace s;
    s.ambient = rows.cols;
    s.basis = FpMatrix(rank, rows.cols);
    std::copy(r.a.begin(), r.a.begin() + rank * rows.cols, s.basis.a.begin());
    return s;
}

FpSubspace FpSubspace::span_rows(const FieldSpec& F, const std::vector<FpVec>& rows) {
    return span(F, FpMatrix::from_rows(rows));
}

FpSubspace kernel(const FieldSpec& F, const FpMatrix& m) {
    auto [r, rank] = rref(F, m);
    std::vector<std::size_t> pivot_cols;
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t i = 0; i < rank; ++i) {
        std::size_t c = 0;
        while (c < m.cols && r.at(i, c) == 0) ++c;
        pivot_cols.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<FpVec> rows;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        FpVec v(m.cols, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[pivot_cols[i]] = F.neg(r.at(i, c));
        rows.push_back(std::move(v));
    }
    if (rows.empty()) return FpSubspace::zero(m.cols);
    return FpSubspace::span_rows(F, rows);
}

FpSubspace subspace_sum(const FieldSpec& F, const FpSubspace& a, const FpSubspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_sum: ambient mismatch");
    FpMatrix stacked(a.dim() + b.dim(), a.ambient);
    std::copy(a.basis.a.begin(), a.basis.a.end(), stacked.a.begin());
    std::copy(b.basis.a.begin(), b.basis.a.end(), stacked.a.begin() + a.basis.a.size());
    return FpSubspace::span(F, stacked);
}

FpSubspace subspace_intersect(const FieldSpec& F, const FpSubspace& a, const FpSubspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_intersect: ambient mismatch");
    if (a.dim() == 0 || b.dim() == 0) return FpSubspace::zero(a.ambient);
    // x = u^T A = v^T B: (u, v) in the left kernel of [A; -B]
    FpMatrix stacked(a.dim() + b.dim(), a.ambient);
    std::copy(a.basis.a.begin(), a.basis.a.end(), stacked.a.begin());
    for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t c = 0; c < a.ambient; ++c)
            stacked.at(a.dim() + r, c) = F.neg(b.basis.at(r, c));
    FpSubspace left = kernel(F, transpose(stacked));
    std::vector<FpVec> rows;
    for (std::size_t i = 0; i < left.dim(); ++i) {
        FpVec u(left.basis.row(i).begin(), left.basis.row(i).begin() + a.dim());
        rows.push_back(vec_mat(F, u, a.basis));
    }
    if (rows.empty()) return FpSubspace::zero(a.ambient);
    return FpSubspace::span_rows(F, rows);
}

FpSubspace annihilator(const FieldSpec& F, const FpSubspace& a) { return kernel(F, a.basis); }

bool subspace_contains(const FieldSpec& F, const FpSubspace& a, std::span<const u64> v) {
    if (v.size() != a.ambient) throw std::invalid_argument("subspace_contains: ambient mismatch");
    FpVec w(v.begin(), v.end());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        std::size_t c = 0;
        while (c < a.ambient && a.basis.at(i, c) == 0) ++c;
        if (c == a.ambient || w[c] == 0) continue;
        u64 f = w[c];
        op_counter() += 2 * (a.ambient - c);
        for (std::size_t j = c; j < a.ambient; ++j) w[j] = F.sub(w[j], F.mul(f, a.basis.at(i, j)));
    }
    return std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; });
}

bool subspace_leq(const FieldSpec& F, const FpSubspace& a, const FpSubspace& b) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!subspace_contains(F, b, a.basis.row(i))) return false;
    return true;
}

std::optional<FpVec> solve(const FieldSpec& F, const FpMatrix& m, std::span<const u64> rhs) {
    if (rhs.size() != m.rows) throw std::invalid_argument("solve: shape mismatch");
    FpMatrix aug(m.rows, m.cols + 1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        std::copy(m.row(r).begin(), m.row(r).end(), aug.row(r).begin());
        aug.at(r, m.cols) = rhs[r];
    }
    auto [r, rank] = rref(F, aug);
    FpVec x(m.cols, 0);
    for (std::size_t i = 0; i < rank; ++i) {
        std::size_t c = 0;
        while (c <= m.cols && r.at(i, c) == 0) ++c;
        if (c == m.cols) return std::nullopt;  // 0 = 1 row
        x[c] = r.at(i, m.cols);
    }
    return x;
}

RrefAccumulator::RrefAccumulator(const FieldSpec& F, std::size_t width) : F_(&F), width_(width) {}

bool RrefAccumulator::reduce(std::span<u64> v) const {
    const FieldSpec& F = *F_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = v[pivots_[i]];
        if (!f) continue;
        const FpVec& row = rows_[i];
        op_counter() += 2 * (width_ - pivots_[i]);
        if (F.is_prime_field()) {
            const u64 p = F.p;
            u64 fc = p - f;
            for (std::size_t c = pivots_[i]; c < width_; ++c)
                v[c] = (v[c] + (unsigned __int128)fc * row[c]) % p;
        } else {
            for (std::size_t c = pivots_[i]; c < width_; ++c) v[c] = F.sub(v[c], F.mul(f, row[c]));
        }
    }
    return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

bool RrefAccumulator::insert(std::span<const u64> v) {
    if (v.size() != width_) throw std::invalid_argument("RrefAccumulator::insert: width mismatch");
    FpVec w(v.begin(), v.end());
    if (reduce(w)) return false;
    std::size_t piv = 0;
    while (w[piv] == 0) ++piv;
    u64 inv = F_->inv(w[piv]);
    if (inv != 1)
        for (std::size_t c = piv; c < width_; ++c) w[c] = F_->mul(w[c], inv);
    // clear this pivot column in the existing rows
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = rows_[i][piv];
        if (!f) continue;
        op_counter() += 2 * (width_ - piv);
        for (std::size_t c = piv; c < width_; ++c) rows_[i][c] = F_->sub(rows_[i][c], F_->mul(f, w[c]));
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
}

bool RrefAccumulator::insert_subspace(const FpSubspace& s) {
    bool grew = false;
    for (std::size_t i = 0; i < s.dim(); ++i) grew |= insert(s.basis.row(i));
    return grew;
}

FpSubspace RrefAccumulator::to_subspace() const {
    FpSubspace s;
    s.ambient = width_;
    s.basis = FpMatrix(rows_.size(), width_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        std::copy(rows_[i].begin(), rows_[i].end(), s.basis.row(i).begin());
    return s;
}

SolveBasis::SolveBasis(const FieldSpec& F, std::size_t width) : F_(&F), width_(width) {}

SolveBasis::InsertResult SolveBasis::insert(std::span<const u64> v) {
    const FieldSpec& F = *F_;
    FpVec w(v.begin(), v.end());
    // invariant: w = v + sum_j expr_w[j] * inserted_j
    FpVec expr_w(n_inserted_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = w[pivots_[i]];
        if (!f) continue;
        op_counter() += 2 * (width_ + exprs_[i].size());
        for (std::size_t c = pivots_[i]; c < width_; ++c) w[c] = F.sub(w[c], F.mul(f, rows_[i][c]));
        for (std::size_t j = 0; j < exprs_[i].size(); ++j)
            expr_w[j] = F.sub(expr_w[j], F.mul(f, exprs_[i][j]));
    }
    if (std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; })) {
        for (auto& e : expr_w) e = F.neg(e);
        return {false, 0, std::move(expr_w)};
    }
    std::size_t piv = 0;
    while (w[piv] == 0) ++piv;
    u64 inv = F.inv(w[piv]);
    // normalized row = inv*v + sum_j inv*expr_w[j] * inserted_j, and v becomes inserted_n
    FpVec full_expr(n_inserted_ + 1, 0);
    for (std::size_t j = 0; j < n_inserted_; ++j) full_expr[j] = F.mul(expr_w[j], inv);
    full_expr[n_inserted_] = inv;
    if (inv != 1)
        for (std::size_t c = piv; c < width_; ++c) w[c] = F.mul(w[c], inv);
    // keep full RREF: clear the new pivot column from every existing row
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = rows_[i][piv];
        if (!f) continue;
        op_counter() += 2 * (width_ + full_expr.size());
        for (std::size_t c = piv; c < width_; ++c) rows_[i][c] = F.sub(rows_[i][c], F.mul(f, w[c]));
        exprs_[i].resize(n_inserted_ + 1, 0);
        for (std::size_t j = 0; j <= n_inserted_; ++j)
            exprs_[i][j] = F.sub(exprs_[i][j], F.mul(f, full_expr[j]));
    }
    std::size_t idx = n_inserted_++;
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(w));
    exprs_.insert(exprs_.begin() + pos, std::move(full_expr));
    return {true, idx, {}};
}

std::optional<FpVec> SolveBasis::express(std::span<const u64> v) const {
    const FieldSpec& F = *F_;
    FpVec w(v.begin(), v.end());
    FpVec coords(n_inserted_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u64 f = w[pivots_[i]];
        if (!f) continue;
        op_counter() += 2 * (width_ + exprs_[i].size());
        for (std::size_t c = pivots_[i]; c < width_; ++c) w[c] = F.sub(w[c], F.mul(f, rows_[i][c]));
        for (std::size_t j = 0; j < exprs_[i].size(); ++j)
            coords[j] = F.add(coords[j], F.mul(f, exprs_[i][j]));
    }
    if (!std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; })) return std::nullopt;
    return coords;
}

}  // namespace acgi
