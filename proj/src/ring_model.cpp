#include "acgi/ring_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace acgi {

void SparseVec::add_term(const FieldSpec& F, std::uint32_t i, std::uint64_t c) {
    if (!c) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), i,
                               [](const auto& t, std::uint32_t idx) { return t.first < idx; });
    if (it != terms.end() && it->first == i) {
        it->second = F.add(it->second, c);
        if (!it->second) terms.erase(it);
    } else {
        terms.insert(it, {i, c});
    }
}

FpVec SparseVec::to_dense(std::size_t n) const {
    FpVec v(n, 0);
    for (auto& [i, c] : terms) v[i] = c;
    return v;
}

SparseVec SparseVec::from_dense(std::span<const std::uint64_t> v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) s.terms.push_back({static_cast<std::uint32_t>(i), v[i]});
    return s;
}

void RingModel::set_degrees(std::vector<int> degrees) {
    degrees_ = std::move(degrees);
    dim_at_.assign(d_ + 1, 0);
    for (int e = 0; e <= d_; ++e) {
        std::size_t cnt = 0;
        while (cnt < degrees_.size() && degrees_[cnt] <= e) ++cnt;
        dim_at_[e] = cnt;
    }
    if (degrees_.empty() || degrees_[0] != 0)
        throw std::logic_error("RingModel: basis must start with the unit in degree 0");
    if (!std::is_sorted(degrees_.begin(), degrees_.end()))
        throw std::logic_error("RingModel: basis must be degree-sorted");
}

std::size_t RingModel::dim_at(int e) const {
    if (e < 0) return 0;
    if (e >= d_) return dim();
    return dim_at_[e];
}

FpVec RingModel::multiply(std::span<const std::uint64_t> v, std::size_t j) const {
    FpVec out(dim(), 0);
    const FieldSpec& F = F_;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        auto prod = product(i, j);
        if (!prod) throw std::domain_error("RingModel::multiply: undefined component product");
        for (auto& [idx, c] : prod->terms) out[idx] = F.add(out[idx], F.mul(v[i], c));
    }
    op_counter() += 2 * v.size();
    return out;
}

const std::vector<RingModel::ClosurePass>& RingModel::closure_passes() const {
    if (default_passes_.empty()) {
        default_passes_.resize(d_ + 1);
        for (int e = 0; e <= d_; ++e) {
            ClosurePass& pass = default_passes_[e];
            for (std::uint32_t i = 0; i < dim_at(e); ++i) pass.window.push_back(i);
            for (std::uint32_t j = 0; j < dim(); ++j)
                if (degree(j) <= d_ - e) pass.multipliers.push_back(j);
        }
    }
    return default_passes_;
}

FpVec RingModel::counit_vector() const {
    FpVec v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = counit(i);
    return v;
}

FpVec RingModel::antipode_apply(std::span<const std::uint64_t> v) const {
    FpVec out(dim(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        SparseVec a = antipode(i);
        for (auto& [idx, c] : a.terms) out[idx] = F_.add(out[idx], F_.mul(v[i], c));
    }
    return out;
}

FpSubspace stratum(const FieldSpec& F, const FpSubspace& s, std::span<const std::uint32_t> window) {
    if (window.size() >= s.ambient) return s;
    std::size_t r = s.dim();
    if (r == 0) return FpSubspace::zero(s.ambient);
    // combinations of the RREF rows with zero coordinates outside the window
    std::vector<bool> inside(s.ambient, false);
    for (auto c : window) inside[c] = true;
    FpMatrix tail(s.ambient - window.size(), r);
    std::size_t t = 0;
    for (std::size_t c = 0; c < s.ambient; ++c) {
        if (inside[c]) continue;
        for (std::size_t i = 0; i < r; ++i) tail.at(t, i) = s.basis.at(i, c);
        ++t;
    }
    FpSubspace combos = kernel(F, tail);
    if (combos.dim() == 0) return FpSubspace::zero(s.ambient);
    std::vector<FpVec> rows;
    rows.reserve(combos.dim());
    for (std::size_t i = 0; i < combos.dim(); ++i)
        rows.push_back(vec_mat(F, combos.basis.row(i), s.basis));
    return FpSubspace::span_rows(F, rows);
}

FpSubspace one_step_closure(const RingModel& model, const FpSubspace& s) {
    const FieldSpec& F = model.field();
    const std::size_t n = model.dim();
    if (s.ambient != n) throw std::invalid_argument("one_step_closure: S must live in R_d coordinates");
    RrefAccumulator acc(F, n);
    acc.insert_subspace(s);
    for (const auto& pass : model.closure_passes()) {
        if (acc.rank() == n) break;
        FpSubspace se = stratum(F, s, pass.window);
        for (std::size_t r = 0; r < se.dim() && acc.rank() < n; ++r) {
            auto v = se.basis.row(r);
            for (std::uint32_t j : pass.multipliers) {
                acc.insert(model.multiply(v, j));
                if (acc.rank() == n) break;
            }
        }
    }
    return acc.to_subspace();
}

TruncatedIdeal closure(const RingModel& model, const FpSubspace& s) {
    TruncatedIdeal ideal;
    ideal.d = model.degree_bound();
    FpSubspace cur;
    if (s.basis.cols == model.dim()) {
        cur = FpSubspace::span(model.field(), s.basis);
    } else if (s.basis.cols < model.dim()) {
        // vectors given in a coordinate prefix of R_d
        FpMatrix wide(s.basis.rows, model.dim());
        for (std::size_t r = 0; r < s.basis.rows; ++r)
            std::copy(s.basis.row(r).begin(), s.basis.row(r).end(), wide.row(r).begin());
        cur = FpSubspace::span(model.field(), wide);
    } else {
        throw std::invalid_argument("closure: S is wider than R_d");
    }
    for (std::size_t round = 0; round <= model.dim() + 1; ++round) {
        FpSubspace next = one_step_closure(model, cur);
        ++ideal.iterations;
        if (next.dim() == cur.dim()) {
            ideal.span = std::move(next);
            return ideal;
        }
        cur = std::move(next);
    }
    throw std::logic_error("closure: did not stabilize");  // unreachable, dim is monotone
}

FpVec coproduct_expand(const RingModel& model, std::span<const std::uint64_t> v) {
    const FieldSpec& F = model.field();
    const std::size_t n = model.dim();
    FpVec out(n * n, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        for (const CoPair& pr : model.coproduct(i)) {
            std::uint64_t c0 = F.mul(v[i], pr.coeff);
            for (auto& [l, cl] : pr.left->terms) {
                std::uint64_t c1 = F.mul(c0, cl);
                for (auto& [r, cr] : pr.right->terms) {
                    std::size_t idx = static_cast<std::size_t>(l) * n + r;
                    out[idx] = F.add(out[idx], F.mul(c1, cr));
                }
            }
        }
    }
    return out;
}

std::vector<FpVec> coproduct_matrix(const RingModel& model) {
    std::vector<FpVec> out(model.dim());
    for (std::size_t i = 0; i < model.dim(); ++i) {
        FpVec unit(model.dim(), 0);
        unit[i] = 1;
        out[i] = coproduct_expand(model, unit);
    }
    return out;
}

FpVec convolve(const RingModel& model, const FieldSpec& F, std::span<const std::uint64_t> psi,
               std::span<const std::uint64_t> phi) {
    const std::size_t n = model.dim();
    FpVec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t acc = 0;
        for (const CoPair& pr : model.coproduct(i)) {
            std::uint64_t lv = 0, rv = 0;
            for (auto& [l, cl] : pr.left->terms) lv = F.add(lv, F.mul(cl, psi[l]));
            for (auto& [r, cr] : pr.right->terms) rv = F.add(rv, F.mul(cr, phi[r]));
            acc = F.add(acc, F.mul(pr.coeff, F.mul(lv, rv)));
        }
        out[i] = acc;
        op_counter() += 4 * model.coproduct(i).size();
    }
    return out;
}

}  // namespace acgi
