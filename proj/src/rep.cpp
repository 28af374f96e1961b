#include "acgi/rep.hpp"

#include <map>
#include <stdexcept>

namespace acgi {

Representation rep_trivial(const RingModel& model) {
    Representation r;
    r.model = &model;
    r.dim = 1;
    r.ell = 0;
    r.name = "k";
    r.mu = {{{0, SparseVec::unit(model.unit_index())}}};
    return r;
}

Representation rep_light(const RingModel* model, std::size_t dim, int ell, std::string name) {
    Representation r;
    r.model = model;
    r.dim = dim;
    r.ell = ell;
    r.name = std::move(name);
    return r;
}

Representation rep_direct_sum(const Representation& a, const Representation& b) {
    if (a.model != b.model) throw std::invalid_argument("rep_direct_sum: model mismatch");
    Representation r;
    r.model = a.model;
    r.dim = a.dim + b.dim;
    r.ell = std::max(a.ell, b.ell);
    r.name = "(" + a.name + "+" + b.name + ")";
    if (a.has_mu() && b.has_mu()) {
        r.mu.resize(r.dim);
        for (std::size_t v = 0; v < a.dim; ++v) r.mu[v] = a.mu[v];
        for (std::size_t v = 0; v < b.dim; ++v) {
            for (auto& [w, s] : b.mu[v]) r.mu[a.dim + v].push_back({static_cast<std::uint32_t>(a.dim + w), s});
        }
    }
    return r;
}

Representation rep_tensor(const Representation& a, const Representation& b) {
    if (a.model != b.model) throw std::invalid_argument("rep_tensor: model mismatch");
    const RingModel& M = *a.model;
    Representation r;
    r.model = a.model;
    r.dim = a.dim * b.dim;
    r.ell = a.ell + b.ell;
    r.name = "(" + a.name + "x" + b.name + ")";
    if (r.ell > M.degree_bound())
        throw std::invalid_argument("rep_tensor: ell exceeds the model degree bound");
    if (!(a.has_mu() && b.has_mu())) return r;
    const FieldSpec& F = M.field();
    r.mu.resize(r.dim);
    for (std::size_t v1 = 0; v1 < a.dim; ++v1)
        for (std::size_t v2 = 0; v2 < b.dim; ++v2) {
            std::map<std::uint32_t, FpVec> acc;  // target index -> dense R coords
            for (auto& [w1, s1] : a.mu[v1])
                for (auto& [w2, s2] : b.mu[v2]) {
                    std::uint32_t w = static_cast<std::uint32_t>(w1 * b.dim + w2);
                    FpVec& dst = acc.try_emplace(w, FpVec(M.dim(), 0)).first->second;
                    for (auto& [i, ci] : s1.terms)
                        for (auto& [j, cj] : s2.terms) {
                            auto prod = M.product(i, j);
                            if (!prod) throw std::logic_error("rep_tensor: undefined product within ell budget");
                            std::uint64_t c = F.mul(ci, cj);
                            for (auto& [idx, pc] : prod->terms) dst[idx] = F.add(dst[idx], F.mul(c, pc));
                        }
                }
            auto& out = r.mu[v1 * b.dim + v2];
            for (auto& [w, dense] : acc) {
                SparseVec s = SparseVec::from_dense(dense);
                if (!s.terms.empty()) out.push_back({w, std::move(s)});
            }
        }
    return r;
}

Representation rep_dual(const Representation& a) {
    const RingModel& M = *a.model;
    Representation r;
    r.model = a.model;
    r.dim = a.dim;
    r.ell = a.ell;
    r.name = a.name + "*";
    if (!a.has_mu()) return r;
    const FieldSpec& F = M.field();
    // mu*(e*_u) = sum_v e*_v (x) iota(r_{u,v})
    r.mu.assign(a.dim, {});
    std::vector<std::map<std::uint32_t, FpVec>> acc(a.dim);
    for (std::size_t v = 0; v < a.dim; ++v)
        for (auto& [u, s] : a.mu[v]) {
            FpVec& dst = acc[u].try_emplace(static_cast<std::uint32_t>(v), FpVec(M.dim(), 0)).first->second;
            for (auto& [i, c] : s.terms) {
                SparseVec anti = M.antipode(i);
                for (auto& [idx, ac] : anti.terms) dst[idx] = F.add(dst[idx], F.mul(c, ac));
            }
        }
    for (std::size_t u = 0; u < a.dim; ++u)
        for (auto& [v, dense] : acc[u]) {
            SparseVec s = SparseVec::from_dense(dense);
            if (!s.terms.empty()) r.mu[u].push_back({v, std::move(s)});
        }
    return r;
}

FpVec mu_pair_left(const Representation& rep, std::span<const std::uint64_t> f,
                   std::span<const std::uint64_t> w) {
    if (!rep.has_mu()) throw std::logic_error("mu_pair_left: light representation");
    const FieldSpec& F = rep.model->field();
    FpVec out(rep.model->dim(), 0);
    for (std::size_t v = 0; v < rep.dim; ++v) {
        if (!w[v]) continue;
        for (auto& [u, s] : rep.mu[v]) {
            if (!f[u]) continue;
            std::uint64_t c = F.mul(f[u], w[v]);
            for (auto& [idx, rc] : s.terms) out[idx] = F.add(out[idx], F.mul(c, rc));
        }
    }
    return out;
}

FpVec mu_act(const Representation& rep, std::span<const std::uint64_t> phi,
             std::span<const std::uint64_t> w) {
    if (!rep.has_mu()) throw std::logic_error("mu_act: light representation");
    const FieldSpec& F = rep.model->field();
    FpVec out(rep.dim, 0);
    for (std::size_t v = 0; v < rep.dim; ++v) {
        if (!w[v]) continue;
        for (auto& [u, s] : rep.mu[v]) {
            std::uint64_t val = 0;
            for (auto& [idx, rc] : s.terms) val = F.add(val, F.mul(rc, phi[idx]));
            out[u] = F.add(out[u], F.mul(w[v], val));
        }
    }
    return out;
}

FpVec mu_eval(const Representation& rep, std::span<const std::uint64_t> basis_values,
              std::span<const std::uint64_t> w) {
    return mu_act(rep, basis_values, w);
}

bool comodule_axiom_holds(const Representation& rep, std::size_t v) {
    const RingModel& M = *rep.model;
    const FieldSpec& F = M.field();
    // (id (x) counit) mu(e_v) = e_v
    FpVec eps = M.counit_vector();
    FpVec w(rep.dim, 0);
    w[v] = 1;
    FpVec back = mu_act(rep, eps, w);
    if (back != w) return false;
    // (mu (x) id) mu(e_v) = (id (x) Delta) mu(e_v) as elements of V (x) R (x) R
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint64_t> lhs, rhs;
    auto add_to = [&](auto& m, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint64_t val) {
        if (!val) return;
        auto key = std::make_tuple(a, b, c);
        auto [it, fresh] = m.try_emplace(key, 0);
        it->second = F.add(it->second, val);
        if (!it->second) m.erase(it);
    };
    for (auto& [u, s] : rep.mu[v]) {
        for (auto& [i, ci] : s.terms) {
            // lhs: mu(e_u) (x) b_i
            for (auto& [x, s2] : rep.mu[u])
                for (auto& [j, cj] : s2.terms) add_to(lhs, x, j, i, F.mul(ci, cj));
            // rhs: e_u (x) Delta(b_i)
            for (const CoPair& pr : M.coproduct(i))
                for (auto& [l, cl] : pr.left->terms)
                    for (auto& [r, cr] : pr.right->terms)
                        add_to(rhs, u, l, r, F.mul(ci, F.mul(pr.coeff, F.mul(cl, cr))));
        }
    }
    return lhs == rhs;
}

}  // namespace acgi
