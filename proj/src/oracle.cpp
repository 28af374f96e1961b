#include "acgi/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace acgi {

using u64 = std::uint64_t;

GroupTable::GroupTable(int n_in) : n(n_in) {
    if (n < 1 || n > 8) throw std::invalid_argument("GroupTable: n must be in [1, 8]");
    perms = all_permutations(n);
    if (n <= 6) {
        mult_table.resize(perms.size() * perms.size());
        for (std::size_t i = 0; i < perms.size(); ++i)
            for (std::size_t j = 0; j < perms.size(); ++j)
                mult_table[i * perms.size() + j] =
                    static_cast<std::uint32_t>(index_of(perm_compose(perms[i], perms[j])));
    }
}

std::size_t GroupTable::index_of(const Perm& g) const {
    // Lehmer rank in lexicographic order
    std::size_t rank = 0;
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int i = 0; i < n; ++i) {
        fact /= (n - i);
        int smaller = 0;
        for (int j = i + 1; j < n; ++j) smaller += (g[j] < g[i]);
        rank += smaller * fact;
    }
    return rank;
}

std::size_t GroupTable::mult(std::size_t i, std::size_t j) const {
    if (!mult_table.empty()) return mult_table[i * perms.size() + j];
    return index_of(perm_compose(perms[i], perms[j]));
}

std::size_t GroupTable::inverse(std::size_t i) const { return index_of(perm_inverse(perms[i])); }

std::size_t TensorShape::dim() const {
    std::size_t total = 1;
    for (int a : arities) {
        std::size_t len = 1;
        for (int i = 0; i < a; ++i) len *= static_cast<std::size_t>(n);
        total += len;
    }
    return total;
}

FpVec act_tensor(const TensorShape& shape, const Perm& g, std::span<const u64> v) {
    FpVec out(v.size(), 0);
    std::size_t off = 0;
    for (int m : shape.arities) {
        std::size_t len = 1;
        for (int i = 0; i < m; ++i) len *= static_cast<std::size_t>(shape.n);
        std::vector<int> tup(m);
        for (std::size_t idx = 0; idx < len; ++idx) {
            if (!v[off + idx]) continue;
            std::size_t tmp = idx;
            for (int i = m - 1; i >= 0; --i) {
                tup[i] = static_cast<int>(tmp % shape.n);
                tmp /= shape.n;
            }
            std::size_t pidx = 0;
            for (int i = 0; i < m; ++i) pidx = pidx * shape.n + static_cast<std::size_t>(g[tup[i]]);
            out[off + pidx] = v[off + idx];
        }
        off += len;
    }
    // vectors may or may not carry the trailing constant block
    if (v.size() == off + 1)
        out[off] = v[off];
    else if (v.size() != off)
        throw std::invalid_argument("act_tensor: vector does not match the shape");
    return out;
}

std::optional<Perm> orbit_witness(const StructureEncoding& a, const StructureEncoding& b) {
    if (a.n != b.n || a.arities != b.arities) throw std::invalid_argument("orbit_witness: shape mismatch");
    if (a.n > 8) throw std::invalid_argument("orbit_witness: enumeration capped at n = 8");
    TensorShape shape{a.n, a.arities};
    for (const Perm& g : all_permutations(a.n))
        if (act_tensor(shape, g, a.vec) == b.vec) return g;
    return std::nullopt;
}

namespace {

struct InjectionFn {
    std::vector<std::pair<int, int>> pairs;
    int size;
};

// independent enumeration of the indicator functions chi_pi, |pi| <= d
std::vector<InjectionFn> indicator_functions(int n, int d) {
    std::vector<InjectionFn> out;
    int cap = std::min(n, d);
    for (int k = 0; k <= cap; ++k) {
        // source subsets by bitmask, targets by recursive arrangement
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != k) continue;
            std::vector<int> sources;
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1) sources.push_back(i);
            std::vector<int> targets(k);
            std::vector<bool> used(n, false);
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos == k) {
                    InjectionFn fn;
                    fn.size = k;
                    for (int i = 0; i < k; ++i) fn.pairs.push_back({sources[i], targets[i]});
                    out.push_back(std::move(fn));
                    return;
                }
                for (int t = 0; t < n; ++t) {
                    if (used[t]) continue;
                    used[t] = true;
                    targets[pos] = t;
                    self(self, pos + 1);
                    used[t] = false;
                }
            };
            rec(rec, 0);
        }
    }
    return out;
}

FpVec chi_function(const InjectionFn& fn, const std::vector<Perm>& perms) {
    FpVec v(perms.size(), 0);
    for (std::size_t gi = 0; gi < perms.size(); ++gi) {
        bool ok = true;
        for (auto& [s, t] : fn.pairs)
            if (perms[gi][s] != t) {
                ok = false;
                break;
            }
        v[gi] = ok ? 1 : 0;
    }
    return v;
}

}  // namespace

BruteHom hom_space_bruteforce(const FieldSpec& F, const TensorShape& shape, int d,
                              const AffineSubspace& x1, const AffineSubspace& x2) {
    if (shape.n > 5) throw std::invalid_argument("hom_space_bruteforce: n!^2 cost, capped at n = 5");
    const std::vector<Perm> perms = all_permutations(shape.n);
    const std::size_t order = perms.size();
    std::vector<InjectionFn> fns = indicator_functions(shape.n, d);
    std::vector<FpVec> fn_vecs;
    fn_vecs.reserve(fns.size());
    for (auto& fn : fns) fn_vecs.push_back(chi_function(fn, perms));

    // span of R_e inside the function space, for each e
    std::vector<FpSubspace> re_span(d + 1);
    {
        RrefAccumulator acc(F, order);
        int upto = 0;
        for (int e = 0; e <= d; ++e) {
            while (upto < static_cast<int>(fns.size()) && fns[upto].size <= e) acc.insert(fn_vecs[upto]), ++upto;
            re_span[e] = acc.to_subspace();
        }
    }
    const FpSubspace& rd = re_span[d];

    // generating functions from the direct group action
    std::vector<FpVec> gens;
    if (!x1.is_empty) {
        if (x2.is_empty) {
            gens.push_back(FpVec(order, 1));
        } else {
            FpSubspace z2perp = annihilator(F, x2.dirs);
            for (std::size_t fi = 0; fi < z2perp.dim(); ++fi) {
                auto f = z2perp.basis.row(fi);
                u64 fv2 = 0;
                for (std::size_t c = 0; c < f.size(); ++c) fv2 = F.add(fv2, F.mul(f[c], x2.point[c]));
                FpVec row(order);
                for (std::size_t gi = 0; gi < order; ++gi) {
                    FpVec moved = act_tensor(shape, perms[gi], x1.point);
                    u64 val = 0;
                    for (std::size_t c = 0; c < f.size(); ++c) val = F.add(val, F.mul(f[c], moved[c]));
                    row[gi] = F.sub(val, fv2);
                }
                gens.push_back(std::move(row));
                for (std::size_t zi = 0; zi < x1.dirs.dim(); ++zi) {
                    FpVec zrow(order);
                    for (std::size_t gi = 0; gi < order; ++gi) {
                        FpVec moved = act_tensor(shape, perms[gi], x1.dirs.basis.row(zi));
                        u64 val = 0;
                        for (std::size_t c = 0; c < f.size(); ++c) val = F.add(val, F.mul(f[c], moved[c]));
                        zrow[gi] = val;
                    }
                    gens.push_back(std::move(zrow));
                }
            }
        }
    }

    FpSubspace cur = gens.empty() ? FpSubspace::zero(order) : FpSubspace::span_rows(F, gens);
    while (true) {
        RrefAccumulator acc(F, order);
        acc.insert_subspace(cur);
        for (int e = 0; e <= d; ++e) {
            FpSubspace se = subspace_intersect(F, cur, re_span[e]);
            for (std::size_t r = 0; r < se.dim(); ++r) {
                for (std::size_t mi = 0; mi < fns.size(); ++mi) {
                    if (fns[mi].size > d - e) continue;
                    FpVec prod(order);
                    auto row = se.basis.row(r);
                    for (std::size_t gi = 0; gi < order; ++gi) prod[gi] = F.mul(row[gi], fn_vecs[mi][gi]);
                    acc.insert(prod);
                }
            }
        }
        FpSubspace next = acc.to_subspace();
        if (next.dim() == cur.dim()) break;
        cur = std::move(next);
    }

    BruteHom out;
    out.rd_dim = rd.dim();
    out.ideal_dim = cur.dim();
    out.hom_dim = rd.dim() - cur.dim();
    out.ideal_functions = std::move(cur);
    out.rd_functions = rd;
    return out;
}

namespace {

// vertex-level refinement of two graphs with a shared dictionary, with
// support for individualized vertices (forced singleton colors)
struct PairRefiner {
    const ColoredGraph *ga, *gb;
    std::vector<int> ca, cb;

    PairRefiner(const ColoredGraph& a, const ColoredGraph& b) : ga(&a), gb(&b) {
        ca.assign(a.colors.begin(), a.colors.end());
        cb.assign(b.colors.begin(), b.colors.end());
        normalize();
    }

    void normalize() {
        std::map<int, int> remap;
        for (int c : ca) remap.emplace(c, 0);
        for (int c : cb) remap.emplace(c, 0);
        int next = 0;
        for (auto& [k, v] : remap) v = next++;
        for (int& c : ca) c = remap[c];
        for (int& c : cb) c = remap[c];
    }

    // refine to the stable partition; false when the histograms split unevenly
    bool refine() {
        while (true) {
            std::map<std::vector<int>, int> dict;
            auto signature = [&](const ColoredGraph& g, const std::vector<int>& col, int v) {
                std::vector<int> sig{col[v]};
                std::vector<int> nb;
                for (int w : g.adj[v]) nb.push_back(col[w]);
                std::sort(nb.begin(), nb.end());
                sig.insert(sig.end(), nb.begin(), nb.end());
                return sig;
            };
            std::vector<int> na(ga->n), nb(gb->n);
            for (int v = 0; v < ga->n; ++v) {
                auto [it, fresh] = dict.try_emplace(signature(*ga, ca, v), static_cast<int>(dict.size()));
                na[v] = it->second;
            }
            for (int v = 0; v < gb->n; ++v) {
                auto [it, fresh] = dict.try_emplace(signature(*gb, cb, v), static_cast<int>(dict.size()));
                nb[v] = it->second;
            }
            bool stable = classes(na) == classes(ca) && classes(nb) == classes(cb);
            ca = std::move(na);
            cb = std::move(nb);
            if (!histograms_match()) return false;
            if (stable) return true;
        }
    }

    static std::size_t classes(const std::vector<int>& col) {
        std::vector<int> c = col;
        std::sort(c.begin(), c.end());
        return std::unique(c.begin(), c.end()) - c.begin();
    }

    bool histograms_match() const {
        std::map<int, int> ha, hb;
        for (int c : ca) ++ha[c];
        for (int c : cb) ++hb[c];
        return ha == hb;
    }
};

bool verify_mapping(const ColoredGraph& a, const ColoredGraph& b, const Perm& m) {
    for (int v = 0; v < a.n; ++v) {
        if (a.colors[v] != b.colors[m[v]]) return false;
        for (int w : a.adj[v])
            if (!b.has_edge(m[v], m[w])) return false;
    }
    // degree counts match, so the reverse inclusion follows
    for (int v = 0; v < a.n; ++v)
        if (a.adj[v].size() != b.adj[m[v]].size()) return false;
    return true;
}

bool ir_search(PairRefiner state, Perm& out) {
    if (!state.refine()) return false;
    // smallest non-singleton class
    std::map<int, std::vector<int>> class_a, class_b;
    for (int v = 0; v < state.ga->n; ++v) class_a[state.ca[v]].push_back(v);
    for (int v = 0; v < state.gb->n; ++v) class_b[state.cb[v]].push_back(v);
    int best = -1;
    std::size_t best_size = 0;
    for (auto& [c, vs] : class_a)
        if (vs.size() > 1 && (best < 0 || vs.size() < best_size)) {
            best = c;
            best_size = vs.size();
        }
    if (best < 0) {
        // discrete: match by color
        Perm m(state.ga->n);
        for (auto& [c, vs] : class_a) m[vs[0]] = class_b[c][0];
        if (verify_mapping(*state.ga, *state.gb, m)) {
            out = m;
            return true;
        }
        return false;
    }
    int u = class_a[best][0];
    int fresh = 1 + std::max(*std::max_element(state.ca.begin(), state.ca.end()),
                             *std::max_element(state.cb.begin(), state.cb.end()));
    for (int v : class_b[best]) {
        PairRefiner next = state;
        next.ca[u] = fresh;
        next.cb[v] = fresh;
        if (ir_search(std::move(next), out)) return true;
    }
    return false;
}

}  // namespace

std::optional<Perm> graph_iso_search(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.n != b.n) return std::nullopt;
    Perm out;
    PairRefiner state(a, b);
    if (ir_search(std::move(state), out)) return out;
    return std::nullopt;
}

}  // namespace acgi
