#include "acgi/sym_model.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace acgi {

using u64 = std::uint64_t;

PartialInjection PartialInjection::inverse() const {
    PartialInjection out;
    out.pairs.reserve(pairs.size());
    for (auto& [s, t] : pairs) out.pairs.push_back({t, s});
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

bool PartialInjection::within_identity() const {
    return std::all_of(pairs.begin(), pairs.end(), [](auto& p) { return p.first == p.second; });
}

u64 chi_value(const PartialInjection& pi, const Perm& g) {
    for (auto& [s, t] : pi.pairs)
        if (g[s] != t) return 0;
    return 1;
}

std::optional<PartialInjection> unite(const PartialInjection& a, const PartialInjection& b) {
    PartialInjection out;
    out.pairs.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a.pairs[i].first < b.pairs[j].first)) {
            out.pairs.push_back(a.pairs[i++]);
        } else if (i == a.size() || b.pairs[j].first < a.pairs[i].first) {
            out.pairs.push_back(b.pairs[j++]);
        } else {
            if (a.pairs[i].second != b.pairs[j].second) return std::nullopt;  // source conflict
            out.pairs.push_back(a.pairs[i++]);
            ++j;
        }
    }
    // distinct targets
    std::vector<std::uint8_t> targets;
    targets.reserve(out.size());
    for (auto& [s, t] : out.pairs) targets.push_back(t);
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) return std::nullopt;
    return out;
}

namespace {

// all partial injections of size exactly k on [0, n), in lex order of their pair lists
void enumerate_injections(int n, int k, std::vector<PartialInjection>& out) {
    std::vector<int> sources(k), targets(k);
    std::vector<bool> used(n, false);
    auto rec_targets = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            PartialInjection pi;
            for (int i = 0; i < k; ++i)
                pi.pairs.push_back({static_cast<std::uint8_t>(sources[i]), static_cast<std::uint8_t>(targets[i])});
            out.push_back(std::move(pi));
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
    auto rec_sources = [&](auto&& self, int pos, int from) -> void {
        if (pos == k) {
            rec_targets(rec_targets, 0);
            return;
        }
        for (int s = from; s < n; ++s) {
            sources[pos] = s;
            self(self, pos + 1, s + 1);
        }
    };
    rec_sources(rec_sources, 0, 0);
}

}  // namespace

SymRingModel::SymRingModel(int n, int d, const FieldSpec& F, const SymOptions& opt)
    : n_(n), backend_(opt.backend), opt_(opt) {
    if (n < 1) throw std::invalid_argument("SymRingModel: n must be positive");
    if (d < 0) throw std::invalid_argument("SymRingModel: d must be nonnegative");
    if (backend_ == SymBackend::Exact && n > 8)
        throw std::invalid_argument("SymRingModel: the exact backend enumerates n! functions and is capped at n = 8; "
                                    "use the sampled backend for larger n");
    if (backend_ == SymBackend::Sampled && n > 30)
        throw std::invalid_argument("SymRingModel: the sampled backend is capped at n = 30");
    set_field(F);
    d_ = d;
    build();
}

void SymRingModel::build() {
    for (int k = 0; k <= std::min(d_, n_); ++k) enumerate_injections(n_, k, spanning_);

    if (backend_ == SymBackend::Exact) {
        points_ = all_permutations(n_);
    } else {
        std::mt19937_64 rng(opt_.seed * 0x9e3779b97f4a7c15ull + 0xc0ffee);
        points_.clear();
        int stable = 0;
        std::size_t last_rank = 0;
        Perm base = perm_identity(n_);
        while (stable < opt_.stable_rounds) {
            for (int b = 0; b < opt_.sample_batch; ++b) {
                Perm g = base;
                std::shuffle(g.begin(), g.end(), rng);
                points_.push_back(std::move(g));
            }
            FpMatrix m(spanning_.size(), points_.size());
            for (std::size_t i = 0; i < spanning_.size(); ++i)
                for (std::size_t j = 0; j < points_.size(); ++j) m.at(i, j) = chi_value(spanning_[i], points_[j]);
            std::size_t rank = rref(F_, m).second;
            stable = (rank == last_rank) ? stable + 1 : 0;
            last_rank = rank;
        }
    }

    // greedy canonical basis in (degree, lex) order with reduction tracking
    SolveBasis sb(F_, points_.size());
    std::vector<int> degrees;
    FpVec fn(points_.size());
    for (const PartialInjection& pi : spanning_) {
        for (std::size_t j = 0; j < points_.size(); ++j) fn[j] = chi_value(pi, points_[j]);
        auto res = sb.insert(fn);
        if (res.independent) {
            basis_inj_.push_back(pi);
            degrees.push_back(static_cast<int>(pi.size()));
            reduction_[pi] = SparseVec::unit(static_cast<std::uint32_t>(res.index));
        } else {
            reduction_[pi] = SparseVec::from_dense(res.coords);
        }
    }
    set_degrees(std::move(degrees));

    // eager product table; entries point into the reduction table
    const std::size_t N = dim();
    prod_code_.assign(N * N, -1);
    prod_pool_.clear();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            auto u = unite(basis_inj_[i], basis_inj_[j]);
            if (!u) continue;  // zero product, keep -1
            if (static_cast<int>(u->size()) > d_) {
                prod_code_[i * N + j] = -2;  // outside R_d
                continue;
            }
            prod_pool_.push_back(&reduction_.at(*u));
            prod_code_[i * N + j] = static_cast<std::int32_t>(prod_pool_.size() - 1);
        }
    cop_.resize(N);
    cop_done_.assign(N, 0);
}

const SparseVec& SymRingModel::reduce(const PartialInjection& pi) const {
    auto it = reduction_.find(pi);
    if (it == reduction_.end()) throw std::out_of_range("SymRingModel::reduce: injection larger than d");
    return it->second;
}

const SparseVec* SymRingModel::product_ptr(std::size_t i, std::size_t j) const {
    std::int32_t code = prod_code_[i * dim() + j];
    if (code == -2) throw std::domain_error("SymRingModel: product outside R_d");
    if (code == -1) return nullptr;
    return prod_pool_[code];
}

std::optional<SparseVec> SymRingModel::product(std::size_t i, std::size_t j) const {
    std::int32_t code = prod_code_[i * dim() + j];
    if (code == -2) return std::nullopt;
    if (code == -1) return SparseVec{};
    return *prod_pool_[code];
}

FpVec SymRingModel::multiply(std::span<const u64> v, std::size_t j) const {
    const FieldSpec& F = F_;
    FpVec out(dim(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        const SparseVec* ptr = product_ptr(i, j);
        if (!ptr) continue;
        for (auto& [idx, c] : ptr->terms) out[idx] = F.add(out[idx], F.mul(v[i], c));
        op_counter() += 2 * ptr->terms.size();
    }
    return out;
}

std::span<const CoPair> SymRingModel::coproduct(std::size_t i) const {
    std::lock_guard<std::mutex> lock(cop_mutex_);
    if (!cop_done_[i]) {
        const PartialInjection& pi = basis_inj_[i];
        const int m = static_cast<int>(pi.size());
        std::vector<CoPair>& pairs = cop_[i];
        std::vector<int> mid(m);
        std::vector<bool> used(n_, false);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == m) {
                PartialInjection left, right;  // chi_{mid -> targets} and chi_{sources -> mid}
                for (int a = 0; a < m; ++a) {
                    left.pairs.push_back({static_cast<std::uint8_t>(mid[a]), pi.pairs[a].second});
                    right.pairs.push_back({pi.pairs[a].first, static_cast<std::uint8_t>(mid[a])});
                }
                std::sort(left.pairs.begin(), left.pairs.end());
                pairs.push_back(CoPair{&reduction_.at(left), &reduction_.at(right), 1});
                return;
            }
            for (int t = 0; t < n_; ++t) {
                if (used[t]) continue;
                used[t] = true;
                mid[pos] = t;
                self(self, pos + 1);
                used[t] = false;
            }
        };
        rec(rec, 0);
        cop_done_[i] = 1;
    }
    return cop_[i];
}

SparseVec SymRingModel::antipode(std::size_t i) const { return reduce(basis_inj_[i].inverse()); }

u64 SymRingModel::counit(std::size_t i) const { return basis_inj_[i].within_identity() ? 1 : 0; }

std::string SymRingModel::describe() const {
    std::string s = "Sigma_" + std::to_string(n_) + " entry-function model, d=" + std::to_string(d_) +
                    " over " + F_.describe();
    if (backend_ == SymBackend::Sampled)
        s += " [sampled backend: " + std::to_string(points_.size()) + " evaluation points, Monte Carlo]";
    return s;
}

FpVec SymRingModel::sigma(const Perm& g) const {
    FpVec v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = chi_value(basis_inj_[i], g);
    return v;
}

Representation fundamental_rep(const SymRingModel& model) {
    const int n = model.n();
    if (model.degree_bound() < 1) throw std::invalid_argument("fundamental_rep: requires d >= 1");
    Representation r;
    r.model = &model;
    r.dim = static_cast<std::size_t>(n);
    r.ell = 1;
    r.name = "U";
    r.mu.resize(r.dim);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a) {
            PartialInjection pi;
            pi.pairs.push_back({static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(a)});
            const SparseVec& red = model.reduce(pi);
            if (!red.terms.empty()) r.mu[c].push_back({static_cast<std::uint32_t>(a), red});
        }
    return r;
}

Representation tensor_power_rep(const SymRingModel& model, int m) {
    if (m < 1) throw std::invalid_argument("tensor_power_rep: m >= 1");
    if (m > model.degree_bound())
        throw std::invalid_argument("tensor_power_rep: ell = m exceeds the model degree bound");
    const int n = model.n();
    std::size_t dim = 1;
    for (int i = 0; i < m; ++i) dim *= static_cast<std::size_t>(n);
    Representation r;
    r.model = &model;
    r.dim = dim;
    r.ell = m;
    r.name = "U^" + std::to_string(m);
    r.mu.resize(dim);
    std::vector<int> src(m), dst(m);
    for (std::size_t ci = 0; ci < dim; ++ci) {
        std::size_t tmp = ci;
        for (int i = m - 1; i >= 0; --i) {
            src[i] = static_cast<int>(tmp % n);
            tmp /= n;
        }
        for (std::size_t ai = 0; ai < dim; ++ai) {
            tmp = ai;
            for (int i = m - 1; i >= 0; --i) {
                dst[i] = static_cast<int>(tmp % n);
                tmp /= n;
            }
            // collect (src_i -> dst_i); skip on conflicts, dedupe repeats
            PartialInjection pi;
            bool ok = true;
            for (int i = 0; i < m && ok; ++i) {
                bool dup = false;
                for (auto& [s, t] : pi.pairs) {
                    if (s == src[i]) {
                        ok = (t == dst[i]);
                        dup = true;
                        break;
                    }
                    if (t == dst[i]) {
                        ok = false;
                        dup = true;
                        break;
                    }
                }
                if (!ok || dup) continue;
                pi.pairs.push_back({static_cast<std::uint8_t>(src[i]), static_cast<std::uint8_t>(dst[i])});
            }
            if (!ok) continue;
            std::sort(pi.pairs.begin(), pi.pairs.end());
            const SparseVec& red = model.reduce(pi);
            if (!red.terms.empty()) r.mu[ci].push_back({static_cast<std::uint32_t>(ai), red});
        }
    }
    return r;
}

Representation conjugation_rep(const SymRingModel& model) {
    if (model.degree_bound() < 2) throw std::invalid_argument("conjugation_rep: requires d >= 2");
    Representation r = tensor_power_rep(model, 2);
    r.name = "Mat";
    return r;
}

namespace {

std::size_t pow_sz(int n, int m) {
    std::size_t r = 1;
    for (int i = 0; i < m; ++i) r *= static_cast<std::size_t>(n);
    return r;
}

StructureEncoding encode_common(Representation rep, int n, const std::vector<Relation>& rels) {
    StructureEncoding enc;
    enc.rep = std::move(rep);
    enc.n = n;
    enc.vec.assign(enc.rep.dim, 0);
    std::size_t off = 0;
    for (const Relation& rel : rels) {
        enc.block_offset.push_back(off);
        enc.arities.push_back(rel.arity);
        for (const auto& tuple : rel.tuples) {
            if (static_cast<int>(tuple.size()) != rel.arity)
                throw std::invalid_argument("encode_structure: tuple arity mismatch");
            std::size_t idx = 0;
            for (int x : tuple) {
                if (x < 0 || x >= n) throw std::invalid_argument("encode_structure: tuple entry out of range");
                idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
            }
            enc.vec[off + idx] = 1;
        }
        off += pow_sz(n, rel.arity);
    }
    enc.block_offset.push_back(off);  // the constant block
    enc.vec[off] = 1;
    return enc;
}

}  // namespace

StructureEncoding encode_structure(const SymRingModel& model, const std::vector<Relation>& rels) {
    Representation rep;
    bool first = true;
    for (const Relation& rel : rels) {
        Representation block = tensor_power_rep(model, rel.arity);
        rep = first ? block : rep_direct_sum(rep, block);
        first = false;
    }
    Representation unit = rep_trivial(model);
    rep = first ? unit : rep_direct_sum(rep, unit);
    return encode_common(std::move(rep), model.n(), rels);
}

StructureEncoding encode_structure_free(int n, const std::vector<Relation>& rels) {
    std::size_t dim = 1;
    int ell = 0;
    std::string name;
    for (const Relation& rel : rels) {
        dim += pow_sz(n, rel.arity);
        ell = std::max(ell, rel.arity);
        name += "U^" + std::to_string(rel.arity) + "+";
    }
    name += "k";
    return encode_common(rep_light(nullptr, dim, ell, name), n, rels);
}

FpVec act_on_encoding(const StructureEncoding& enc, const Perm& g) {
    FpVec out(enc.vec.size(), 0);
    const int n = enc.n;
    for (std::size_t b = 0; b < enc.arities.size(); ++b) {
        std::size_t off = enc.block_offset[b];
        int m = enc.arities[b];
        std::size_t len = pow_sz(n, m);
        std::vector<int> tup(m);
        for (std::size_t idx = 0; idx < len; ++idx) {
            if (!enc.vec[off + idx]) continue;
            std::size_t tmp = idx;
            for (int i = m - 1; i >= 0; --i) {
                tup[i] = static_cast<int>(tmp % n);
                tmp /= n;
            }
            std::size_t pidx = 0;
            for (int i = 0; i < m; ++i) pidx = pidx * n + static_cast<std::size_t>(g[tup[i]]);
            out[off + pidx] = enc.vec[off + idx];
        }
    }
    out[enc.block_offset.back()] = enc.vec[enc.block_offset.back()];
    return out;
}

}  // namespace acgi
