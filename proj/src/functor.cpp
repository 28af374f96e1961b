#include "acgi/functor.hpp"

#include <map>
#include <stdexcept>

namespace acgi {

using u64 = std::uint64_t;

LinearMap LinearMap::dense_map(FpMatrix m) {
    LinearMap lm;
    lm.kind = Kind::Dense;
    lm.in_dim = m.cols;
    lm.out_dim = m.rows;
    lm.dense = std::move(m);
    return lm;
}

LinearMap LinearMap::block_pick(std::size_t in_dim, std::size_t offset, std::size_t len) {
    LinearMap lm;
    lm.kind = Kind::BlockPick;
    lm.in_dim = in_dim;
    lm.out_dim = len;
    lm.offset = offset;
    return lm;
}

LinearMap LinearMap::block_embed(std::size_t out_dim, std::size_t offset, std::size_t len) {
    LinearMap lm;
    lm.kind = Kind::BlockEmbed;
    lm.in_dim = len;
    lm.out_dim = out_dim;
    lm.offset = offset;
    return lm;
}

LinearMap LinearMap::diag_embed(std::size_t n) {
    LinearMap lm;
    lm.kind = Kind::DiagEmbed;
    lm.in_dim = n;
    lm.out_dim = n * n;
    lm.n = n;
    return lm;
}

LinearMap LinearMap::contract(std::size_t n) {
    LinearMap lm;
    lm.kind = Kind::Contract;
    lm.in_dim = n * n * n;
    lm.out_dim = n;
    lm.n = n;
    return lm;
}

LinearMap LinearMap::pair_scale(std::size_t dim, u64 c1, u64 c2) {
    LinearMap lm;
    lm.kind = Kind::PairScale;
    lm.in_dim = 2 * dim;
    lm.out_dim = dim;
    lm.c1 = c1;
    lm.c2 = c2;
    return lm;
}

LinearMap LinearMap::scale(std::size_t dim, u64 c) {
    LinearMap lm;
    lm.kind = Kind::Scale;
    lm.in_dim = dim;
    lm.out_dim = dim;
    lm.c1 = c;
    return lm;
}

LinearMap LinearMap::diag_pick(std::size_t len) {
    LinearMap lm;
    lm.kind = Kind::DiagPick;
    lm.in_dim = len * len;
    lm.out_dim = len;
    lm.n = len;
    return lm;
}

namespace {

std::size_t pow_sz(std::size_t n, int m) {
    std::size_t r = 1;
    for (int i = 0; i < m; ++i) r *= n;
    return r;
}

}  // namespace

FpVec LinearMap::apply(const FieldSpec& F, std::span<const u64> v) const {
    if (v.size() != in_dim) throw std::invalid_argument("LinearMap::apply: dimension mismatch");
    switch (kind) {
        case Kind::Dense:
            return mat_vec(F, dense, v);
        case Kind::BlockPick:
            return FpVec(v.begin() + offset, v.begin() + offset + out_dim);
        case Kind::BlockEmbed: {
            FpVec out(out_dim, 0);
            std::copy(v.begin(), v.end(), out.begin() + offset);
            return out;
        }
        case Kind::DiagEmbed: {
            FpVec out(out_dim, 0);
            for (std::size_t x = 0; x < n; ++x) out[x * n + x] = v[x];
            return out;
        }
        case Kind::Contract: {
            // v indexed by (a, b, c) = E_{ab} (x) e_c; E_{ab}(e_c) = [b == c] e_a
            FpVec out(n, 0);
            for (std::size_t a = 0; a < n; ++a) {
                u64 acc = 0;
                for (std::size_t b = 0; b < n; ++b) acc = F.add(acc, v[(a * n + b) * n + b]);
                out[a] = acc;
            }
            op_counter() += n * n;
            return out;
        }
        case Kind::PairScale: {
            FpVec out(out_dim);
            for (std::size_t i2 = 0; i2 < out_dim; ++i2)
                out[i2] = F.add(F.mul(c1, v[i2]), F.mul(c2, v[out_dim + i2]));
            return out;
        }
        case Kind::Scale: {
            FpVec out(v.begin(), v.end());
            if (c1 != 1)
                for (auto& x : out) x = F.mul(c1, x);
            return out;
        }
        case Kind::DiagPick: {
            FpVec out(out_dim);
            for (std::size_t t = 0; t < out_dim; ++t) out[t] = v[t * out_dim + t];
            return out;
        }
        case Kind::AtomRead: {
            const std::size_t nn = n;
            FpVec out(out_dim, 0);
            std::vector<std::size_t> assign(d, 0);
            for (std::size_t t = 0; t < out_dim; ++t) {
                std::size_t tmp = t;
                for (int q = d - 1; q >= 0; --q) {
                    assign[q] = tmp % nn;
                    tmp /= nn;
                }
                std::size_t idx = 0;
                for (int pos : positions) idx = idx * nn + assign[pos];
                out[t] = v[offset + idx];
            }
            return out;
        }
        case Kind::EqIndicator: {
            const std::size_t nn = n;
            FpVec out(out_dim, 0);
            std::vector<std::size_t> assign(d, 0);
            for (std::size_t t = 0; t < out_dim; ++t) {
                std::size_t tmp = t;
                for (int q = d - 1; q >= 0; --q) {
                    assign[q] = tmp % nn;
                    tmp /= nn;
                }
                if (assign[i] == assign[j]) out[t] = v[offset];
            }
            return out;
        }
        case Kind::OnesTable: {
            FpVec out(out_dim, v[offset]);
            return out;
        }
        case Kind::ProjSum: {
            const std::size_t nn = n;
            std::size_t stride = pow_sz(nn, d - 1 - i);
            FpVec out(out_dim, 0);
            for (std::size_t t = 0; t < out_dim; ++t) {
                std::size_t base = t - (t / stride % nn) * stride;
                u64 acc = 0;
                for (std::size_t w = 0; w < nn; ++w) acc = F.add(acc, v[base + w * stride]);
                out[t] = acc;
            }
            op_counter() += out_dim * nn;
            return out;
        }
    }
    throw std::logic_error("LinearMap::apply: unhandled kind");
}

namespace {

using Node = FunctorExpr::Node;
using Kind = FunctorExpr::Kind;

void check_budget(const Node& n) {
    if (n.source.ell > n.budget || n.target.ell > n.budget)
        throw std::invalid_argument("FunctorExpr: representation complexity exceeds the degree budget");
}

Representation light_like(const Representation& r, std::size_t dim, int ell, std::string name) {
    Representation out;
    out.model = r.model;
    out.dim = dim;
    out.ell = ell;
    out.name = std::move(name);
    return out;
}

}  // namespace

FunctorExpr FunctorExpr::const_empty(const FieldSpec& F, int d, Representation src, Representation dst) {
    auto n = std::make_shared<Node>(Node{Kind::ConstEmpty, std::move(src), std::move(dst),
                                         Variance::Covariant, nullptr, nullptr, {}, 0, F, d});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::const_zero(const FieldSpec& F, int d, Representation src, Representation dst) {
    auto n = std::make_shared<Node>(Node{Kind::ConstZero, std::move(src), std::move(dst),
                                         Variance::Covariant, nullptr, nullptr, {}, 0, F, d});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::const_full(const FieldSpec& F, int d, Representation src, Representation dst) {
    auto n = std::make_shared<Node>(Node{Kind::ConstFull, std::move(src), std::move(dst),
                                         Variance::Covariant, nullptr, nullptr, {}, 0, F, d});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::const_point(const FieldSpec& F, int d, Representation src,
                                     Representation unit_rep, u64 lambda) {
    if (unit_rep.dim != 1) throw std::invalid_argument("const_point: target must be 1-dimensional");
    auto n = std::make_shared<Node>(Node{Kind::ConstPoint, std::move(src), std::move(unit_rep),
                                         Variance::Covariant, nullptr, nullptr, {}, lambda, F, d});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::linear(const FieldSpec& F, int d, Representation src, Representation dst,
                                LinearMap map) {
    if (map.in_dim != src.dim || map.out_dim != dst.dim)
        throw std::invalid_argument("FunctorExpr::linear: map shape does not match the representations");
    auto n = std::make_shared<Node>(Node{Kind::Linear, std::move(src), std::move(dst),
                                         Variance::Covariant, nullptr, nullptr, std::move(map), 0, F, d});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::direct_sum(const FunctorExpr& a, const FunctorExpr& b) {
    if (!a.source().same_as(b.source()) || a.variance() != b.variance() || a.budget() != b.budget())
        throw std::invalid_argument("direct_sum: sources, variances and budgets must agree");
    Representation tgt = light_like(a.target(), a.target().dim + b.target().dim,
                                    std::max(a.target().ell, b.target().ell),
                                    "(" + a.target().name + "+" + b.target().name + ")");
    auto n = std::make_shared<Node>(Node{Kind::DirectSum, a.source(), std::move(tgt), a.variance(),
                                         a.node_, b.node_, {}, 0, a.root().F, a.budget()});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::tensor(const FunctorExpr& a, const FunctorExpr& b) {
    if (!a.source().same_as(b.source()) || a.variance() != b.variance() || a.budget() != b.budget())
        throw std::invalid_argument("tensor: sources, variances and budgets must agree");
    if (a.target().ell + b.target().ell > a.budget())
        throw std::invalid_argument("tensor: ell(V') + ell(V'') exceeds the degree budget");
    Representation tgt = light_like(a.target(), a.target().dim * b.target().dim,
                                    a.target().ell + b.target().ell,
                                    "(" + a.target().name + "x" + b.target().name + ")");
    auto n = std::make_shared<Node>(Node{Kind::Tensor, a.source(), std::move(tgt), a.variance(),
                                         a.node_, b.node_, {}, 0, a.root().F, a.budget()});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::dual(const FunctorExpr& a) {
    Representation tgt = a.target().has_mu()
                             ? rep_dual(a.target())
                             : light_like(a.target(), a.target().dim, a.target().ell, a.target().name + "*");
    Variance v = a.variance() == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
    auto n = std::make_shared<Node>(Node{Kind::Dual, a.source(), std::move(tgt), v, a.node_, nullptr,
                                         {}, 0, a.root().F, a.budget()});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::intersect(const FunctorExpr& a, const FunctorExpr& b) {
    if (!a.source().same_as(b.source()) || a.variance() != b.variance() || a.budget() != b.budget())
        throw std::invalid_argument("intersect: sources, variances and budgets must agree");
    if (!a.target().same_as(b.target()))
        throw std::invalid_argument("intersect: targets must agree");
    auto n = std::make_shared<Node>(Node{Kind::Intersect, a.source(), a.target(), a.variance(),
                                         a.node_, b.node_, {}, 0, a.root().F, a.budget()});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::sum(const FunctorExpr& a, const FunctorExpr& b) {
    if (!a.source().same_as(b.source()) || a.variance() != b.variance() || a.budget() != b.budget())
        throw std::invalid_argument("sum: sources, variances and budgets must agree");
    if (!a.target().same_as(b.target())) throw std::invalid_argument("sum: targets must agree");
    auto n = std::make_shared<Node>(Node{Kind::Sum, a.source(), a.target(), a.variance(), a.node_,
                                         b.node_, {}, 0, a.root().F, a.budget()});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::compose(const FunctorExpr& outer, const FunctorExpr& inner) {
    if (!outer.source().same_as(inner.target()))
        throw std::invalid_argument("compose: outer source must be the inner target");
    if (outer.budget() != inner.budget()) throw std::invalid_argument("compose: budgets must agree");
    Variance v = outer.variance() == inner.variance() ? Variance::Covariant : Variance::Contravariant;
    auto n = std::make_shared<Node>(Node{Kind::Compose, inner.source(), outer.target(), v,
                                         outer.node_, inner.node_, {}, 0, outer.root().F,
                                         outer.budget()});
    check_budget(*n);
    return FunctorExpr(std::move(n));
}

namespace {

AffineSubspace eval_node(const Node& node, const AffineSubspace& x);

AffineSubspace eval_linear(const FieldSpec& F, const LinearMap& map, const AffineSubspace& x) {
    if (x.is_empty) return AffineSubspace::empty(map.out_dim);
    FpVec pt = map.apply(F, x.point);
    std::vector<FpVec> rows;
    rows.reserve(x.dirs.dim());
    for (std::size_t r = 0; r < x.dirs.dim(); ++r) rows.push_back(map.apply(F, x.dirs.basis.row(r)));
    FpSubspace dirs = rows.empty() ? FpSubspace::zero(map.out_dim) : FpSubspace::span_rows(F, rows);
    return AffineSubspace::make(F, std::move(pt), std::move(dirs));
}

AffineSubspace eval_tensor(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b) {
    std::size_t dim = a.ambient() * b.ambient();
    if (a.is_empty || b.is_empty) return AffineSubspace::empty(dim);
    auto outer = [&](std::span<const u64> u, std::span<const u64> v) {
        FpVec out(dim, 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!u[i]) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j]) out[i * v.size() + j] = F.mul(u[i], v[j]);
        }
        return out;
    };
    std::vector<FpVec> rows;
    for (std::size_t r = 0; r < a.dirs.dim(); ++r)
        for (std::size_t s = 0; s < b.dirs.dim(); ++s)
            rows.push_back(outer(a.dirs.basis.row(r), b.dirs.basis.row(s)));
    for (std::size_t s = 0; s < b.dirs.dim(); ++s) rows.push_back(outer(a.point, b.dirs.basis.row(s)));
    for (std::size_t r = 0; r < a.dirs.dim(); ++r) rows.push_back(outer(a.dirs.basis.row(r), b.point));
    FpSubspace dirs = rows.empty() ? FpSubspace::zero(dim) : FpSubspace::span_rows(F, rows);
    return AffineSubspace::make(F, outer(a.point, b.point), std::move(dirs));
}

// F(X) intersect F'(X) through duality in V + k: ((A x {1})^+ join (B x {1})^+)^+
// equals (A intersect B) x {1}; cross-checked against the direct intersection.
AffineSubspace eval_intersect(const FieldSpec& F, const AffineSubspace& a, const AffineSubspace& b) {
    std::size_t n = a.ambient();
    AffineSubspace direct = affine_intersect(F, a, b);
    auto embed = [&](const AffineSubspace& x) {
        if (x.is_empty) return AffineSubspace::empty(n + 1);
        FpVec pt(n + 1, 0);
        std::copy(x.point.begin(), x.point.end(), pt.begin());
        pt[n] = 1;
        FpMatrix dirs(x.dirs.dim(), n + 1);
        for (std::size_t r = 0; r < x.dirs.dim(); ++r)
            std::copy(x.dirs.basis.row(r).begin(), x.dirs.basis.row(r).end(), dirs.row(r).begin());
        return AffineSubspace::make(F, std::move(pt), FpSubspace::span(F, dirs));
    };
    AffineSubspace joined = affine_join(F, affine_plus_dual(F, embed(a)), affine_plus_dual(F, embed(b)));
    AffineSubspace back = affine_plus_dual(F, joined);
    AffineSubspace result = AffineSubspace::empty(n);
    if (!back.is_empty) {
        // slice at last coordinate = 1, then drop it
        FpVec last(n + 1, 0);
        last[n] = 1;
        std::vector<FpVec> hyper_rows;
        for (std::size_t i = 0; i < n; ++i) {
            FpVec v(n + 1, 0);
            v[i] = 1;
            hyper_rows.push_back(std::move(v));
        }
        AffineSubspace hyper = AffineSubspace::make(F, std::move(last), FpSubspace::span_rows(F, hyper_rows));
        AffineSubspace sliced = affine_intersect(F, back, hyper);
        if (!sliced.is_empty) {
            FpVec pt(sliced.point.begin(), sliced.point.begin() + n);
            FpMatrix dirs(sliced.dirs.dim(), n);
            for (std::size_t r = 0; r < sliced.dirs.dim(); ++r)
                std::copy(sliced.dirs.basis.row(r).begin(), sliced.dirs.basis.row(r).end() - 1,
                          dirs.row(r).begin());
            result = AffineSubspace::make(F, std::move(pt), FpSubspace::span(F, dirs));
        }
    }
    if (!(result == direct))
        throw std::logic_error("intersect: duality formula disagrees with the direct intersection");
    return result;
}

AffineSubspace eval_node(const Node& node, const AffineSubspace& x) {
    const FieldSpec& F = node.F;
    switch (node.kind) {
        case Kind::ConstEmpty:
            return AffineSubspace::empty(node.target.dim);
        case Kind::ConstZero:
            return AffineSubspace::singleton(F, FpVec(node.target.dim, 0));
        case Kind::ConstFull:
            return AffineSubspace::linear(FpSubspace::full(node.target.dim));
        case Kind::ConstPoint:
            return AffineSubspace::singleton(F, FpVec{node.lambda});
        case Kind::Linear:
            return eval_linear(F, node.map, x);
        case Kind::DirectSum: {
            AffineSubspace a = eval_node(*node.a, x);
            AffineSubspace b = eval_node(*node.b, x);
            std::size_t dim = a.ambient() + b.ambient();
            if (a.is_empty || b.is_empty) return AffineSubspace::empty(dim);
            FpVec pt(dim, 0);
            std::copy(a.point.begin(), a.point.end(), pt.begin());
            std::copy(b.point.begin(), b.point.end(), pt.begin() + a.ambient());
            FpMatrix dirs(a.dirs.dim() + b.dirs.dim(), dim);
            for (std::size_t r = 0; r < a.dirs.dim(); ++r)
                std::copy(a.dirs.basis.row(r).begin(), a.dirs.basis.row(r).end(), dirs.row(r).begin());
            for (std::size_t r = 0; r < b.dirs.dim(); ++r)
                std::copy(b.dirs.basis.row(r).begin(), b.dirs.basis.row(r).end(),
                          dirs.row(a.dirs.dim() + r).begin() + a.ambient());
            return AffineSubspace::make(F, std::move(pt), FpSubspace::span(F, dirs));
        }
        case Kind::Tensor:
            return eval_tensor(F, eval_node(*node.a, x), eval_node(*node.b, x));
        case Kind::Dual:
            return affine_plus_dual(F, eval_node(*node.a, x));
        case Kind::Intersect:
            return eval_intersect(F, eval_node(*node.a, x), eval_node(*node.b, x));
        case Kind::Sum:
            return affine_sum(F, eval_node(*node.a, x), eval_node(*node.b, x));
        case Kind::Compose:
            return eval_node(*node.a, eval_node(*node.b, x));
    }
    throw std::logic_error("eval: unhandled node kind");
}

}  // namespace

AffineSubspace eval(const FunctorExpr& f, const AffineSubspace& x) {
    if (x.ambient() != f.source().dim)
        throw std::invalid_argument("eval: object does not live in the source representation");
    return eval_node(f.root(), x);
}

bool distinguishes(const FunctorExpr& f, const AffineSubspace& x1, const AffineSubspace& x2) {
    return eval(f, x1).dim() != eval(f, x2).dim();
}

EquivariantExpr EquivariantExpr::linear(const FieldSpec& F, Representation src, Representation dst,
                                        LinearMap map) {
    if (map.in_dim != src.dim || map.out_dim != dst.dim)
        throw std::invalid_argument("EquivariantExpr::linear: shape mismatch");
    int req = std::max(src.ell, dst.ell);
    auto n = std::make_shared<Node>(Node{Kind::Linear, std::move(src), std::move(dst), nullptr,
                                         nullptr, std::move(map), 1, 1, F, req});
    return EquivariantExpr(std::move(n));
}

EquivariantExpr EquivariantExpr::lin_comb(u64 c1, const EquivariantExpr& a, u64 c2,
                                          const EquivariantExpr& b) {
    if (!a.source().same_as(b.source()) || a.target().dim != b.target().dim)
        throw std::invalid_argument("lin_comb: shape mismatch");
    int req = std::max(a.required_budget(), b.required_budget());
    auto n = std::make_shared<Node>(Node{Kind::LinComb, a.source(), a.target(), a.node_, b.node_,
                                         {}, c1, c2, a.root().F, req});
    return EquivariantExpr(std::move(n));
}

EquivariantExpr EquivariantExpr::pair(const EquivariantExpr& a, const EquivariantExpr& b,
                                      Representation tensor_target) {
    if (!a.source().same_as(b.source())) throw std::invalid_argument("pair: sources must agree");
    if (tensor_target.dim != a.target().dim * b.target().dim)
        throw std::invalid_argument("pair: target must be the tensor product");
    int req = std::max({a.required_budget(), b.required_budget(), a.target().ell + b.target().ell});
    auto n = std::make_shared<Node>(Node{Kind::Pair, a.source(), std::move(tensor_target), a.node_,
                                         b.node_, {}, 1, 1, a.root().F, req});
    return EquivariantExpr(std::move(n));
}

EquivariantExpr EquivariantExpr::star(const EquivariantExpr& a, const EquivariantExpr& b) {
    if (!a.source().same_as(b.source()) || a.target().dim != b.target().dim)
        throw std::invalid_argument("star: shape mismatch");
    // star factors through the tensor square of the table space
    int req = std::max({a.required_budget(), b.required_budget(), 2 * a.target().ell});
    auto n = std::make_shared<Node>(Node{Kind::Star, a.source(), a.target(), a.node_, b.node_, {},
                                         1, 1, a.root().F, req});
    return EquivariantExpr(std::move(n));
}

EquivariantExpr EquivariantExpr::compose(const EquivariantExpr& outer, const EquivariantExpr& inner) {
    if (outer.source().dim != inner.target().dim)
        throw std::invalid_argument("EquivariantExpr::compose: shape mismatch");
    int req = std::max(outer.required_budget(), inner.required_budget());
    auto n = std::make_shared<Node>(Node{Kind::Compose, inner.source(), outer.target(), outer.node_,
                                         inner.node_, {}, 1, 1, outer.root().F, req});
    return EquivariantExpr(std::move(n));
}

namespace {

FpVec eval_equi_node(const EquivariantExpr::Node& node, std::span<const u64> v,
                     std::map<const EquivariantExpr::Node*, FpVec>& memo) {
    auto it = memo.find(&node);
    if (it != memo.end()) return it->second;
    const FieldSpec& F = node.F;
    FpVec out;
    switch (node.kind) {
        case EquivariantExpr::Kind::Linear:
            out = node.map.apply(F, v);
            break;
        case EquivariantExpr::Kind::LinComb: {
            FpVec a = eval_equi_node(*node.a, v, memo);
            FpVec b = eval_equi_node(*node.b, v, memo);
            out.resize(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                out[i] = F.add(F.mul(node.c1, a[i]), F.mul(node.c2, b[i]));
            break;
        }
        case EquivariantExpr::Kind::Pair: {
            FpVec a = eval_equi_node(*node.a, v, memo);
            FpVec b = eval_equi_node(*node.b, v, memo);
            out.assign(a.size() * b.size(), 0);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!a[i]) continue;
                for (std::size_t j = 0; j < b.size(); ++j)
                    if (b[j]) out[i * b.size() + j] = F.mul(a[i], b[j]);
            }
            break;
        }
        case EquivariantExpr::Kind::Star: {
            FpVec a = eval_equi_node(*node.a, v, memo);
            FpVec b = eval_equi_node(*node.b, v, memo);
            out.resize(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], b[i]);
            op_counter() += a.size();
            break;
        }
        case EquivariantExpr::Kind::Compose: {
            FpVec inner = eval_equi_node(*node.b, v, memo);
            std::map<const EquivariantExpr::Node*, FpVec> memo2;
            out = eval_equi_node(*node.a, inner, memo2);
            break;
        }
    }
    memo[&node] = out;
    return out;
}

}  // namespace

FpVec eval_equivariant(const EquivariantExpr& e, std::span<const u64> v) {
    std::map<const EquivariantExpr::Node*, FpVec> memo;
    return eval_equi_node(e.root(), v, memo);
}

namespace {

FunctorExpr lift_node(const EquivariantExpr::Node& node, int d) {
    const FieldSpec& F = node.F;
    auto coerce = [&](FunctorExpr f) {
        // keep composed types aligned with the node's declared target
        if (f.target().same_as(node.target)) return f;
        if (f.target().dim != node.target.dim)
            throw std::logic_error("lift_equivariant: target dimension drifted");
        return FunctorExpr::compose(
            FunctorExpr::linear(F, d, f.target(), node.target, LinearMap::identity(node.target.dim)), f);
    };
    switch (node.kind) {
        case EquivariantExpr::Kind::Linear:
            return FunctorExpr::linear(F, d, node.source, node.target, node.map);
        case EquivariantExpr::Kind::LinComb: {
            FunctorExpr ds = FunctorExpr::direct_sum(lift_node(*node.a, d), lift_node(*node.b, d));
            LinearMap add = LinearMap::pair_scale(node.target.dim, node.c1, node.c2);
            return FunctorExpr::compose(FunctorExpr::linear(F, d, ds.target(), node.target, add), ds);
        }
        case EquivariantExpr::Kind::Pair:
            return coerce(FunctorExpr::tensor(lift_node(*node.a, d), lift_node(*node.b, d)));
        case EquivariantExpr::Kind::Star: {
            FunctorExpr t = FunctorExpr::tensor(lift_node(*node.a, d), lift_node(*node.b, d));
            LinearMap diag = LinearMap::diag_pick(node.target.dim);
            return FunctorExpr::compose(FunctorExpr::linear(F, d, t.target(), node.target, diag), t);
        }
        case EquivariantExpr::Kind::Compose: {
            FunctorExpr inner = lift_node(*node.b, d);
            FunctorExpr outer = lift_node(*node.a, d);
            if (!outer.source().same_as(inner.target()))
                outer = FunctorExpr::compose(
                    outer, FunctorExpr::linear(F, d, inner.target(), outer.source(),
                                               LinearMap::identity(outer.source().dim)));
            return FunctorExpr::compose(outer, inner);
        }
    }
    throw std::logic_error("lift_equivariant: unhandled kind");
}

}  // namespace

FunctorExpr lift_equivariant(const EquivariantExpr& e, int d) {
    if (e.required_budget() > d) throw std::invalid_argument("lift_equivariant: budget exceeded");
    return lift_node(e.root(), d);
}

const Representation& FunctorContext::rep(const std::string& name) const {
    for (auto& [n, r] : reps)
        if (n == name) return r;
    throw std::invalid_argument("functor syntax: unknown representation '" + name + "'");
}

const FunctorExpr& FunctorContext::functor(const std::string& name) const {
    for (auto& [n, f] : named)
        if (n == name) return f;
    throw std::invalid_argument("functor syntax: unknown functor '" + name + "'");
}

FunctorContext graph_functor_context(const FieldSpec& F, int d, int n, bool colored) {
    FunctorContext ctx;
    ctx.F = F;
    ctx.d = d;
    const std::size_t nn = static_cast<std::size_t>(n);
    Representation U = rep_light(nullptr, nn, 1, "U");
    Representation EndU = rep_light(nullptr, nn * nn, 2, "EndU");
    Representation EndUxU = rep_light(nullptr, nn * nn * nn, 3, "(EndUxU)");
    Representation unit = rep_light(nullptr, 1, 0, "k");
    std::size_t vdim = nn * nn + (colored ? 2 * nn : 0) + 1;
    Representation V = rep_light(nullptr, vdim, 2, colored ? "U^2+U^1+U^1+k" : "U^2+k");
    ctx.source = V;
    ctx.reps = {{"V", V}, {"U", U}, {"EndU", EndU}, {"EndUxU", EndUxU}, {"k", unit}};
    ctx.named.push_back({"id", FunctorExpr::linear(F, d, V, V, LinearMap::identity(vdim))});
    ctx.named.push_back({"q", FunctorExpr::linear(F, d, V, EndU, LinearMap::block_pick(vdim, 0, nn * nn))});
    if (colored) {
        ctx.named.push_back(
            {"p1", FunctorExpr::linear(F, d, V, U, LinearMap::block_pick(vdim, nn * nn, nn))});
        ctx.named.push_back(
            {"p2", FunctorExpr::linear(F, d, V, U, LinearMap::block_pick(vdim, nn * nn + nn, nn))});
    }
    ctx.named.push_back({"delta", FunctorExpr::linear(F, d, U, EndU, LinearMap::diag_embed(nn))});
    if (d >= 3)
        ctx.named.push_back({"contract", FunctorExpr::linear(F, d, EndUxU, U, LinearMap::contract(nn))});
    return ctx;
}

namespace {

struct FunctorParser {
    const std::string& text;
    const FunctorContext& ctx;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::string token() {
        skip();
        std::string t;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_' || text[pos] == ':'))
            t += text[pos++];
        if (t.empty()) throw std::invalid_argument("functor syntax: expected a name at position " +
                                                   std::to_string(pos));
        return t;
    }

    void expect(char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw std::invalid_argument(std::string("functor syntax: expected '") + c + "' at position " +
                                        std::to_string(pos));
        ++pos;
    }

    FunctorExpr parse() {
        std::string head = token();
        skip();
        auto binary = [&](auto make) {
            expect('(');
            FunctorExpr a = parse();
            expect(',');
            FunctorExpr b = parse();
            expect(')');
            return make(a, b);
        };
        if (head == "dual") {
            expect('(');
            FunctorExpr a = parse();
            expect(')');
            return FunctorExpr::dual(a);
        }
        if (head == "tensor") return binary([](auto& a, auto& b) { return FunctorExpr::tensor(a, b); });
        if (head == "dsum") return binary([](auto& a, auto& b) { return FunctorExpr::direct_sum(a, b); });
        if (head == "cap") return binary([](auto& a, auto& b) { return FunctorExpr::intersect(a, b); });
        if (head == "sum") return binary([](auto& a, auto& b) { return FunctorExpr::sum(a, b); });
        if (head == "comp") return binary([](auto& a, auto& b) { return FunctorExpr::compose(a, b); });
        if (head.rfind("empty:", 0) == 0)
            return FunctorExpr::const_empty(ctx.F, ctx.d, ctx.source, ctx.rep(head.substr(6)));
        if (head.rfind("zero:", 0) == 0)
            return FunctorExpr::const_zero(ctx.F, ctx.d, ctx.source, ctx.rep(head.substr(5)));
        if (head.rfind("full:", 0) == 0)
            return FunctorExpr::const_full(ctx.F, ctx.d, ctx.source, ctx.rep(head.substr(5)));
        if (head.rfind("point:", 0) == 0)
            return FunctorExpr::const_point(ctx.F, ctx.d, ctx.source, ctx.rep("k"),
                                            std::stoull(head.substr(6)) % (ctx.F.size()));
        return ctx.functor(head);
    }
};

}  // namespace

FunctorExpr parse_functor(const std::string& text, const FunctorContext& ctx) {
    FunctorParser p{text, ctx};
    FunctorExpr f = p.parse();
    p.skip();
    if (p.pos != text.size())
        throw std::invalid_argument("functor syntax: trailing input at position " + std::to_string(p.pos));
    return f;
}

}  // namespace acgi
