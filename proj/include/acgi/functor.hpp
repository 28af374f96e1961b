#pragma once

#include <memory>

#include "acgi/affine.hpp"
#include "acgi/rep.hpp"

namespace acgi {

enum class Variance { Covariant, Contravariant };

// A linear equivariant map. Structured kinds avoid materializing matrices
// whose shapes blow up (tensor squares of tables, diagonal embeddings).
struct LinearMap {
    enum class Kind {
        Dense,        // arbitrary matrix
        BlockPick,    // subvector [offset, offset+len)
        BlockEmbed,   // embed a vector into [offset, offset+len)
        DiagEmbed,    // U -> U (x) U, e_x |-> e_x (x) e_x
        Contract,     // End(U) (x) U -> U, f (x) v |-> f(v)
        PairScale,    // V + V -> V, (x, y) |-> c1 x + c2 y
        Scale,        // V -> V, x |-> c1 x
        DiagPick,     // W (x) W -> W, out[t] = in[t, t]
        AtomRead,     // encoding -> U^(x)d table of an atomic formula
        EqIndicator,  // encoding -> U^(x)d table of x_i = x_j
        OnesTable,    // encoding -> constant * all-ones table
        ProjSum,      // U^(x)d -> U^(x)d, sum out position i
    };
    Kind kind = Kind::Dense;
    std::size_t in_dim = 0, out_dim = 0;
    FpMatrix dense;
    std::size_t offset = 0;  // BlockPick/BlockEmbed/OnesTable/AtomRead/EqIndicator source offset
    std::size_t n = 0;       // DiagEmbed/Contract: block size; table kinds: structure size
    int d = 0;               // table kinds: number of variable slots
    int i = 0, j = 0;        // EqIndicator positions, ProjSum position (i)
    std::vector<int> positions;  // AtomRead: variable index of each atom argument
    std::uint64_t c1 = 1, c2 = 1;

    static LinearMap dense_map(FpMatrix m);
    static LinearMap block_pick(std::size_t in_dim, std::size_t offset, std::size_t len);
    static LinearMap block_embed(std::size_t out_dim, std::size_t offset, std::size_t len);
    static LinearMap diag_embed(std::size_t n);
    static LinearMap contract(std::size_t n);
    static LinearMap pair_scale(std::size_t dim, std::uint64_t c1, std::uint64_t c2);
    static LinearMap scale(std::size_t dim, std::uint64_t c);
    static LinearMap identity(std::size_t dim) { return scale(dim, 1); }
    static LinearMap diag_pick(std::size_t len);

    FpVec apply(const FieldSpec& F, std::span<const std::uint64_t> v) const;
};

// Expression tree of constructible functors, evaluated on affine subspaces.
// Typing (source representation, variance) and the degree budget are checked
// at build time.
class FunctorExpr {
public:
    enum class Kind {
        ConstEmpty,
        ConstZero,
        ConstFull,
        ConstPoint,
        Linear,
        DirectSum,
        Tensor,
        Dual,
        Intersect,
        Sum,
        Compose
    };

    struct Node {
        Kind kind;
        Representation source, target;
        Variance variance = Variance::Covariant;
        std::shared_ptr<const Node> a, b;
        LinearMap map;
        std::uint64_t lambda = 0;
        FieldSpec F;
        int budget = 0;
    };

    static FunctorExpr const_empty(const FieldSpec& F, int d, Representation src, Representation dst);
    static FunctorExpr const_zero(const FieldSpec& F, int d, Representation src, Representation dst);
    static FunctorExpr const_full(const FieldSpec& F, int d, Representation src, Representation dst);
    static FunctorExpr const_point(const FieldSpec& F, int d, Representation src, Representation unit_rep,
                                   std::uint64_t lambda);
    static FunctorExpr linear(const FieldSpec& F, int d, Representation src, Representation dst,
                              LinearMap map);
    static FunctorExpr direct_sum(const FunctorExpr& a, const FunctorExpr& b);
    static FunctorExpr tensor(const FunctorExpr& a, const FunctorExpr& b);
    static FunctorExpr dual(const FunctorExpr& a);
    static FunctorExpr intersect(const FunctorExpr& a, const FunctorExpr& b);
    static FunctorExpr sum(const FunctorExpr& a, const FunctorExpr& b);
    static FunctorExpr compose(const FunctorExpr& outer, const FunctorExpr& inner);

    const Node& root() const { return *node_; }
    const Representation& source() const { return node_->source; }
    const Representation& target() const { return node_->target; }
    Variance variance() const { return node_->variance; }
    int budget() const { return node_->budget; }

private:
    explicit FunctorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

AffineSubspace eval(const FunctorExpr& f, const AffineSubspace& x);
bool distinguishes(const FunctorExpr& f, const AffineSubspace& x1, const AffineSubspace& x2);

// Constructible equivariants: linear maps, linear combinations, tensor
// pairing x |-> a(x) (x) b(x), pointwise (Hadamard) product of tables, and
// composition. required_budget() is the least d with membership in the
// d-constructible class.
class EquivariantExpr {
public:
    enum class Kind { Linear, LinComb, Pair, Star, Compose };

    struct Node {
        Kind kind;
        Representation source, target;
        std::shared_ptr<const Node> a, b;
        LinearMap map;
        std::uint64_t c1 = 1, c2 = 1;
        FieldSpec F;
        int required = 0;
    };

    static EquivariantExpr linear(const FieldSpec& F, Representation src, Representation dst,
                                  LinearMap map);
    static EquivariantExpr lin_comb(std::uint64_t c1, const EquivariantExpr& a, std::uint64_t c2,
                                    const EquivariantExpr& b);
    static EquivariantExpr pair(const EquivariantExpr& a, const EquivariantExpr& b,
                                Representation tensor_target);
    static EquivariantExpr star(const EquivariantExpr& a, const EquivariantExpr& b);
    static EquivariantExpr compose(const EquivariantExpr& outer, const EquivariantExpr& inner);

    const Node& root() const { return *node_; }
    int required_budget() const { return node_->required; }
    const Representation& source() const { return node_->source; }
    const Representation& target() const { return node_->target; }

private:
    explicit EquivariantExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

FpVec eval_equivariant(const EquivariantExpr& e, std::span<const std::uint64_t> v);
// A functor with F({v}) = {e(v)} on singletons, within e's budget.
FunctorExpr lift_equivariant(const EquivariantExpr& e, int d);

// Text syntax for functor trees:
//   expr := NAME | empty:REP | zero:REP | full:REP | point:INT
//         | dual(expr) | tensor(expr, expr) | dsum(expr, expr)
//         | cap(expr, expr) | sum(expr, expr) | comp(expr, expr)
// NAME is a registered linear functor ("id", "q", "p2", "delta", ...), REP a
// registered representation name ("V", "U", "EndU", ...). Constants have
// source V. Whitespace is free.
struct FunctorContext {
    FieldSpec F;
    int d = 3;
    Representation source;  // V
    std::vector<std::pair<std::string, Representation>> reps;
    std::vector<std::pair<std::string, FunctorExpr>> named;

    const Representation& rep(const std::string& name) const;
    const FunctorExpr& functor(const std::string& name) const;
};

// Context for graph encodings: plain graphs use U(x)U + k; 2-colored graphs
// use U(x)U + U + U + k with the reflexive gadget block, and the named maps
// q, p1, p2, delta, contract of the rank functor.
FunctorContext graph_functor_context(const FieldSpec& F, int d, int n, bool colored);

FunctorExpr parse_functor(const std::string& text, const FunctorContext& ctx);

}  // namespace acgi
