#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "acgi/perm.hpp"
#include "acgi/rep.hpp"
#include "acgi/ring_model.hpp"

namespace acgi {

// chi_pi(g) = 1 iff g maps every source to its target; the spanning functions
// of the filtered coordinate ring of the permutation matrices.
struct PartialInjection {
    std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;  // (source, target), sorted by source

    std::size_t size() const { return pairs.size(); }
    PartialInjection inverse() const;
    bool within_identity() const;
    auto operator<=>(const PartialInjection&) const = default;
};

std::uint64_t chi_value(const PartialInjection& pi, const Perm& g);
// union of two compatible partial injections; nullopt when the product is zero
std::optional<PartialInjection> unite(const PartialInjection& a, const PartialInjection& b);

enum class SymBackend { Exact, Sampled };

struct SymOptions {
    SymBackend backend = SymBackend::Exact;
    std::uint64_t seed = 0;
    int sample_batch = 128;     // sampled backend: permutations added per growth step
    int stable_rounds = 3;      // stop when the spanning rank is unchanged this many rounds
};

// The coordinate ring of Sigma_n filtered by entry functions, truncated at
// degree d. The exact backend works with function vectors of length n!; the
// sampled backend evaluates at random permutations until the rank stabilizes
// and is a Monte Carlo approximation flagged in describe().
class SymRingModel final : public RingModel {
public:
    SymRingModel(int n, int d, const FieldSpec& F, const SymOptions& opt = {});

    int n() const { return n_; }
    SymBackend backend() const { return backend_; }
    const PartialInjection& basis_element(std::size_t i) const { return basis_inj_[i]; }
    const std::vector<PartialInjection>& spanning() const { return spanning_; }
    // canonical coordinates of chi_pi, |pi| <= d
    const SparseVec& reduce(const PartialInjection& pi) const;

    std::optional<SparseVec> product(std::size_t i, std::size_t j) const override;
    FpVec multiply(std::span<const std::uint64_t> v, std::size_t j) const override;
    std::span<const CoPair> coproduct(std::size_t i) const override;
    SparseVec antipode(std::size_t i) const override;
    std::uint64_t counit(std::size_t i) const override;
    std::string describe() const override;

    std::uint64_t evaluate(std::size_t i, const Perm& g) const { return chi_value(basis_inj_[i], g); }
    FpVec sigma(const Perm& g) const;  // the evaluation functional at g
    // the whole group (exact backend) or the sample set
    const std::vector<Perm>& sample_points() const { return points_; }

private:
    void build();
    const SparseVec* product_ptr(std::size_t i, std::size_t j) const;  // nullptr = zero

    int n_;
    SymBackend backend_;
    SymOptions opt_;
    std::vector<Perm> points_;  // all of Sigma_n, or the sample set
    std::vector<PartialInjection> spanning_;
    std::vector<PartialInjection> basis_inj_;
    std::map<PartialInjection, SparseVec> reduction_;
    // product table: -2 outside R_d, -1 zero, else index into the pool of
    // pointers into the reduction table
    std::vector<std::int32_t> prod_code_;
    std::vector<const SparseVec*> prod_pool_;
    mutable std::vector<std::vector<CoPair>> cop_;
    mutable std::vector<char> cop_done_;
    mutable std::mutex cop_mutex_;
};

Representation fundamental_rep(const SymRingModel& model);          // U = k^n
Representation tensor_power_rep(const SymRingModel& model, int m);  // U^(x)m
Representation conjugation_rep(const SymRingModel& model);          // Mat_{n,n}, g.A = g A g^T

// Permutation action on a tensor-power-plus-constant encoding.
struct Relation {
    int arity;
    std::vector<std::vector<int>> tuples;
};

struct StructureEncoding {
    Representation rep;
    FpVec vec;
    std::vector<std::size_t> block_offset;  // one per relation; the constant block is last
    std::vector<int> arities;
    int n = 0;
};

StructureEncoding encode_structure(const SymRingModel& model, const std::vector<Relation>& rels);
// The same encoding vector and shape without coaction tables; n can be large
// and no ring model is required.
StructureEncoding encode_structure_free(int n, const std::vector<Relation>& rels);
// g . vec for an encoding (permutes every tensor block coordinatewise).
FpVec act_on_encoding(const StructureEncoding& enc, const Perm& g);

}  // namespace acgi
