#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acgi/linalg.hpp"

namespace acgi {

struct SparseVec {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;  // sorted by index

    void add_term(const FieldSpec& F, std::uint32_t i, std::uint64_t c);
    FpVec to_dense(std::size_t n) const;
    static SparseVec from_dense(std::span<const std::uint64_t> v);
    static SparseVec unit(std::uint32_t i) { return SparseVec{{{i, 1}}}; }
};

// One summand of a coproduct: coeff * left (x) right. The vectors live in the
// model and stay valid for its lifetime; Delta(b_i) = sum of its pairs.
struct CoPair {
    const SparseVec* left;
    const SparseVec* right;
    std::uint64_t coeff;
};

// A filtered coordinate ring truncated at degree d, presented by a canonical
// basis sorted by degree so that R_e is the span of the first dim_at(e)
// basis elements.
class RingModel {
public:
    virtual ~RingModel() = default;

    const FieldSpec& field() const { return F_; }
    int degree_bound() const { return d_; }
    std::size_t dim() const { return degrees_.size(); }
    std::size_t dim_at(int e) const;
    int degree(std::size_t i) const { return degrees_[i]; }
    std::uint32_t unit_index() const { return 0; }  // basis element 0 is 1

    // b_i * b_j expressed in the canonical basis; nullopt when the product
    // has no expression inside R_d.
    virtual std::optional<SparseVec> product(std::size_t i, std::size_t j) const = 0;
    // v * b_j at the vector level; every component product must be defined.
    virtual FpVec multiply(std::span<const std::uint64_t> v, std::size_t j) const;
    virtual std::span<const CoPair> coproduct(std::size_t i) const = 0;
    virtual SparseVec antipode(std::size_t i) const = 0;
    virtual std::uint64_t counit(std::size_t i) const = 0;
    virtual std::string describe() const = 0;

    // The closure engine multiplies S-strata by basis elements. A pass pairs a
    // coordinate window (basis indices a stratum may touch) with the multiplier
    // indices whose products are defined on the whole window; this keeps the
    // one-step map independent of basis choices inside S. The default is the
    // degree stratification: window R_e, multipliers of degree <= d - e.
    struct ClosurePass {
        std::vector<std::uint32_t> window;
        std::vector<std::uint32_t> multipliers;
    };
    virtual const std::vector<ClosurePass>& closure_passes() const;

    FpVec counit_vector() const;  // counit on every basis element
    FpVec antipode_apply(std::span<const std::uint64_t> v) const;

protected:
    void set_field(FieldSpec F) { F_ = std::move(F); }
    // degrees must be nondecreasing and start at 0
    void set_degrees(std::vector<int> degrees);

    FieldSpec F_;
    int d_ = 0;

private:
    std::vector<int> degrees_;
    std::vector<std::size_t> dim_at_;
    mutable std::vector<ClosurePass> default_passes_;
};

struct TruncatedIdeal {
    int d = 0;
    FpSubspace span;
    std::size_t iterations = 0;
};

// (S)_d: one pass of multiplying the degree-e strata of S by the canonical
// basis, keeping every product the model can express inside R_d.
FpSubspace one_step_closure(const RingModel& model, const FpSubspace& s);
// ((S))_d: iterate to the fixpoint (dimension is monotone, so this terminates).
TruncatedIdeal closure(const RingModel& model, const FpSubspace& s);

// Delta(v) expanded into the n*n coordinates of R_d (x) R_d.
FpVec coproduct_expand(const RingModel& model, std::span<const std::uint64_t> v);
// The coproduct of each basis element in expanded coordinates.
std::vector<FpVec> coproduct_matrix(const RingModel& model);
// sum over Delta(b_i) of coeff * psi(left) * phi(right), i.e. (psi . phi)(b_i),
// computed for every i; F may be an extension of the model's base field.
FpVec convolve(const RingModel& model, const FieldSpec& F, std::span<const std::uint64_t> psi,
               std::span<const std::uint64_t> phi);

// S intersected with the span of the given coordinate subset, as an RREF basis.
FpSubspace stratum(const FieldSpec& F, const FpSubspace& s, std::span<const std::uint32_t> window);

}  // namespace acgi
