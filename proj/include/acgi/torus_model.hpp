#pragma once

#include "acgi/rep.hpp"
#include "acgi/ring_model.hpp"

namespace acgi {

// Truncated Laurent polynomials: basis t^a for |a| <= d, deg t^a = |a|,
// ordered 1, t^-1, t, t^-2, t^2, ... so the filtration is a basis prefix.
class TorusRingModel final : public RingModel {
public:
    TorusRingModel(int d, const FieldSpec& F);

    std::size_t index_of(int exp) const;
    int exponent(std::size_t i) const;

    std::optional<SparseVec> product(std::size_t i, std::size_t j) const override;
    std::span<const CoPair> coproduct(std::size_t i) const override;
    SparseVec antipode(std::size_t i) const override;
    std::uint64_t counit(std::size_t) const override { return 1; }
    std::string describe() const override;
    // one pass per exponent window [lo, hi]: multipliers are the shifts that
    // keep the whole window inside [-d, d]
    const std::vector<ClosurePass>& closure_passes() const override;

    // evaluation functional sigma_t for t in the field (t != 0)
    std::uint64_t evaluate(std::size_t i, std::uint64_t t) const;
    FpVec sigma(std::uint64_t t) const;

private:
    std::vector<SparseVec> units_;
    std::vector<CoPair> cop_;
    mutable std::vector<ClosurePass> passes_;
};

// Diagonal weight representation: mu(e_i) = e_i (x) t^{w_i}.
Representation weight_rep(const TorusRingModel& model, const std::vector<int>& weights);

}  // namespace acgi
