#include "acgi/torus_model.hpp"

#include <cstdlib>
#include <stdexcept>

namespace acgi {

TorusRingModel::TorusRingModel(int d, const FieldSpec& F) {
    if (d < 0) throw std::invalid_argument("TorusRingModel: d must be nonnegative");
    set_field(F);
    d_ = d;
    std::vector<int> degs(2 * d + 1);
    for (std::size_t i = 0; i < degs.size(); ++i) degs[i] = std::abs(exponent(i));
    set_degrees(std::move(degs));
    units_.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) units_.push_back(SparseVec::unit(static_cast<std::uint32_t>(i)));
    cop_.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) cop_.push_back(CoPair{&units_[i], &units_[i], 1});
}

std::size_t TorusRingModel::index_of(int exp) const {
    if (exp == 0) return 0;
    std::size_t m = static_cast<std::size_t>(std::abs(exp));
    if (m > static_cast<std::size_t>(d_)) throw std::out_of_range("TorusRingModel: exponent out of range");
    return exp < 0 ? 2 * m - 1 : 2 * m;
}

int TorusRingModel::exponent(std::size_t i) const {
    if (i == 0) return 0;
    int m = static_cast<int>((i + 1) / 2);
    return (i % 2 == 1) ? -m : m;
}

std::optional<SparseVec> TorusRingModel::product(std::size_t i, std::size_t j) const {
    int s = exponent(i) + exponent(j);
    if (std::abs(s) > d_) return std::nullopt;
    return SparseVec::unit(static_cast<std::uint32_t>(index_of(s)));
}

std::span<const CoPair> TorusRingModel::coproduct(std::size_t i) const { return {&cop_[i], 1}; }

SparseVec TorusRingModel::antipode(std::size_t i) const {
    return SparseVec::unit(static_cast<std::uint32_t>(index_of(-exponent(i))));
}

std::string TorusRingModel::describe() const {
    return "Gm Laurent model, d=" + std::to_string(d_) + " over " + F_.describe();
}

const std::vector<RingModel::ClosurePass>& TorusRingModel::closure_passes() const {
    if (passes_.empty()) {
        for (int lo = -d_; lo <= d_; ++lo)
            for (int hi = lo; hi <= d_; ++hi) {
                ClosurePass pass;
                for (int a = lo; a <= hi; ++a) pass.window.push_back(static_cast<std::uint32_t>(index_of(a)));
                for (int m = -d_; m <= d_; ++m)
                    if (lo + m >= -d_ && hi + m <= d_)
                        pass.multipliers.push_back(static_cast<std::uint32_t>(index_of(m)));
                passes_.push_back(std::move(pass));
            }
    }
    return passes_;
}

std::uint64_t TorusRingModel::evaluate(std::size_t i, std::uint64_t t) const {
    int e = exponent(i);
    if (e >= 0) return F_.pow(t, static_cast<std::uint64_t>(e));
    return F_.pow(F_.inv(t), static_cast<std::uint64_t>(-e));
}

FpVec TorusRingModel::sigma(std::uint64_t t) const {
    FpVec v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = evaluate(i, t);
    return v;
}

Representation weight_rep(const TorusRingModel& model, const std::vector<int>& weights) {
    Representation r;
    r.model = &model;
    r.dim = weights.size();
    r.ell = 0;
    for (int w : weights) r.ell = std::max(r.ell, std::abs(w));
    if (r.ell > model.degree_bound())
        throw std::invalid_argument("weight_rep: ell(V) exceeds the model degree bound");
    r.name = "V(";
    for (std::size_t i = 0; i < weights.size(); ++i)
        r.name += (i ? "," : "") + std::to_string(weights[i]);
    r.name += ")";
    r.mu.resize(r.dim);
    for (std::size_t i = 0; i < r.dim; ++i)
        r.mu[i] = {{static_cast<std::uint32_t>(i),
                    SparseVec::unit(static_cast<std::uint32_t>(model.index_of(weights[i])))}};
    return r;
}

}  // namespace acgi
