#pragma once

#include <string>
#include <vector>

#include "acgi/ring_model.hpp"

namespace acgi {

// A rational representation presented by its coaction on basis vectors:
// mu(e_v) = sum_w e_w (x) r_{w,v}, each r in canonical R_d coordinates.
// "Light" representations carry only (dim, ell) and support no coaction;
// functor evaluation works on them, Hom-space computation does not.
struct Representation {
    const RingModel* model = nullptr;
    std::size_t dim = 0;
    int ell = 0;
    std::string name;
    // mu[v] = list of (w, r_{w,v}); empty when light
    std::vector<std::vector<std::pair<std::uint32_t, SparseVec>>> mu;

    bool has_mu() const { return !mu.empty(); }
    bool same_as(const Representation& o) const {
        return model == o.model && dim == o.dim && ell == o.ell && name == o.name;
    }
};

Representation rep_trivial(const RingModel& model);
// model may be null: dimension/complexity bookkeeping only
Representation rep_light(const RingModel* model, std::size_t dim, int ell, std::string name);
Representation rep_direct_sum(const Representation& a, const Representation& b);
Representation rep_tensor(const Representation& a, const Representation& b);
Representation rep_dual(const Representation& a);

// (f (x) id) mu(w) for a functional f on V: an element of R_d.
FpVec mu_pair_left(const Representation& rep, std::span<const std::uint64_t> f,
                   std::span<const std::uint64_t> w);
// (id (x) phi) mu(w) for a functional phi on R_d: the action phi . w on V.
FpVec mu_act(const Representation& rep, std::span<const std::uint64_t> phi,
             std::span<const std::uint64_t> w);
// (id (x) sigma_eval) mu(w) where sigma_eval gives the value of each basis
// element of R_d at a fixed group element; used by evaluation oracles.
FpVec mu_eval(const Representation& rep, std::span<const std::uint64_t> basis_values,
              std::span<const std::uint64_t> w);

// comodule axiom (mu (x) id) mu = (id (x) Delta) mu and counit law on e_v
bool comodule_axiom_holds(const Representation& rep, std::size_t v);

}  // namespace acgi
