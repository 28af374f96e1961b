#pragma once

#include <cstdint>
#include <string>

#include "acgi/affine.hpp"
#include "acgi/rep.hpp"

namespace acgi {

// Hom_d(X1, X2) as the annihilator of I_d(X1, X2) inside R_d^*, coordinates
// in the dual canonical basis.
struct HomSpace {
    AffineSubspace source, target;
    int d = 0;
    FpSubspace funcs;
    std::size_t ideal_dim = 0;

    std::size_t dim() const { return funcs.dim(); }
};

struct Morphism {
    FpVec vec;  // functional on R_d
    AffineSubspace source, target;
};

// Span of the defining equations of "g . X1 inside X2" in R_d coordinates.
FpSubspace generating_space(const Representation& rep, const AffineSubspace& x1,
                            const AffineSubspace& x2);

HomSpace hom_space(const Representation& rep, const AffineSubspace& x1, const AffineSubspace& x2);

// The counit as a functional vector; identity morphism of every object.
Morphism identity_morphism(const Representation& rep, const AffineSubspace& x);

// (psi o phi)(f) = sum psi(f_(1)) phi(f_(2)); field defaults to the model's,
// pass an extension of it to compose lifted functionals.
FpVec compose_vec(const RingModel& model, const FieldSpec& F, std::span<const std::uint64_t> psi,
                  std::span<const std::uint64_t> phi);
Morphism compose(const RingModel& model, const Morphism& psi, const Morphism& phi);

struct IsoOptions {
    std::uint64_t seed = 0;
    unsigned trials = 32;
    bool use_modiso = true;
    std::size_t modiso_dim_cap = 24;  // run the module-iso route when dim Hom(X2,X2) <= cap
};

struct IsoVerdict {
    enum class Kind { Isomorphic, NotIsomorphic, Inconclusive } kind;
    std::string reason;
    FpVec phi, gamma;       // verified certificate when Isomorphic
    unsigned ext_degree = 1;  // field extension used for the certificate
    std::size_t dim_h12 = 0, dim_h21 = 0, dim_h11 = 0, dim_h22 = 0;
    unsigned trials_used = 0;

    bool isomorphic() const { return kind == Kind::Isomorphic; }
    bool not_isomorphic() const { return kind == Kind::NotIsomorphic; }
};

IsoVerdict is_isomorphic(const Representation& rep, const AffineSubspace& x1,
                         const AffineSubspace& x2, const IsoOptions& opt = {});

// Verifies gamma o phi = eps_{X1} and phi o gamma = eps_{X2} over F.
bool verify_certificate(const RingModel& model, const FieldSpec& F, std::span<const std::uint64_t> phi,
                        std::span<const std::uint64_t> gamma);

}  // namespace acgi
