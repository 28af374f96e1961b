#pragma once

#include <optional>

#include "acgi/affine.hpp"
#include "acgi/perm.hpp"
#include "acgi/sym_model.hpp"
#include "acgi/wl.hpp"

namespace acgi {

// Enumerated symmetric group with composition by table (small n) or by
// direct composition.
struct GroupTable {
    int n = 0;
    std::vector<Perm> perms;
    std::vector<std::uint32_t> mult_table;  // built for n <= 6

    explicit GroupTable(int n);
    std::size_t size() const { return perms.size(); }
    std::size_t index_of(const Perm& g) const;  // Lehmer rank
    std::size_t mult(std::size_t i, std::size_t j) const;
    std::size_t inverse(std::size_t i) const;
};

// Enumerates Sigma_n for a witness with g . enc(a) = enc(b); n <= 8.
std::optional<Perm> orbit_witness(const StructureEncoding& a, const StructureEncoding& b);

// Hom_d computed entirely inside the function space on Sigma_n: R_d is the
// span of the evaluated indicator functions, the generating equations come
// from the direct permutation action, closure multiplies by indicator
// functions, and the Hom dimension is the codimension of the ideal. This
// path never touches the symbolic model and is the reference for it.
struct BruteHom {
    std::size_t rd_dim = 0;
    std::size_t ideal_dim = 0;
    std::size_t hom_dim = 0;
    FpSubspace ideal_functions;  // inside F_p^{n!}
    FpSubspace rd_functions;
};

struct TensorShape {
    int n = 0;
    std::vector<int> arities;
    std::size_t dim() const;
};

FpVec act_tensor(const TensorShape& shape, const Perm& g, std::span<const std::uint64_t> v);
BruteHom hom_space_bruteforce(const FieldSpec& F, const TensorShape& shape, int d,
                              const AffineSubspace& x1, const AffineSubspace& x2);

// Complete backtracking isomorphism search with color-refinement pruning;
// returns an explicit isomorphism or proves there is none.
std::optional<Perm> graph_iso_search(const ColoredGraph& a, const ColoredGraph& b);

}  // namespace acgi
