#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace acgi {

using Perm = std::vector<int>;  // images: g maps i to g[i]

inline std::vector<Perm> all_permutations(int n) {
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> out;
    Perm cur = id;
    do {
        out.push_back(cur);
    } while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

inline Perm perm_compose(const Perm& g, const Perm& h) {  // (g h)(i) = g(h(i))
    Perm out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[h[i]];
    return out;
}

inline Perm perm_inverse(const Perm& g) {
    Perm out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<int>(i);
    return out;
}

inline Perm perm_identity(int n) {
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
}

}  // namespace acgi
