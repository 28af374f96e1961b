#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace acgi {

// Running tally of field operations performed by the linear-algebra kernels.
// Bulk routines add their op counts here; the pipeline op-count report reads it.
std::uint64_t& op_counter();
void ops_reset();
std::uint64_t ops_total();

// F_{p^k} with p a machine-word prime. Elements are encoded as a single
// uint64: the polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1} is stored as
// sum c_i p^i. For k == 1 this is the plain residue in [0, p), which is the
// fast path used by all bulk linear algebra. Values of F_p embed into
// F_{p^k} unchanged.
struct FieldSpec {
    std::uint64_t p = 2;
    unsigned k = 1;
    std::vector<std::uint64_t> modulus;  // monic irreducible, coeffs c_0..c_k, set iff k > 1

    static FieldSpec prime(std::uint64_t p);
    // Finds a monic irreducible of degree k; deterministic per (p, k), so a
    // certificate over F_{p^k} verifies against a reconstructed field.
    static FieldSpec extension(std::uint64_t p, unsigned k);

    std::uint64_t size() const;  // p^k
    bool is_prime_field() const { return k == 1; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    std::string describe() const;  // "F_7" or "F_7^2"
};

bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo_exclusive, std::uint64_t hi_inclusive);

}  // namespace acgi
