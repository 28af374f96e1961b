#include "acgi/fields.hpp"

#include <random>

namespace acgi {

std::uint64_t& op_counter() {
    thread_local std::uint64_t count = 0;
    return count;
}

void ops_reset() { op_counter() = 0; }
std::uint64_t ops_total() { return op_counter(); }

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Polynomial helpers over F_p, coefficient vectors low-to-high.
using Poly = std::vector<u64>;

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    // reduce by the monic modulus
    std::size_t k = mod.size() - 1;
    for (std::size_t i = prod.size(); i-- > k;) {
        u64 c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < k; ++j)
            prod[i - k + j] = (prod[i - k + j] + mulmod(c, (p - mod[j]) % p, p)) % p;
    }
    prod.resize(k);
    return prod;
}

Poly poly_pow_mod(Poly base, u64 e, const Poly& mod, u64 p) {
    Poly r{1};
    r.resize(mod.size() - 1, 0);
    base.resize(mod.size() - 1, 0);
    while (e) {
        if (e & 1) r = poly_mul_mod(r, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        // a mod b
        u64 lead_inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            u64 c = mulmod(a.back(), lead_inv, p);
            if (c) {
                std::size_t off = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[off + i] = (a[off + i] + mulmod(c, (p - b[i]) % p, p)) % p;
            }
            a = poly_trim(std::move(a));
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// f irreducible over F_p iff x^{p^k} = x mod f and gcd(x^{p^i} - x, f) = 1
// for 1 <= i <= k/2.
bool poly_irreducible(const Poly& f, u64 p) {
    const std::size_t k = f.size() - 1;
    Poly x{0, 1};
    Poly xp = x;
    xp.resize(k, 0);
    for (std::size_t i = 1; i <= k; ++i) {
        xp = poly_pow_mod(xp, p, f, p);  // x^{p^i} mod f
        Poly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        diff = poly_trim(std::move(diff));
        if (i == k) {
            if (!diff.empty()) return false;
        } else if (2 * i <= k) {
            Poly g = poly_gcd(diff, f, p);
            if (g.size() != 1) return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_in_range(u64 lo_exclusive, u64 hi_inclusive) {
    std::vector<u64> out;
    for (u64 q = lo_exclusive + 1; q <= hi_inclusive; ++q)
        if (is_prime_u64(q)) out.push_back(q);
    return out;
}

FieldSpec FieldSpec::prime(u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("FieldSpec: modulus " + std::to_string(p) + " is not prime");
    FieldSpec f;
    f.p = p;
    f.k = 1;
    return f;
}

FieldSpec FieldSpec::extension(u64 p, unsigned k) {
    FieldSpec f = prime(p);
    if (k <= 1) return f;
    // guard p^k against overflow
    u64 size = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (size > (u64(1) << 62) / p) throw std::invalid_argument("FieldSpec: p^k does not fit a machine word");
        size *= p;
    }
    std::mt19937_64 rng(p * 1000003ull + k);
    std::uniform_int_distribution<u64> coeff(0, p - 1);
    for (int attempt = 0; attempt < 20000; ++attempt) {
        Poly cand(k + 1, 0);
        cand[k] = 1;
        for (unsigned i = 0; i < k; ++i) cand[i] = coeff(rng);
        if (cand[0] == 0) continue;  // reducible (root 0)
        if (poly_irreducible(cand, p)) {
            f.k = k;
            f.modulus = cand;
            return f;
        }
    }
    throw std::runtime_error("FieldSpec: no irreducible polynomial found");
}

u64 FieldSpec::size() const {
    u64 s = 1;
    for (unsigned i = 0; i < k; ++i) s *= p;
    return s;
}

u64 FieldSpec::add(u64 a, u64 b) const {
    if (k == 1) {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 out = 0, mult = 1;
    for (unsigned i = 0; i < k; ++i) {
        u64 da = a % p, db = b % p;
        a /= p;
        b /= p;
        u64 s = da + db;
        if (s >= p) s -= p;
        out += s * mult;
        mult *= p;
    }
    return out;
}

u64 FieldSpec::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 FieldSpec::neg(u64 a) const {
    if (k == 1) return a == 0 ? 0 : p - a;
    u64 out = 0, mult = 1;
    for (unsigned i = 0; i < k; ++i) {
        u64 da = a % p;
        a /= p;
        out += (da == 0 ? 0 : p - da) * mult;
        mult *= p;
    }
    return out;
}

u64 FieldSpec::mul(u64 a, u64 b) const {
    if (k == 1) return mulmod(a, b, p);
    Poly pa(k), pb(k);
    for (unsigned i = 0; i < k; ++i) {
        pa[i] = a % p;
        a /= p;
        pb[i] = b % p;
        b /= p;
    }
    Poly pr = poly_mul_mod(pa, pb, modulus, p);
    u64 out = 0, mult = 1;
    for (unsigned i = 0; i < k; ++i) {
        out += (i < pr.size() ? pr[i] : 0) * mult;
        mult *= p;
    }
    return out;
}

u64 FieldSpec::inv(u64 a) const {
    if (a == 0) throw std::domain_error("FieldSpec::inv(0)");
    // Fermat: a^{q-2}
    return pow(a, size() - 2);
}

u64 FieldSpec::pow(u64 a, u64 e) const {
    if (k == 1) return powmod(a, e, p);
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string FieldSpec::describe() const {
    std::string s = "F_" + std::to_string(p);
    if (k > 1) s += "^" + std::to_string(k);
    return s;
}

}  // namespace acgi
