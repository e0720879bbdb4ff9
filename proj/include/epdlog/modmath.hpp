#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace epdlog {

// Arbitrary-precision nonnegative integer. Every integer quantity in the
// library (moduli, exponents, orders, coefficients) uses this type.
using Natural = mpz_class;

// Seeded random source. All randomized routines take one of these
// explicitly so that runs are replayable from a single seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    explicit Rng(std::seed_seq& seq) : engine_(seq) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound). bound must be positive.
    Natural below(const Natural& bound);

    // Uniform on [lo, hi], inclusive.
    Natural between(const Natural& lo, const Natural& hi);

private:
    std::mt19937_64 engine_;
};

struct PrimePower {
    Natural prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

// n together with its prime factorization, primes strictly increasing.
struct Factorization {
    Natural n = 1;
    std::vector<PrimePower> factors;

    Natural product() const;
    bool operator==(const Factorization&) const = default;
};

// residue mod modulus, with residue < modulus and modulus >= 1.
struct CrtResidue {
    Natural residue = 0;
    Natural modulus = 1;

    bool operator==(const CrtResidue&) const = default;
};

std::size_t bit_length(const Natural& n);

// base^exp mod m. Throws InvalidInput when m == 0.
Natural mod_pow(const Natural& base, const Natural& exp, const Natural& m);

// b < m with a*b = 1 (mod m). Throws NotInvertible if gcd(a, m) != 1.
Natural mod_inv(const Natural& a, const Natural& m);

// Pairwise CRT with lcm semantics; moduli need not be coprime.
// Throws InconsistentResidues when r1 and r2 disagree mod gcd(m1, m2).
CrtResidue crt_pair(const CrtResidue& r1, const CrtResidue& r2);

// (gcd, lcm). Throws InvalidInput when a == b == 0.
std::pair<Natural, Natural> gcd_lcm(const Natural& a, const Natural& b);

// Miller-Rabin. Deterministic below 2^64 (fixed witness set); above that,
// `rounds` pseudo-random witnesses, derived from n so the verdict is stable.
bool is_prime(const Natural& n, unsigned rounds = 40);

// Trial division up to 10^4, then Brent's variant of Pollard rho.
Factorization factorize(const Natural& n);

// Phi_p(a, b) = (1 + a*p) * b^p mod p^2, mapping Z_p x Z_p^* onto Z_{p^2}^*.
Natural euler_iso(const Natural& a, const Natural& b, const Natural& p);

// Inverse of euler_iso: returns (a, b) with euler_iso(a, b, p) == c.
std::pair<Natural, Natural> euler_iso_inv(const Natural& c, const Natural& p);

// Uniform-ish random prime with exactly `bits` significant bits.
Natural random_prime(unsigned bits, Rng& rng);

struct SmoothPrime {
    Natural p;
    Factorization p_minus_1;
};

// A prime with exactly `bits` bits whose p - 1 is a product of 2 and primes
// below `smoothness_bound`. Built from its factorization, so p - 1 never has
// to be factored.
SmoothPrime random_smooth_prime(unsigned bits, unsigned smoothness_bound, Rng& rng);

}  // namespace epdlog
