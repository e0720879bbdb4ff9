#include "epdlog/modmath.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

#include "epdlog/errors.hpp"

namespace epdlog {
namespace {

constexpr unsigned kTrialDivisionBound = 10000;

const std::vector<unsigned>& small_primes(unsigned bound) {
    // Only two bounds are ever requested; cache each sieve.
    static std::map<unsigned, std::vector<unsigned>> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(bound);
    if (it != cache.end()) return it->second;
    std::vector<bool> composite(bound, false);
    std::vector<unsigned> primes;
    for (unsigned i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (unsigned long long j = 1ULL * i * i; j < bound; j += i) composite[j] = true;
    }
    return cache.emplace(bound, std::move(primes)).first->second;
}

bool miller_rabin_round(const Natural& n, const Natural& n_minus_1, const Natural& d, unsigned s,
                        const Natural& witness) {
    Natural x = mod_pow(witness, d, n);
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

Natural brent_split(const Natural& n, Rng& rng) {
    const Natural one = 1;
    constexpr unsigned long kBatch = 128;
    for (;;) {
        Natural c = rng.between(1, n - 1);
        Natural y = rng.below(n);
        Natural x, ys, q = 1, g = 1;
        auto f = [&](const Natural& t) -> Natural { return (t * t + c) % n; };
        unsigned long r = 1;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                unsigned long steps = std::min(kBatch, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += kBatch;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            // The batched product hit zero; step back one at a time.
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(const Natural& n, std::map<Natural, unsigned>& out, Rng& rng) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Natural d = brent_split(n, rng);
    split_into(d, out, rng);
    split_into(Natural(n / d), out, rng);
}

}  // namespace

Natural Rng::below(const Natural& bound) {
    if (bound <= 0) throw InvalidInput("Rng::below: bound must be positive");
    const std::size_t bits = bit_length(bound);
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    Natural out;
    for (;;) {
        for (auto& w : buf) w = engine_();
        if (bits % 64 != 0) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
        mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        if (out < bound) return out;
    }
}

Natural Rng::between(const Natural& lo, const Natural& hi) {
    if (hi < lo) throw InvalidInput("Rng::between: empty range");
    return lo + below(Natural(hi - lo + 1));
}

Natural Factorization::product() const {
    Natural out = 1;
    for (const auto& f : factors) {
        Natural pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        out *= pe;
    }
    return out;
}

std::size_t bit_length(const Natural& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& m) {
    if (m == 0) throw InvalidInput("mod_pow: modulus must be nonzero");
    if (exp < 0) throw InvalidInput("mod_pow: negative exponent");
    Natural out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return out;
}

Natural mod_inv(const Natural& a, const Natural& m) {
    if (m < 2) throw InvalidInput("mod_inv: modulus must be at least 2");
    Natural out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw NotInvertible("mod_inv: " + a.get_str() + " is not a unit mod " + m.get_str());
    }
    return out;
}

std::pair<Natural, Natural> gcd_lcm(const Natural& a, const Natural& b) {
    if (a == 0 && b == 0) throw InvalidInput("gcd_lcm: both arguments are zero");
    Natural g = gcd(a, b);
    return {g, Natural(a / g * b)};
}

CrtResidue crt_pair(const CrtResidue& r1, const CrtResidue& r2) {
    if (r1.modulus < 1 || r2.modulus < 1) throw InvalidInput("crt_pair: modulus must be positive");
    auto [g, l] = gcd_lcm(r1.modulus, r2.modulus);
    Natural diff = r2.residue - r1.residue;
    if (diff % g != 0) {
        throw InconsistentResidues("crt_pair: " + r1.residue.get_str() + " mod " + r1.modulus.get_str() +
                                   " and " + r2.residue.get_str() + " mod " + r2.modulus.get_str() +
                                   " disagree");
    }
    const Natural m1 = r1.modulus / g;
    const Natural m2 = r2.modulus / g;
    Natural t = 0;
    if (m2 > 1) {
        t = (diff / g) % m2 * mod_inv(m1 % m2, m2) % m2;
        if (t < 0) t += m2;
    }
    Natural r = (r1.residue + r1.modulus * t) % l;
    if (r < 0) r += l;
    return {r, l};
}

bool is_prime(const Natural& n, unsigned rounds) {
    if (n < 2) return false;
    static constexpr std::array<unsigned, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned w : kWitnesses) {
        if (n == w) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    }
    const Natural n_minus_1 = n - 1;
    Natural d = n_minus_1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    if (bit_length(n) <= 64) {
        for (unsigned w : kWitnesses) {
            if (!miller_rabin_round(n, n_minus_1, d, s, Natural(w))) return false;
        }
        return true;
    }
    Rng rng(mpz_get_ui(n.get_mpz_t()));
    for (unsigned i = 0; i < rounds; ++i) {
        if (!miller_rabin_round(n, n_minus_1, d, s, rng.between(2, Natural(n - 2)))) return false;
    }
    return true;
}

Factorization factorize(const Natural& n) {
    if (n < 1) throw InvalidInput("factorize: n must be positive");
    Factorization out;
    out.n = n;
    Natural rest = n;
    for (unsigned q : small_primes(kTrialDivisionBound)) {
        if (Natural(q) * q > rest) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
            ++e;
        }
        if (e > 0) out.factors.push_back({Natural(q), e});
    }
    if (rest == 1) return out;
    std::map<Natural, unsigned> large;
    Rng rng(mpz_get_ui(rest.get_mpz_t()) ^ 0x9e3779b97f4a7c15ULL);
    split_into(rest, large, rng);
    for (auto& [q, e] : large) {
        // rest may still carry a prime below the bound when the loop broke early.
        auto it = std::find_if(out.factors.begin(), out.factors.end(),
                               [&](const PrimePower& f) { return f.prime == q; });
        if (it != out.factors.end()) {
            it->exponent += e;
        } else {
            out.factors.push_back({q, e});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
    return out;
}

Natural euler_iso(const Natural& a, const Natural& b, const Natural& p) {
    if (p < 2) throw InvalidInput("euler_iso: p must be prime");
    if (a < 0 || a >= p) throw InvalidInput("euler_iso: a must lie in Z_p");
    if (b <= 0 || b >= p) throw InvalidInput("euler_iso: b must lie in Z_p^*");
    const Natural p2 = p * p;
    return (1 + a * p) * mod_pow(b, p, p2) % p2;
}

std::pair<Natural, Natural> euler_iso_inv(const Natural& c, const Natural& p) {
    if (p < 2) throw InvalidInput("euler_iso_inv: p must be prime");
    const Natural p2 = p * p;
    if (c < 0 || c >= p2) throw InvalidInput("euler_iso_inv: c must be reduced mod p^2");
    if (c % p == 0) throw InvalidInput("euler_iso_inv: c is not a unit mod p^2");
    Natural b = c % p;
    Natural bp = mod_pow(b, p, p2);
    Natural one_plus_ap = c * mod_inv(bp, p2) % p2;
    // 1 + a*p < p^2, so the lift is exact.
    Natural a = (one_plus_ap - 1) / p;
    return {a, b};
}

Natural random_prime(unsigned bits, Rng& rng) {
    if (bits < 2) throw InvalidInput("random_prime: bits must be at least 2");
    Natural lo = Natural(1) << (bits - 1);
    Natural hi = (Natural(1) << bits) - 1;
    for (;;) {
        Natural candidate = rng.between(lo, hi);
        if (is_prime(candidate)) return candidate;
    }
}

SmoothPrime random_smooth_prime(unsigned bits, unsigned smoothness_bound, Rng& rng) {
    if (bits < 8) throw InvalidInput("random_smooth_prime: bits must be at least 8");
    if (smoothness_bound < 4) throw InvalidInput("random_smooth_prime: smoothness bound too small");
    const auto& primes = small_primes(smoothness_bound);
    // primes[0] == 2 is the forced factor; draw the rest from odd primes.
    for (;;) {
        std::map<Natural, unsigned> exps{{Natural(2), 1}};
        Natural m = 2;
        while (bit_length(m) < bits - 1) {
            const std::size_t gap = bits - bit_length(m);
            std::size_t limit = primes.size();
            if (gap < 32) {
                const unsigned long cap = 1UL << (gap + 1);
                limit = std::upper_bound(primes.begin(), primes.end(), cap) - primes.begin();
            }
            if (limit <= 1) break;
            unsigned q = primes[1 + rng.next() % (limit - 1)];
            m *= q;
            ++exps[Natural(q)];
        }
        Natural p = m + 1;
        if (bit_length(p) != bits || !is_prime(p)) continue;
        SmoothPrime out;
        out.p = p;
        out.p_minus_1.n = m;
        for (auto& [q, e] : exps) out.p_minus_1.factors.push_back({q, e});
        return out;
    }
}

}  // namespace epdlog
