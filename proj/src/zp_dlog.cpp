#include "epdlog/zp_dlog.hpp"

#include <array>
#include <unordered_map>
#include <vector>

#include "epdlog/errors.hpp"

namespace epdlog {
namespace {

// Baby-step tables beyond this many entries are refused.
constexpr unsigned long kMaxBabySteps = 1UL << 26;
constexpr unsigned kRhoPartitions = 32;
constexpr unsigned kRhoRestarts = 64;
// Below this a prime order is enumerated directly; rho walks on tiny groups
// collide before they mix.
constexpr unsigned long kRhoMinOrder = 64;

std::uint64_t low_word(const Natural& n) { return mpz_get_ui(n.get_mpz_t()); }

std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

Natural dlog_enumerate(const Natural& g, const Natural& h, const Natural& modulus, const Natural& order) {
    Natural e = 1;
    const Natural target = h % modulus;
    for (Natural x = 0; x < order; ++x) {
        if (e == target) return x;
        e = e * g % modulus;
    }
    throw NoSolution("dlog: " + h.get_str() + " is not a power of " + g.get_str());
}

Natural solve_prime_order(const Natural& g, const Natural& h, const Natural& modulus, const Natural& q,
                          ComponentSolver components, Rng& rng) {
    const bool small = q < kBsgsComponentLimit;
    switch (components) {
        case ComponentSolver::always_bsgs:
            return dlog_bsgs(g, h, modulus, q);
        case ComponentSolver::always_rho:
            return dlog_pollard_rho(g, h, modulus, q, rng);
        case ComponentSolver::by_size:
            break;
    }
    return small ? dlog_bsgs(g, h, modulus, q) : dlog_pollard_rho(g, h, modulus, q, rng);
}

// Factorization of `order`, which divides the number factored by `group`.
Factorization restrict_factorization(const Natural& order, const Factorization& group) {
    Factorization out;
    out.n = order;
    Natural rest = order;
    for (const auto& f : group.factors) {
        unsigned e = 0;
        while (e < f.exponent && rest % f.prime == 0) {
            rest /= f.prime;
            ++e;
        }
        if (e > 0) out.factors.push_back({f.prime, e});
    }
    if (rest != 1) return factorize(order);
    return out;
}

struct RhoPoint {
    Natural y;
    Natural a;
    Natural b;
};

}  // namespace

std::optional<OracleKind> parse_oracle_kind(std::string_view text) {
    if (text == "bsgs") return OracleKind::bsgs;
    if (text == "ph") return OracleKind::pohlig_hellman;
    if (text == "rho") return OracleKind::rho;
    return std::nullopt;
}

DlogOracle make_oracle(OracleKind kind, std::optional<Factorization> group_factorization, std::uint64_t seed) {
    switch (kind) {
        case OracleKind::bsgs:
            return DlogOracle("bsgs", [](const Natural& g, const Natural& h, const Natural& m, const Natural& n) {
                return dlog_bsgs(g, h, m, n);
            });
        case OracleKind::pohlig_hellman:
        case OracleKind::rho: {
            const ComponentSolver components =
                kind == OracleKind::rho ? ComponentSolver::always_rho : ComponentSolver::by_size;
            return DlogOracle(kind == OracleKind::rho ? "rho" : "ph",
                              [group = std::move(group_factorization), components, seed](
                                  const Natural& g, const Natural& h, const Natural& m, const Natural& n) {
                                  Factorization fact = group ? restrict_factorization(n, *group) : factorize(n);
                                  return dlog_pohlig_hellman(g, h, m, {g, m, n}, fact, components, seed);
                              });
        }
    }
    throw InvalidInput("make_oracle: unknown oracle kind");
}

Natural unit_order(const Natural& a, const Natural& modulus, const Factorization& multiple_of_order) {
    if (modulus < 2) throw InvalidInput("order: modulus must be at least 2");
    Natural r = a % modulus;
    if (r < 0) r += modulus;
    if (gcd(r, modulus) != 1) throw NotInvertible("order: " + a.get_str() + " is not a unit");
    Natural order = multiple_of_order.n;
    if (mod_pow(r, order, modulus) != 1) {
        throw InvalidInput("order: factored number is not a multiple of the order of " + a.get_str());
    }
    for (const auto& f : multiple_of_order.factors) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            Natural reduced = order / f.prime;
            if (mod_pow(r, reduced, modulus) != 1) break;
            order = reduced;
        }
    }
    return order;
}

Natural element_order(const Natural& a, const Natural& p, const Factorization& fact_of_group_order) {
    if (fact_of_group_order.n != p - 1 || fact_of_group_order.product() != fact_of_group_order.n) {
        throw InvalidInput("element_order: factorization does not describe p - 1");
    }
    if (a % p == 0) throw NotInvertible("element_order: 0 is not a unit");
    return unit_order(a, p, fact_of_group_order);
}

Natural dlog_bsgs(const Natural& g, const Natural& h, const Natural& modulus, const Natural& order_g) {
    if (order_g < 1) throw InvalidInput("dlog_bsgs: order must be positive");
    Natural root;
    mpz_sqrt(root.get_mpz_t(), order_g.get_mpz_t());
    if (root * root < order_g) ++root;
    if (root > kMaxBabySteps) throw InvalidInput("dlog_bsgs: order too large for a baby-step table");
    const unsigned long m = root.get_ui();
    const Natural target = h % modulus;

    std::vector<Natural> baby;
    baby.reserve(m);
    std::unordered_multimap<std::uint64_t, unsigned long> table;
    table.reserve(m);
    Natural e = 1;
    for (unsigned long j = 0; j < m; ++j) {
        if (e == target) return Natural(j) % order_g;
        baby.push_back(e);
        table.emplace(low_word(e), j);
        e = e * g % modulus;
    }
    // e == g^m here.
    const Natural giant = mod_inv(e, modulus);
    Natural gamma = target;
    for (unsigned long i = 0; i <= m; ++i) {
        auto [lo, hi] = table.equal_range(low_word(gamma));
        for (auto it = lo; it != hi; ++it) {
            if (baby[it->second] == gamma) return (Natural(i) * m + it->second) % order_g;
        }
        gamma = gamma * giant % modulus;
    }
    throw NoSolution("dlog_bsgs: " + h.get_str() + " is not a power of " + g.get_str());
}

Natural dlog_pollard_rho(const Natural& g, const Natural& h, const Natural& modulus, const Natural& prime_order,
                         Rng& rng) {
    const Natural& n = prime_order;
    if (n < 2) {
        if (h % modulus == 1) return 0;
        throw NoSolution("dlog_pollard_rho: " + h.get_str() + " is not a power of " + g.get_str());
    }
    if (h % modulus == 1) return 0;
    if (n < kRhoMinOrder) return dlog_enumerate(g, h, modulus, n);
    if (mod_pow(h, n, modulus) != 1) {
        throw NoSolution("dlog_pollard_rho: " + h.get_str() + " is not in the order-" + n.get_str() + " subgroup");
    }

    for (unsigned attempt = 0; attempt < kRhoRestarts; ++attempt) {
        std::array<RhoPoint, kRhoPartitions> steps;
        for (auto& s : steps) {
            s.a = rng.below(n);
            s.b = rng.below(n);
            s.y = mod_pow(g, s.a, modulus) * mod_pow(h, s.b, modulus) % modulus;
        }
        auto advance = [&](RhoPoint& pt) {
            const auto& s = steps[mix(low_word(pt.y)) % kRhoPartitions];
            pt.y = pt.y * s.y % modulus;
            pt.a += s.a;
            if (pt.a >= n) pt.a -= n;
            pt.b += s.b;
            if (pt.b >= n) pt.b -= n;
        };

        RhoPoint hare;
        hare.a = rng.below(n);
        hare.b = rng.below(n);
        hare.y = mod_pow(g, hare.a, modulus) * mod_pow(h, hare.b, modulus) % modulus;
        RhoPoint tortoise = hare;
        unsigned long power = 1;
        unsigned long lambda = 0;
        for (;;) {
            if (lambda == power) {
                tortoise = hare;
                power <<= 1;
                lambda = 0;
            }
            advance(hare);
            ++lambda;
            if (hare.y == tortoise.y) break;
        }
        // a_t + b_t x = a_h + b_h x (mod n)
        Natural db = (tortoise.b - hare.b) % n;
        if (db < 0) db += n;
        if (db == 0) continue;
        Natural da = (hare.a - tortoise.a) % n;
        if (da < 0) da += n;
        Natural x = da * mod_inv(db, n) % n;
        if (mod_pow(g, x, modulus) == h % modulus) return x;
    }
    throw NoSolution("dlog_pollard_rho: no usable collision after restarts");
}

Natural dlog_pohlig_hellman(const Natural& g, const Natural& h, const Natural& p, const GroupElementOrder& order_info,
                            const Factorization& fact, ComponentSolver components, std::uint64_t seed) {
    const Natural& n = order_info.order;
    if (fact.n != n || fact.product() != n) {
        throw InvalidInput("dlog_pohlig_hellman: factorization does not match the order");
    }
    Rng rng(mix(seed ^ mix(low_word(g)) ^ (mix(low_word(h)) << 1)));
    CrtResidue acc{0, 1};
    for (const auto& f : fact.factors) {
        Natural qe;
        mpz_pow_ui(qe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        const Natural cofactor = n / qe;
        const Natural gi = mod_pow(g, cofactor, p);
        const Natural hi = mod_pow(h, cofactor, p);
        Natural top;
        mpz_pow_ui(top.get_mpz_t(), f.prime.get_mpz_t(), f.exponent - 1);
        const Natural gamma = mod_pow(gi, top, p);
        const Natural gi_inv = mod_inv(gi, p);

        // Lift x mod q^e one base-q digit at a time.
        Natural x = 0;
        Natural qk = 1;
        for (unsigned k = 0; k < f.exponent; ++k) {
            Natural shift;
            mpz_pow_ui(shift.get_mpz_t(), f.prime.get_mpz_t(), f.exponent - 1 - k);
            const Natural hk = mod_pow(mod_pow(gi_inv, x, p) * hi % p, shift, p);
            const Natural digit = solve_prime_order(gamma, hk, p, f.prime, components, rng);
            x += digit * qk;
            qk *= f.prime;
        }
        acc = crt_pair(acc, {x % qe, qe});
    }
    return acc.residue;
}

Natural dlog_zp(const Natural& g, const Natural& h, const Natural& p, DlogOracle& oracle,
                const std::optional<Factorization>& fact_p_minus_1) {
    if (g < 1 || g >= p || h < 1 || h >= p) throw InvalidInput("dlog_zp: g and h must lie in [1, p)");
    const Factorization fact = fact_p_minus_1 ? *fact_p_minus_1 : factorize(Natural(p - 1));
    const Natural order = element_order(g, p, fact);
    Natural x = oracle.solve(g, h, p, order);
    if (x < 0 || x >= order || mod_pow(g, x, p) != h) {
        throw NoSolution("dlog_zp: " + h.get_str() + " is not a power of " + g.get_str() + " mod " + p.get_str());
    }
    return x;
}

Natural dlog_product_pair(const UnitComponent& first, const UnitComponent& second, const DlogOracle::Solver& solver) {
    const Natural x1 = solver(first.g, first.h, first.modulus, first.order);
    const Natural x2 = solver(second.g, second.h, second.modulus, second.order);
    return crt_pair({x1 % first.order, first.order}, {x2 % second.order, second.order}).residue;
}

Natural dlog_zp2(const Natural& g, const Natural& h, const Natural& p, DlogOracle& oracle) {
    const Natural p2 = p * p;
    if (g < 1 || g >= p2 || h < 1 || h >= p2 || g % p == 0 || h % p == 0) {
        throw InvalidInput("dlog_zp2: g and h must be units below p^2");
    }
    const auto [a_g, b_g] = euler_iso_inv(g, p);
    const auto [a_h, b_h] = euler_iso_inv(h, p);

    // Additive coordinate: x * a_g = a_h (mod p).
    CrtResidue additive{0, 1};
    if (a_g != 0) {
        additive = {a_h * mod_inv(a_g, p) % p, p};
    } else if (a_h != 0) {
        throw NoSolution("dlog_zp2: " + h.get_str() + " is not a power of " + g.get_str());
    }

    const Factorization fact = factorize(Natural(p - 1));
    const Natural order_b = element_order(b_g, p, fact);
    const Natural x_b = dlog_zp(b_g, b_h, p, oracle, fact);
    const CrtResidue x = crt_pair(additive, {x_b, order_b});
    if (mod_pow(g, x.residue, p2) != h) {
        throw NoSolution("dlog_zp2: " + h.get_str() + " is not a power of " + g.get_str());
    }
    return x.residue;
}

Natural order_via_dlog(const Natural& g, const Natural& p, DlogOracle& oracle) {
    const Natural inverse = mod_inv(g, p);
    return dlog_zp(g % p, inverse, p, oracle) + 1;
}

Natural order_via_dlp2_oracle(const Natural& g, const Natural& p, const Natural& bound_k, const Dlp2Solver& dlp2,
                              unsigned trials, Rng& rng) {
    if (bound_k < 1) throw InvalidInput("order_via_dlp2_oracle: K must be positive");
    if (trials == 0) throw InvalidInput("order_via_dlp2_oracle: need at least one trial");
    const Natural bound_m = bound_k * bound_k;
    Natural acc = 0;
    for (unsigned i = 0; i < trials; ++i) {
        const Natural r = rng.between(bound_k, bound_m);
        const Natural r_tilde = dlp2(g, mod_pow(g, r, p), p);
        acc = gcd(acc, Natural(abs(r - r_tilde)));
    }
    if (acc == 0) throw Indeterminate("order_via_dlp2_oracle: all differences vanished; retry with more trials");
    return acc;
}

}  // namespace epdlog
