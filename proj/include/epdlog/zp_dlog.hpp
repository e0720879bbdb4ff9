#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "epdlog/modmath.hpp"

namespace epdlog {

// Prime components of a group order below this size are solved with
// baby-step giant-step; larger ones with Pollard rho.
inline constexpr std::uint64_t kBsgsComponentLimit = std::uint64_t{1} << 20;

// A discrete-log solver for a cyclic subgroup of (Z/mZ)^*, plus a counter
// of how many times it was asked. The counter is safe to bump from several
// threads, though each attack normally owns its own oracle.
class DlogOracle {
public:
    // (g, h, modulus, order of g) -> x in [0, order) with g^x = h.
    using Solver = std::function<Natural(const Natural&, const Natural&, const Natural&, const Natural&)>;

    DlogOracle(std::string name, Solver solver) : name_(std::move(name)), solver_(std::move(solver)) {}

    DlogOracle(const DlogOracle&) = delete;
    DlogOracle& operator=(const DlogOracle&) = delete;

    Natural solve(const Natural& g, const Natural& h, const Natural& modulus, const Natural& order_g) {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return solver_(g, h, modulus, order_g);
    }

    std::uint64_t call_count() const { return calls_.load(std::memory_order_relaxed); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    Solver solver_;
    std::atomic<std::uint64_t> calls_{0};
};

enum class OracleKind { bsgs, pohlig_hellman, rho };

std::optional<OracleKind> parse_oracle_kind(std::string_view text);

// Builds an oracle of the given kind. `group_factorization`, when given,
// must factor a multiple of every order the oracle will see (p - 1 for
// Z_p^*); it lets Pohlig-Hellman skip refactoring the order. `seed`
// drives Pollard rho's random walks.
DlogOracle make_oracle(OracleKind kind, std::optional<Factorization> group_factorization = std::nullopt,
                       std::uint64_t seed = 0);

// Multiplicative order of a modulo p, by stripping prime factors from p - 1.
Natural element_order(const Natural& a, const Natural& p, const Factorization& fact_of_group_order);

// Order of a unit modulo any modulus, given a factorization of a multiple
// of that order.
Natural unit_order(const Natural& a, const Natural& modulus, const Factorization& multiple_of_order);

// Baby-step giant-step. Works for any modulus in which g is a unit.
Natural dlog_bsgs(const Natural& g, const Natural& h, const Natural& modulus, const Natural& order_g);

// Pollard rho with a Teske r-adding walk and Brent cycle detection. g must
// have prime order.
Natural dlog_pollard_rho(const Natural& g, const Natural& h, const Natural& modulus, const Natural& prime_order,
                         Rng& rng);

struct GroupElementOrder {
    Natural element;
    Natural modulus;
    Natural order;
};

enum class ComponentSolver { by_size, always_bsgs, always_rho };

// Pohlig-Hellman over `fact`, which must factor order_info.order.
Natural dlog_pohlig_hellman(const Natural& g, const Natural& h, const Natural& p, const GroupElementOrder& order_info,
                            const Factorization& fact, ComponentSolver components = ComponentSolver::by_size,
                            std::uint64_t seed = 0);

// Log of h to base g in Z_p^*. Computes ord(g), calls the oracle exactly
// once and verifies the answer. `fact_p_minus_1` is computed when absent.
Natural dlog_zp(const Natural& g, const Natural& h, const Natural& p, DlogOracle& oracle,
                const std::optional<Factorization>& fact_p_minus_1 = std::nullopt);

// One coordinate of a product-of-groups log: a unit g of (Z/mZ)^* with
// known order and target h.
struct UnitComponent {
    Natural g;
    Natural h;
    Natural modulus;
    Natural order;
};

// Log in a product of two unit groups: solve each coordinate, then glue
// the residues with crt_pair.
Natural dlog_product_pair(const UnitComponent& first, const UnitComponent& second,
                          const DlogOracle::Solver& solver);

// Log of h to base g in Z_{p^2}^*, through the Euler isomorphism: the
// additive coordinate is a single modular division and the multiplicative
// coordinate one oracle call.
Natural dlog_zp2(const Natural& g, const Natural& h, const Natural& p, DlogOracle& oracle);

// ord(g) = log_g(g^{-1}) + 1.
Natural order_via_dlog(const Natural& g, const Natural& p, DlogOracle& oracle);

// A solver for the weak log problem: any x~ with g^x~ = h.
using Dlp2Solver = std::function<Natural(const Natural& g, const Natural& h, const Natural& p)>;

// Recovers ord(g) from a weak-log solver: draws r uniform on [K, K^2],
// asks for r~ with g^r~ = g^r, and returns gcd of all |r - r~|.
// Throws Indeterminate if every difference is zero.
Natural order_via_dlp2_oracle(const Natural& g, const Natural& p, const Natural& bound_k, const Dlp2Solver& dlp2,
                              unsigned trials, Rng& rng);

}  // namespace epdlog
