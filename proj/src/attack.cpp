#include "epdlog/attack.hpp"

#include "epdlog/errors.hpp"

namespace epdlog {
namespace {

[[noreturn]] void not_a_power(const char* where) {
    throw NoSolution(std::string(where) + ": h is not a power of g");
}

}  // namespace

Natural ebar_log(const EbarElement& g, const EbarElement& h, DlogOracle& oracle,
                 const Factorization& fact_p_minus_1) {
    if (!is_invertible(g)) throw NotInvertible("ebar_log: g is not invertible");
    if (g.p != h.p) throw InvalidInput("ebar_log: g and h live in different rings");
    if (!is_invertible(h)) not_a_power("ebar_log");
    const Natural& p = g.p;

    const Natural order_a = element_order(g.a, p, fact_p_minus_1);
    const Natural x0 = dlog_zp(g.a, h.a, p, oracle, fact_p_minus_1);

    Natural x;
    if (g.a != g.v || (g.b == 0 && g.c == 0)) {
        const Natural order_v = element_order(g.v, p, fact_p_minus_1);
        const Natural xv = dlog_zp(g.v, h.v, p, oracle, fact_p_minus_1);
        try {
            x = crt_pair({x0, order_a}, {xv, order_v}).residue;
        } catch (const InconsistentResidues&) {
            not_a_power("ebar_log");
        }
    } else {
        // h * g^-x0 = g^(x - x0) = [[1, b d], [c d p, 1]] with d = d_{x-x0}.
        const EbarElement f = ebar_mul(h, ebar_pow_closed(ebar_inverse(g), x0));
        const Natural d = g.c == 0 ? mod_inv(g.b, p) * f.b % p : mod_inv(g.c, p) * f.c % p;
        const Natural delta = d * g.a % p;
        Natural true_delta;
        try {
            true_delta = crt_pair({0, order_a}, {delta, p}).residue;
        } catch (const InconsistentResidues&) {
            not_a_power("ebar_log");
        }
        x = true_delta + x0;
    }

    if (ebar_pow_closed(g, x) != h) not_a_power("ebar_log");
    return x;
}

AttackTranscript ep_log(const EpElement& g, const EpElement& h, DlogOracle& oracle,
                        const Factorization& fact_p_minus_1) {
    if (!is_invertible(g)) throw NotInvertible("ep_log: g is not invertible");
    if (g.p != h.p) throw InvalidInput("ep_log: g and h live in different rings");
    if (!is_invertible(h)) not_a_power("ep_log");
    const Natural& p = g.p;
    const std::uint64_t calls_before = oracle.call_count();

    AttackTranscript t;
    const EbarElement g_bar = bar(g);
    t.ebar_order = ebar_order(g_bar, fact_p_minus_1);
    t.x0 = ebar_log(g_bar, bar(h), oracle, fact_p_minus_1);

    const EpElement f = ep_pow(g, t.ebar_order);
    if (f.a != 1 || f.b != 0 || f.c != 0 || f.v != 1) throw Error("ep_log: g^N is not in the kernel of bar");
    t.s = f.u;
    t.q = 0;
    if (t.s == 0) {
        t.x = t.x0;
    } else {
        // h * g^-x0 = (g^N)^q = [[1, 0], [0, 1 + s q p]].
        const EpElement r = ep_mul(h, ep_pow(ep_inverse(g), t.x0));
        if (r.a != 1 || r.b != 0 || r.c != 0 || r.v != 1) not_a_power("ep_log");
        t.q = mod_inv(t.s, p) * r.u % p;
        t.x = t.ebar_order * t.q + t.x0;
    }
    t.zp_dlog_calls = oracle.call_count() - calls_before;

    if (ep_pow(g, t.x) != h) not_a_power("ep_log");
    return t;
}

Natural brute_force_log(const EpElement& g, const EpElement& h) {
    if (!is_invertible(g)) throw NotInvertible("brute_force_log: g is not invertible");
    const EpElement one = EpElement::identity(g.p);
    EpElement e = one;
    Natural x = 0;
    do {
        if (e == h) return x;
        e = ep_mul(e, g);
        ++x;
    } while (e != one);
    not_a_power("brute_force_log");
}

}  // namespace epdlog
