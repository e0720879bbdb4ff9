#include "epdlog/bergman.hpp"

#include "epdlog/errors.hpp"
#include "epdlog/zp_dlog.hpp"

namespace epdlog {
namespace {

Natural reduce(const Natural& x, const Natural& m) {
    Natural r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

void require_same_ring(const Natural& p1, const Natural& p2, const char* what) {
    if (p1 != p2) throw InvalidInput(std::string(what) + ": operands live in different rings");
}

void check_coefficient(const Natural& p, const Natural& x, const char* name) {
    if (x < 0 || x >= p) {
        throw InvalidInput(std::string("coefficient ") + name + " = " + x.get_str() + " is outside [0, " +
                           p.get_str() + ")");
    }
}

}  // namespace

EpElement EpElement::make(const Natural& p, const Natural& a, const Natural& b, const Natural& c, const Natural& u,
                          const Natural& v) {
    if (p < 2) throw InvalidInput("E_p needs p >= 2");
    check_coefficient(p, a, "a");
    check_coefficient(p, b, "b");
    check_coefficient(p, c, "c");
    check_coefficient(p, u, "u");
    check_coefficient(p, v, "v");
    return EpElement{p, a, b, c, u, v};
}

EpElement EpElement::from_matrix(const Natural& p, const Natural& m11, const Natural& m12, const Natural& m21,
                                 const Natural& m22) {
    if (p < 2) throw InvalidInput("E_p needs p >= 2");
    const Natural p2 = p * p;
    const Natural r21 = reduce(m21, p2);
    if (r21 % p != 0) throw InvalidInput("entry (2,1) must be a multiple of p");
    const Natural r22 = reduce(m22, p2);
    return EpElement{p, reduce(m11, p), reduce(m12, p), Natural(r21 / p), Natural(r22 / p), Natural(r22 % p)};
}

EpElement EpElement::identity(const Natural& p) { return make(p, 1, 0, 0, 0, 1); }

EpElement EpElement::zero(const Natural& p) { return make(p, 0, 0, 0, 0, 0); }

EbarElement EbarElement::make(const Natural& p, const Natural& a, const Natural& b, const Natural& c,
                              const Natural& v) {
    if (p < 2) throw InvalidInput("E-bar_p needs p >= 2");
    check_coefficient(p, a, "a");
    check_coefficient(p, b, "b");
    check_coefficient(p, c, "c");
    check_coefficient(p, v, "v");
    return EbarElement{p, a, b, c, v};
}

EbarElement EbarElement::identity(const Natural& p) { return make(p, 1, 0, 0, 1); }

EpElement ep_mul(const EpElement& g1, const EpElement& g2) {
    require_same_ring(g1.p, g2.p, "ep_mul");
    const Natural& p = g1.p;
    const Natural w1 = g1.lower_right();
    const Natural w2 = g2.lower_right();
    // Integer product of the two matrices, then row-wise reduction.
    return EpElement::from_matrix(p, g1.a * g2.a + g1.b * g2.c * p, g1.a * g2.b + g1.b * w2,
                                  g1.c * p * g2.a + w1 * g2.c * p, g1.c * p * g2.b + w1 * w2);
}

EpElement ep_add(const EpElement& g1, const EpElement& g2) {
    require_same_ring(g1.p, g2.p, "ep_add");
    const Natural& p = g1.p;
    return EpElement::from_matrix(p, g1.a + g2.a, g1.b + g2.b, (g1.c + g2.c) * p,
                                  g1.lower_right() + g2.lower_right());
}

EpElement ep_pow(const EpElement& g, const Natural& n) {
    if (n < 0) throw InvalidInput("ep_pow: negative exponent");
    EpElement result = EpElement::identity(g.p);
    EpElement base = g;
    const std::size_t bits = bit_length(n);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(n.get_mpz_t(), i)) result = ep_mul(result, base);
        if (i + 1 < bits) base = ep_mul(base, base);
    }
    return result;
}

bool is_invertible(const EpElement& g) { return g.a != 0 && g.v != 0; }

bool is_invertible(const EbarElement& g) { return g.a != 0 && g.v != 0; }

EpElement ep_inverse(const EpElement& g) {
    if (!is_invertible(g)) throw NotInvertible("ep_inverse: a and v must both be nonzero");
    const Natural& p = g.p;
    const Natural a_inv = mod_inv(g.a, p);
    const Natural v_inv = mod_inv(g.v, p);
    const Natural v_inv2 = v_inv * v_inv;
    // v * v^-1 = 1 + carry*p over the integers; the carry feeds the u term.
    const Natural carry = g.v * v_inv / p;
    EpElement inv{p,
                  a_inv,
                  reduce(-a_inv * g.b * v_inv, p),
                  reduce(-v_inv * g.c * a_inv, p),
                  reduce(g.c * a_inv * g.b * v_inv2 - g.u * v_inv2 - carry * v_inv, p),
                  v_inv};
    const EpElement one = EpElement::identity(p);
    if (ep_mul(g, inv) == one && ep_mul(inv, g) == one) return inv;
    const Natural order = ep_order(g, factorize(Natural(p - 1)));
    return ep_pow(g, Natural(order - 1));
}

EbarElement bar(const EpElement& g) { return EbarElement{g.p, g.a, g.b, g.c, g.v}; }

EbarElement ebar_mul(const EbarElement& g1, const EbarElement& g2) {
    require_same_ring(g1.p, g2.p, "ebar_mul");
    const Natural& p = g1.p;
    return EbarElement{p, reduce(g1.a * g2.a, p), reduce(g1.a * g2.b + g1.b * g2.v, p),
                       reduce(g1.c * g2.a + g1.v * g2.c, p), reduce(g1.v * g2.v, p)};
}

EbarElement ebar_inverse(const EbarElement& g) {
    if (!is_invertible(g)) throw NotInvertible("ebar_inverse: a and v must both be nonzero");
    return bar(ep_inverse(EpElement{g.p, g.a, g.b, g.c, 0, g.v}));
}

Natural d_coefficient(const Natural& a, const Natural& v, const Natural& x, const Natural& p) {
    if (x < 0) throw InvalidInput("d_coefficient: negative exponent");
    if (reduce(a, p) == 0 || reduce(v, p) == 0) throw NotInvertible("d_coefficient: a and v must be units");
    if (x == 0) return 0;
    if (reduce(a - v, p) != 0) {
        return reduce((mod_pow(a, x, p) - mod_pow(v, x, p)) * mod_inv(reduce(a - v, p), p), p);
    }
    return reduce(x, p) * mod_pow(a, Natural(x - 1), p) % p;
}

EbarElement ebar_pow_closed(const EbarElement& g, const Natural& x) {
    if (!is_invertible(g)) throw NotInvertible("ebar_pow_closed: a and v must both be nonzero");
    const Natural& p = g.p;
    const Natural d = d_coefficient(g.a, g.v, x, p);
    return EbarElement{p, mod_pow(g.a, x, p), g.b * d % p, g.c * d % p, mod_pow(g.v, x, p)};
}

Natural ebar_order(const EbarElement& g, const Factorization& fact_p_minus_1) {
    if (!is_invertible(g)) throw NotInvertible("ebar_order: a and v must both be nonzero");
    const Natural order_a = element_order(g.a, g.p, fact_p_minus_1);
    if (g.a == g.v && (g.b != 0 || g.c != 0)) return g.p * order_a;
    const Natural order_v = element_order(g.v, g.p, fact_p_minus_1);
    return gcd_lcm(order_a, order_v).second;
}

Natural ep_order(const EpElement& g, const Factorization& fact_p_minus_1) {
    if (!is_invertible(g)) throw NotInvertible("ep_order: a and v must both be nonzero");
    const Natural n = ebar_order(bar(g), fact_p_minus_1);
    const EpElement f = ep_pow(g, n);
    if (f.a != 1 || f.b != 0 || f.c != 0 || f.v != 1) {
        throw Error("ep_order: g^ord(bar g) left the kernel of bar");
    }
    return f.u == 0 ? n : Natural(g.p * n);
}

EpElement sample_invertible(const Natural& p, Rng& rng) {
    if (p < 2) throw InvalidInput("sample_invertible: p must be prime");
    Natural a = rng.between(1, Natural(p - 1));
    Natural b = rng.below(p);
    Natural c = rng.below(p);
    Natural u = rng.below(p);
    Natural v = rng.between(1, Natural(p - 1));
    return EpElement{p, std::move(a), std::move(b), std::move(c), std::move(u), std::move(v)};
}

}  // namespace epdlog
