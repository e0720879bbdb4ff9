#pragma once

#include "epdlog/modmath.hpp"

namespace epdlog {

// Element of Bergman's ring E_p, stored as the five coefficients of
//
//     [[ a,   b      ],
//      [ c*p, v + u*p ]]
//
// with every coefficient in [0, p). The first row lives mod p and the
// second mod p^2; keeping coefficients instead of raw matrix entries makes
// that mixed reduction a representation invariant.
struct EpElement {
    Natural p;
    Natural a, b, c, u, v;

    // Validating constructor: throws InvalidInput unless p >= 2 and every
    // coefficient is in [0, p). Primality of p is the caller's business.
    static EpElement make(const Natural& p, const Natural& a, const Natural& b, const Natural& c, const Natural& u,
                          const Natural& v);
    // Reduces raw integer matrix entries by the E_p rules.
    static EpElement from_matrix(const Natural& p, const Natural& m11, const Natural& m12, const Natural& m21,
                                 const Natural& m22);
    static EpElement identity(const Natural& p);
    static EpElement zero(const Natural& p);

    // Entry (2,2) as an integer in [0, p^2).
    Natural lower_right() const { return v + u * p; }

    bool operator==(const EpElement&) const = default;
};

// Element of the companion ring E-bar_p: [[a, b], [c*p, v]], entry (2,1)
// mod p^2 and the rest mod p.
struct EbarElement {
    Natural p;
    Natural a, b, c, v;

    static EbarElement make(const Natural& p, const Natural& a, const Natural& b, const Natural& c, const Natural& v);
    static EbarElement identity(const Natural& p);

    bool operator==(const EbarElement&) const = default;
};

EpElement ep_mul(const EpElement& g1, const EpElement& g2);
EpElement ep_add(const EpElement& g1, const EpElement& g2);

// Square and multiply.
EpElement ep_pow(const EpElement& g, const Natural& n);

// g is a unit iff a != 0 and v != 0.
bool is_invertible(const EpElement& g);
bool is_invertible(const EbarElement& g);

// Closed-form inverse, checked by multiplication. If the check ever fails
// the inverse is recomputed as g^(ord(g) - 1).
EpElement ep_inverse(const EpElement& g);

// The ring homomorphism E_p -> E-bar_p that forgets u.
EbarElement bar(const EpElement& g);

EbarElement ebar_mul(const EbarElement& g1, const EbarElement& g2);
EbarElement ebar_inverse(const EbarElement& g);

// d_x = (a^x - v^x)/(a - v) when a != v, x*a^(x-1) when a == v; d_0 = 0.
// Powers of E-bar_p elements satisfy g^x = [[a^x, b d_x], [c d_x p, v^x]].
Natural d_coefficient(const Natural& a, const Natural& v, const Natural& x, const Natural& p);

// g^x from the closed form above; no repeated multiplication.
EbarElement ebar_pow_closed(const EbarElement& g, const Natural& x);

// ord(g) = p * ord(a) if a == v and (b, c) != (0, 0), else lcm(ord(a), ord(v)).
Natural ebar_order(const EbarElement& g, const Factorization& fact_p_minus_1);

// With N = ord(bar(g)), g^N = [[1, 0], [0, 1 + s p]]; ord(g) is N when s == 0
// and p * N otherwise.
Natural ep_order(const EpElement& g, const Factorization& fact_p_minus_1);

// Uniform over the units of E_p: a, v on [1, p), b, c, u on [0, p).
EpElement sample_invertible(const Natural& p, Rng& rng);

inline EpElement operator*(const EpElement& x, const EpElement& y) { return ep_mul(x, y); }
inline EpElement operator+(const EpElement& x, const EpElement& y) { return ep_add(x, y); }
inline EbarElement operator*(const EbarElement& x, const EbarElement& y) { return ebar_mul(x, y); }

}  // namespace epdlog
