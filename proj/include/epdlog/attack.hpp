#pragma once

#include <cstdint>

#include "epdlog/bergman.hpp"
#include "epdlog/modmath.hpp"
#include "epdlog/zp_dlog.hpp"

namespace epdlog {

// Intermediate values of one E_p discrete log.
struct AttackTranscript {
    Natural x0;          // x mod ord(bar g)
    Natural ebar_order;  // N = ord(bar g)
    Natural s;           // g^N = [[1, 0], [0, 1 + s p]]
    Natural q;           // (x - x0) / N; zero when s == 0
    std::uint64_t zp_dlog_calls = 0;
    Natural x;           // the answer, in [0, ord(g))
};

// Log of h to base g in E-bar_p, using at most two Z_p logs.
//  - a != v or b = c = 0: log_a and log_v, glued by CRT.
//  - a == v, (b, c) != (0, 0): x0 = log_a(h.a); the off-diagonal of
//    h * g^-x0 yields d_{x-x0}, and d_{x-x0} * a = x - x0 (mod p).
// Throws NoSolution if h is not a power of g.
Natural ebar_log(const EbarElement& g, const EbarElement& h, DlogOracle& oracle, const Factorization& fact_p_minus_1);

// Log of h to base g in E_p. Reduces to ebar_log on the images under bar,
// then recovers the remaining factor-of-p part from g^N = [[1,0],[0,1+sp]]
// with no further Z_p logs. The answer is checked with one ep_pow.
AttackTranscript ep_log(const EpElement& g, const EpElement& h, DlogOracle& oracle,
                        const Factorization& fact_p_minus_1);

// Least x >= 0 with g^x = h, by walking the powers of g.
Natural brute_force_log(const EpElement& g, const EpElement& h);

}  // namespace epdlog
