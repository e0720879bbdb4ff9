#include <map>

#include <gtest/gtest.h>

#include "epdlog/bergman.hpp"
#include "epdlog/errors.hpp"
#include "epdlog/kernels.hpp"
#include "oracles.hpp"

namespace epdlog {
namespace {

EpElement E(unsigned long p, unsigned long a, unsigned long b, unsigned long c, unsigned long u, unsigned long v) {
    return EpElement::make(p, a, b, c, u, v);
}

EbarElement Ebar(unsigned long p, unsigned long a, unsigned long b, unsigned long c, unsigned long v) {
    return EbarElement::make(p, a, b, c, v);
}

oracle::Matrix to_matrix(const EpElement& g) {
    return oracle::from_coefficients(g.p.get_ui(), g.a.get_ui(), g.b.get_ui(), g.c.get_ui(), g.u.get_ui(),
                                     g.v.get_ui());
}

oracle::Matrix to_matrix(const EbarElement& g) {
    const auto p = g.p.get_ui();
    return {p, {g.a.get_ui(), g.b.get_ui(), g.c.get_ui() * p, g.v.get_ui()}};
}

std::vector<EpElement> all_units(unsigned long p) {
    std::vector<EpElement> out;
    const unsigned long n = p * p * p * p * p;
    for (unsigned long i = 0; i < n; ++i) {
        EpElement g = element_at(p, i);
        if (is_invertible(g)) out.push_back(std::move(g));
    }
    return out;
}

std::vector<EbarElement> all_bar_units(unsigned long p) {
    std::vector<EbarElement> out;
    for (unsigned long a = 1; a < p; ++a)
        for (unsigned long b = 0; b < p; ++b)
            for (unsigned long c = 0; c < p; ++c)
                for (unsigned long v = 1; v < p; ++v) out.push_back(Ebar(p, a, b, c, v));
    return out;
}

TEST(EpElement, ConstructionEnforcesCanonicalForm) {
    EXPECT_THROW(E(3, 3, 0, 0, 0, 1), InvalidInput);
    EXPECT_THROW(E(3, 1, 0, 0, 5, 1), InvalidInput);
    EXPECT_THROW(EpElement::make(1, 0, 0, 0, 0, 0), InvalidInput);
    EXPECT_EQ(EpElement::from_matrix(3, 4, 5, 12, 10), E(3, 1, 2, 1, 0, 1));
    EXPECT_THROW(EpElement::from_matrix(3, 1, 0, 4, 1), InvalidInput);
}

TEST(EpMul, Examples) {
    const EpElement g = E(3, 2, 1, 0, 1, 2);
    EXPECT_EQ(g * EpElement::identity(3), g);
    EXPECT_EQ(EpElement::identity(3) * g, g);
    EXPECT_EQ(g * g, E(3, 1, 1, 0, 2, 1));
    EXPECT_EQ(E(3, 1, 1, 0, 0, 2) * E(3, 1, 1, 0, 0, 2), E(3, 1, 0, 0, 1, 1));
    EXPECT_THROW(ep_mul(g, EpElement::identity(5)), InvalidInput);
}

TEST(EpAdd, Examples) {
    const EpElement g = E(3, 2, 1, 0, 1, 2);
    EXPECT_EQ(g + EpElement::zero(3), g);
    EXPECT_EQ(g + g, E(3, 1, 2, 0, 0, 1));
    EXPECT_EQ(E(3, 1, 0, 1, 0, 1) + E(3, 2, 0, 2, 0, 2), E(3, 0, 0, 0, 1, 0));
    EXPECT_THROW(ep_add(g, EpElement::zero(5)), InvalidInput);
}

TEST(EpMul, AgreesWithRawMatrixProductAtSmallPrimes) {
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        Rng rng(p);
        for (int i = 0; i < 20000; ++i) {
            const EpElement x = element_at(p, rng.below(Natural(p * p * p * p * p)).get_ui());
            const EpElement y = element_at(p, rng.below(Natural(p * p * p * p * p)).get_ui());
            const auto expected = oracle::to_coefficients(oracle::multiply(to_matrix(x), to_matrix(y)));
            const EpElement got = x * y;
            ASSERT_EQ(got, E(p, expected[0], expected[1], expected[2], expected[3], expected[4]));
        }
    }
}

TEST(Ring, AssociativityAndDistributivitySpotChecks) {
    for (unsigned long p : {3UL, 5UL, 7UL, 251UL}) {
        Rng rng(1000 + p);
        auto draw = [&] {
            return EpElement{Natural(p), rng.below(p), rng.below(p), rng.below(p), rng.below(p), rng.below(p)};
        };
        for (int i = 0; i < 10000; ++i) {
            const EpElement x = draw(), y = draw(), z = draw();
            ASSERT_EQ((x * y) * z, x * (y * z));
            ASSERT_EQ(x * (y + z), x * y + x * z);
            ASSERT_EQ((x + y) * z, x * z + y * z);
            ASSERT_EQ(x + y, y + x);
        }
    }
}

TEST(EpPow, Examples) {
    const EpElement g = E(3, 2, 1, 0, 1, 2);
    EXPECT_EQ(ep_pow(g, 0), EpElement::identity(3));
    EXPECT_EQ(ep_pow(g, 3), E(3, 2, 0, 0, 2, 2));
    EXPECT_EQ(ep_pow(g, 6), EpElement::identity(3));
}

TEST(EpPow, MatchesIteratedMultiplication) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const EpElement g = sample_invertible(13, rng);
        EpElement e = EpElement::identity(13);
        for (unsigned long n = 0; n < 60; ++n) {
            ASSERT_EQ(ep_pow(g, n), e);
            e = e * g;
        }
    }
}

TEST(IsInvertible, Examples) {
    EXPECT_TRUE(is_invertible(EpElement::identity(3)));
    EXPECT_FALSE(is_invertible(E(3, 0, 1, 1, 1, 1)));
    EXPECT_FALSE(is_invertible(E(3, 1, 1, 1, 1, 0)));
}

TEST(IsInvertible, ExhaustiveCountsExceedTheOneMinusTwoOverPBound) {
    for (unsigned long p : {3UL, 5UL}) {
        const unsigned long total = p * p * p * p * p;
        unsigned long units = 0;
        for (unsigned long i = 0; i < total; ++i) units += is_invertible(element_at(p, i)) ? 1 : 0;
        EXPECT_EQ(units, p * p * p * (p - 1) * (p - 1));
        EXPECT_GT(units * p, (p - 2) * total);  // units / total > 1 - 2/p
    }
}

TEST(EpInverse, Examples) {
    EXPECT_EQ(ep_inverse(EpElement::identity(3)), EpElement::identity(3));
    EXPECT_EQ(ep_inverse(E(3, 2, 1, 0, 1, 2)), E(3, 2, 2, 0, 0, 2));
    EXPECT_EQ(ep_inverse(E(3, 1, 0, 0, 1, 1)), E(3, 1, 0, 0, 2, 1));
    EXPECT_THROW(ep_inverse(E(3, 0, 1, 1, 1, 1)), NotInvertible);
}

TEST(EpInverse, ExhaustiveAtThreeAndRandomAtThirtyTwoBits) {
    for (const EpElement& g : all_units(3)) {
        const EpElement inv = ep_inverse(g);
        ASSERT_EQ(g * inv, EpElement::identity(3));
        ASSERT_EQ(inv * g, EpElement::identity(3));
    }
    Rng rng(32);
    const Natural p = random_prime(32, rng);
    const EpElement one = EpElement::identity(p);
    for (int i = 0; i < 10000; ++i) {
        const EpElement g = sample_invertible(p, rng);
        const EpElement inv = ep_inverse(g);
        ASSERT_EQ(g * inv, one);
        ASSERT_EQ(inv * g, one);
    }
}

TEST(Bar, Examples) {
    EXPECT_EQ(bar(EpElement::identity(3)), EbarElement::identity(3));
    EXPECT_EQ(bar(E(3, 2, 1, 0, 1, 2)), Ebar(3, 2, 1, 0, 2));
}

TEST(Bar, IsMultiplicativeOnAllPairsOfUnitsAtThree) {
    const auto units = all_units(3);
    ASSERT_EQ(units.size(), 108U);
    for (const auto& x : units) {
        for (const auto& y : units) ASSERT_EQ(bar(x * y), bar(x) * bar(y));
    }
}

TEST(Bar, IsAdditiveAndMultiplicativeOnRandomElements) {
    Rng rng(77);
    const Natural p = random_prime(40, rng);
    for (int i = 0; i < 2000; ++i) {
        const EpElement x{p, rng.below(p), rng.below(p), rng.below(p), rng.below(p), rng.below(p)};
        const EpElement y{p, rng.below(p), rng.below(p), rng.below(p), rng.below(p), rng.below(p)};
        ASSERT_EQ(bar(x * y), bar(x) * bar(y));
        const EbarElement sum = bar(x + y);
        ASSERT_EQ(sum.a, (x.a + y.a) % p);
        ASSERT_EQ(sum.v, (x.v + y.v) % p);
    }
}

TEST(EbarMul, Examples) {
    const EbarElement g = Ebar(3, 2, 1, 0, 2);
    EXPECT_EQ(g * EbarElement::identity(3), g);
    EXPECT_EQ(g * g, Ebar(3, 1, 1, 0, 1));
    EXPECT_EQ(Ebar(3, 1, 1, 0, 2) * Ebar(3, 1, 1, 0, 2), Ebar(3, 1, 0, 0, 1));
    EXPECT_THROW(ebar_mul(g, EbarElement::identity(5)), InvalidInput);
}

TEST(EbarMul, AgreesWithRawMatrixProduct) {
    for (const auto& x : all_bar_units(5)) {
        for (const auto& y : {Ebar(5, 2, 3, 4, 1), Ebar(5, 4, 0, 1, 4), Ebar(5, 1, 1, 1, 1)}) {
            const auto m = oracle::bar_multiply(to_matrix(x), to_matrix(y));
            ASSERT_EQ(x * y, Ebar(5, m.m[0], m.m[1], m.m[2] / 5, m.m[3]));
        }
    }
}

TEST(DCoefficient, Examples) {
    EXPECT_EQ(d_coefficient(2, 1, 0, 3), 0);
    EXPECT_EQ(d_coefficient(2, 2, 0, 3), 0);
    EXPECT_EQ(d_coefficient(1, 2, 2, 3), 0);
    EXPECT_EQ(d_coefficient(2, 2, 2, 3), 1);
    EXPECT_THROW(d_coefficient(0, 2, 2, 3), NotInvertible);
}

TEST(EbarPowClosed, Examples) {
    const EbarElement g = Ebar(3, 2, 1, 0, 2);
    EXPECT_EQ(ebar_pow_closed(g, 0), EbarElement::identity(3));
    EXPECT_EQ(ebar_pow_closed(g, 2), Ebar(3, 1, 1, 0, 1));
    EXPECT_EQ(ebar_pow_closed(g, 4), Ebar(3, 1, 2, 0, 1));
    EXPECT_THROW(ebar_pow_closed(Ebar(3, 0, 1, 0, 2), 2), NotInvertible);
}

TEST(EbarPowClosed, EqualsIteratedMultiplication) {
    for (unsigned long p : {3UL, 5UL}) {
        for (const auto& g : all_bar_units(p)) {
            auto e = oracle::identity(p);
            const auto gm = to_matrix(g);
            for (unsigned long x = 0; x <= 2 * p * (p - 1); ++x) {
                ASSERT_EQ(to_matrix(ebar_pow_closed(g, x)), e);
                e = oracle::bar_multiply(e, gm);
            }
        }
    }
}

TEST(EbarPowClosed, HandlesHugeExponents) {
    Rng rng(12);
    const Natural p = random_prime(61, rng);
    const EbarElement g{p, 5, 7, 11, 5};  // a == v branch
    const Natural x("123456789012345678901234567890");
    // g^x * g^y == g^(x+y) through the closed form only.
    EXPECT_EQ(ebar_pow_closed(g, x) * ebar_pow_closed(g, 17), ebar_pow_closed(g, Natural(x + 17)));
    const EbarElement h{p, 5, 7, 11, 6};
    EXPECT_EQ(ebar_pow_closed(h, x) * ebar_pow_closed(h, 17), ebar_pow_closed(h, Natural(x + 17)));
}

TEST(EbarOrder, Examples) {
    EXPECT_EQ(ebar_order(EbarElement::identity(3), factorize(2)), 1);
    EXPECT_EQ(ebar_order(Ebar(3, 2, 1, 0, 2), factorize(2)), 6);
    EXPECT_EQ(ebar_order(Ebar(3, 1, 1, 0, 2), factorize(2)), 2);
    EXPECT_THROW(ebar_order(Ebar(3, 0, 1, 0, 2), factorize(2)), NotInvertible);
}

TEST(EbarOrder, MatchesBruteForceOnEveryUnit) {
    for (unsigned long p : {3UL, 5UL, 7UL}) {
        const Factorization f = factorize(Natural(p - 1));
        for (const auto& g : all_bar_units(p)) {
            ASSERT_EQ(ebar_order(g, f), oracle::bar_matrix_order(to_matrix(g)));
        }
    }
}

TEST(EpOrder, Examples) {
    EXPECT_EQ(ep_order(EpElement::identity(3), factorize(2)), 1);
    EXPECT_EQ(ep_order(E(3, 2, 1, 0, 1, 2), factorize(2)), 6);
    EXPECT_EQ(ep_order(E(3, 1, 0, 0, 1, 1), factorize(2)), 3);
}

TEST(EpOrder, MatchesBruteForce) {
    for (const auto& g : all_units(3)) ASSERT_EQ(ep_order(g, factorize(2)), oracle::matrix_order(to_matrix(g)));
    Rng rng(251);
    const Factorization f = factorize(250);
    const auto divisors = oracle::unit_group_divisors(251);
    for (int i = 0; i < 1000; ++i) {
        const EpElement g = sample_invertible(251, rng);
        ASSERT_EQ(ep_order(g, f), oracle::matrix_order_by_divisors(to_matrix(g), divisors));
    }
}

TEST(SampleInvertible, AlwaysInvertibleAndUniformOverUnitsAtThree) {
    Rng rng(3);
    std::map<std::string, int> counts;
    const int per_cell = 300;
    const int draws = 108 * per_cell;
    for (int i = 0; i < draws; ++i) {
        const EpElement g = sample_invertible(3, rng);
        ASSERT_TRUE(is_invertible(g));
        ++counts[g.a.get_str() + g.b.get_str() + g.c.get_str() + g.u.get_str() + g.v.get_str()];
    }
    ASSERT_EQ(counts.size(), 108U);  // u = 0 included
    double chi2 = 0;
    for (auto& [k, c] : counts) chi2 += double(c - per_cell) * (c - per_cell) / per_cell;
    // 107 degrees of freedom; the 0.999 quantile is about 158.
    EXPECT_LT(chi2, 158.0);
}

TEST(SampleInvertible, DeterministicPerSeed) {
    Rng r1(42), r2(42);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_invertible(1000003, r1), sample_invertible(1000003, r2));
}

}  // namespace
}  // namespace epdlog
