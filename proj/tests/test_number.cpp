#include <doctest.h>

#include "lc/errors.hpp"
#include "lc/number.hpp"
#include "helpers.hpp"

using namespace lc;
using lc::testing::Rng;

namespace {
const LCNumber d = make_dq(1);
const LCNumber one = embed_real(1);
} // namespace

TEST_CASE("embedding the rationals") {
    CHECK(embed_real(0) == LCNumber::zero());
    CHECK(embed_real(5) == LCNumber::make({{Rational(0), Rational(5)}}));
    CHECK(embed_real(make_rational(-3, 2)) ==
          LCNumber::make({{Rational(0), make_rational(-3, 2)}}));
    CHECK(embed_real(7).is_exact());
}

TEST_CASE("rational powers of d") {
    CHECK(make_dq(1) == LCNumber::make({{Rational(1), Rational(1)}}));
    CHECK(make_dq(0) == one);
    LCNumber half = make_dq(make_rational(1, 2));
    CHECK(half == LCNumber::make({{make_rational(1, 2), Rational(1)}}));
    CHECK(mul(half, half) == d);
}

TEST_CASE("addition and cancellation") {
    CHECK(add(add(one, d), sub(one, d)) == embed_real(2));
    LCNumber mixed = add(make_dq(make_rational(1, 2)), d);
    CHECK(mixed.terms().size() == 2);
    CHECK(mixed.terms()[0].exponent == make_rational(1, 2));
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        LCNumber x = lc::testing::rand_number(rng, 8, -3, 6);
        CHECK(add(x, neg(x)) == LCNumber::zero());
    }
}

TEST_CASE("multiplication") {
    CHECK(mul(d, d) == make_dq(2));
    CHECK(mul(add(one, d), sub(one, d)) == sub(one, make_dq(2)));
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        LCNumber x = lc::testing::rand_number(rng, 8, -3, 6);
        CHECK(mul(x, one) == x);
    }
}

TEST_CASE("order of magnitude") {
    CHECK(lambda(make_dq(make_rational(3, 2))) == ExtRational(make_rational(3, 2)));
    CHECK(lambda(LCNumber::zero()) == ExtRational::infinity());
    CHECK(lambda(add(embed_real(5), d)) == ExtRational(0));
    CHECK_THROWS_AS(lambda(LCNumber::zero_at_order(Rational(4))),
                    IndeterminateZeroToOrder);
}

TEST_CASE("comparison against reals and truncation honesty") {
    CHECK(compare(d, embed_real(make_rational(1, 1000000))).is_less());
    CHECK(compare(add(embed_real(2), d), embed_real(2)).is_greater());
    LCNumber x = add(one, d);
    CHECK(compare(x, x).is_equal());
    // Two values agreeing on all known terms cannot be separated.
    LCNumber t = truncate(x, Rational(3));
    OrderResult r = compare(t, add(x, make_dq(5)));
    CHECK(r.is_indistinguishable());
    CHECK(r.at_order == ExtRational(3));
}

TEST_CASE("absolute value") {
    CHECK(abs(neg(d)) == d);
    CHECK(abs(LCNumber::zero()) == LCNumber::zero());
    LCNumber y = sub(embed_real(3), d);
    CHECK(abs(y) == y);
    CHECK_THROWS_AS(abs(LCNumber::zero_at_order(Rational(2))), IndeterminateSign);
}

TEST_CASE("valuation norm is the order of magnitude") {
    CHECK(valuation_norm(make_dq(2)) == ExtRational(2));
    CHECK(valuation_norm(LCNumber::zero()) == ExtRational::infinity());
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        LCNumber x = lc::testing::rand_nonzero_number(rng, 8, -3, 6);
        LCNumber y = lc::testing::rand_nonzero_number(rng, 8, -3, 6);
        LCNumber s = add(x, y);
        if (s.is_exact_zero()) continue;
        CHECK(lambda(s) >= min(lambda(x), lambda(y)));
        if (lambda(x) != lambda(y)) CHECK(lambda(s) == min(lambda(x), lambda(y)));
    }
}

TEST_CASE("inverse via the geometric series") {
    // Multiply-back oracle: x * inverse(x, K) agrees with 1 through K - 2*lambda(x).
    LCNumber inv = inverse(sub(one, d), Rational(3));
    LCNumber back = mul(sub(one, d), inv);
    CHECK(agrees_to(back, one, Rational(3)));
    CHECK(inv == truncate(LCNumber::make({{Rational(0), Rational(1)},
                                          {Rational(1), Rational(1)},
                                          {Rational(2), Rational(1)},
                                          {Rational(3), Rational(1)}}),
                          Rational(3)));
    CHECK(inverse(d, Rational(4)) == make_dq(-1));
    CHECK(inverse(d, Rational(4)).is_exact());
    CHECK(inverse(embed_real(2), Rational(4)) == embed_real(make_rational(1, 2)));
    CHECK_THROWS_AS(inverse(LCNumber::zero(), Rational(4)), DivisionByZero);
    CHECK_THROWS_AS(inverse(LCNumber::zero_at_order(Rational(4)), Rational(4)),
                    IndeterminateZeroToOrder);
}

TEST_CASE("nth roots") {
    CHECK(nth_root(make_dq(2), 2, Rational(4)) == d);
    CHECK(nth_root(d, 2, Rational(4)) == make_dq(make_rational(1, 2)));
    // Square-back oracle for the binomial series.
    LCNumber r = nth_root(add(one, d), 2, Rational(2));
    CHECK(agrees_to(mul(r, r), add(one, d), Rational(2)));
    CHECK(r == truncate(LCNumber::make({{Rational(0), Rational(1)},
                                        {Rational(1), make_rational(1, 2)},
                                        {Rational(2), make_rational(-1, 8)}}),
                        Rational(2)));
    CHECK_THROWS_AS(nth_root(neg(d), 2, Rational(4)), NonPositiveRadicand);
    CHECK_THROWS_AS(nth_root(embed_real(2), 2, Rational(4)),
                    LeadingCoefficientNotPerfectPower);
    CHECK(nth_root(embed_real(make_rational(4, 9)), 2, Rational(4)) ==
          embed_real(make_rational(2, 3)));
}

TEST_CASE("truncation and coefficients") {
    LCNumber x = LCNumber::make({{Rational(0), Rational(1)},
                                 {Rational(1), Rational(1)},
                                 {Rational(2), Rational(1)}});
    LCNumber t = truncate(x, Rational(1));
    CHECK(t.terms().size() == 2);
    CHECK(t.order() == ExtRational(1));
    CHECK(truncate(x, Rational(0)) == truncate(one, Rational(0)));
    CHECK(truncate(LCNumber::zero(), Rational(5)) ==
          LCNumber::zero_at_order(Rational(5)));
    CHECK_THROWS_AS(truncate(t, Rational(2)), TruncationBeyondKnowledge);

    LCNumber y = add(embed_real(3), mul(embed_real(2), d));
    CHECK(coefficient(y, Rational(1)) == 2);
    CHECK(coefficient(y, make_rational(1, 2)) == 0);
    CHECK(coefficient(make_dq(make_rational(2, 3)), make_rational(2, 3)) == 1);
    CHECK_THROWS_AS(coefficient(t, Rational(2)), BeyondTruncation);

    // Idempotence and coefficient agreement below the cut.
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        LCNumber z = lc::testing::rand_number(rng, 8, -3, 6);
        LCNumber tz = truncate(z, Rational(2));
        CHECK(truncate(tz, Rational(2)) == tz);
        for (const auto& term : tz.terms())
            CHECK(term.coefficient == coefficient(z, term.exponent));
    }
}

TEST_CASE("agreement relations") {
    LCNumber two_d = mul(embed_real(2), d);
    CHECK(agree_order(d, two_d));
    CHECK_FALSE(agree_leading(d, two_d));
    LCNumber a = mul(embed_real(3), d);
    LCNumber b = add(a, make_dq(2));
    CHECK(agree_order(a, b));
    CHECK(agree_leading(a, b));
    CHECK_FALSE(agree_order(one, d));
    CHECK_THROWS_AS(agree_order(LCNumber::zero(), d), ZeroOperand);
}

TEST_CASE("magnitude classes") {
    CHECK(classify_magnitude(make_dq(make_rational(1, 2))) ==
          Magnitude::Infinitesimal);
    CHECK(classify_magnitude(make_dq(-1)) == Magnitude::Infinite);
    CHECK(classify_magnitude(add(embed_real(7), d)) == Magnitude::Finite);
    CHECK(classify_magnitude(LCNumber::zero()) == Magnitude::Infinitesimal);
}

TEST_CASE("field axioms on random exact values") {
    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        LCNumber x = lc::testing::rand_number(rng, 6, -3, 6);
        LCNumber y = lc::testing::rand_number(rng, 6, -3, 6);
        LCNumber z = lc::testing::rand_number(rng, 6, -3, 6);
        CHECK(add(x, y) == add(y, x));
        CHECK(mul(x, y) == mul(y, x));
        CHECK(add(add(x, y), z) == add(x, add(y, z)));
        CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
        CHECK(mul(x, add(y, z)) == add(mul(x, y), mul(x, z)));
        if (x.has_terms() && y.has_terms())
            CHECK(lambda(mul(x, y)) == lambda(x) + lambda(y));
    }
}

TEST_CASE("order compatibility with the operations") {
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        LCNumber x = lc::testing::rand_number(rng, 5, -2, 4);
        LCNumber y = lc::testing::rand_number(rng, 5, -2, 4);
        LCNumber z = lc::testing::rand_number(rng, 5, -2, 4);
        if (compare(x, y).is_less() && compare(y, z).is_less())
            CHECK(compare(x, z).is_less());
        if (compare(x, y).is_less()) {
            CHECK(compare(add(x, z), add(y, z)).is_less());
            if (compare_zero(z).is_greater())
                CHECK(compare(mul(x, z), mul(y, z)).is_less());
        }
    }
}

TEST_CASE("inverse and root round trips at the guaranteed orders") {
    Rng rng(512);
    const Rational K(12);
    for (int i = 0; i < 50; ++i) {
        LCNumber x = lc::testing::rand_nonzero_number(rng, 5, -2, 4);
        Rational L = x.terms().front().exponent;
        LCNumber inv = inverse(x, K);
        CHECK(agrees_to(mul(x, inv), one, K - 2 * L));
    }
    for (int i = 0; i < 50; ++i) {
        LCNumber x = lc::testing::rand_nonzero_number(rng, 4, 0, 3);
        if (!compare_zero(x).is_greater()) continue;
        Rational c = x.terms().front().coefficient;
        if (!exact_nth_root(c, 2)) continue;
        LCNumber r = nth_root(x, 2, K);
        CHECK(agrees_to(mul(r, r), x, K));
    }
}
