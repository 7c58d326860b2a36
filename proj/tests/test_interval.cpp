#include <doctest.h>

#include "lc/errors.hpp"
#include "lc/interval.hpp"
#include "lc/set.hpp"
#include "helpers.hpp"

using namespace lc;
using lc::testing::Rng;

namespace {
LCNumber num(long v) { return embed_real(v); }
Interval cl(long a, long b) { return Interval::closed(num(a), num(b)); }
const LCNumber d = make_dq(1);
} // namespace

TEST_CASE("lengths") {
    CHECK(length(cl(0, 1)) == num(1));
    CHECK(length(Interval::open(d, mul(num(2), d))) == d);
    CHECK(length(Interval::point(num(3))) == LCNumber::zero());
    CHECK(length(Interval::empty()) == LCNumber::zero());
    CHECK_THROWS_AS(length(Interval::whole_line()), UnboundedLength);
}

TEST_CASE("construction normalizes") {
    CHECK(Interval::open(num(1), num(1)).is_empty());
    CHECK(Interval::closed(num(2), num(1)).is_empty());
    CHECK(Interval::point(num(1)).is_point());
    CHECK_THROWS_AS(Interval::closed(truncate(num(1), Rational(2)), num(3)),
                    TruncatedEndpoint);
}

TEST_CASE("intersection") {
    CHECK(intersect(cl(0, 2), cl(1, 3)) == cl(1, 2));
    CHECK(intersect(Interval::open(LCNumber::zero(), d),
                    Interval::open(mul(num(2), d), mul(num(3), d)))
              .is_empty());
    CHECK(intersect(cl(0, 1), cl(1, 2)) == Interval::point(num(1)));
    // Touching open ends do not meet.
    CHECK(intersect(Interval::open(num(0), num(1)), cl(1, 2)).is_empty());
}

TEST_CASE("complement within an interval") {
    auto pieces = complement_within(cl(1, 2), cl(0, 3));
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0] == Interval::make(Bound::finite(num(0), true),
                                      Bound::finite(num(1), false)));
    CHECK(pieces[1] == Interval::make(Bound::finite(num(2), false),
                                      Bound::finite(num(3), true)));
    CHECK(complement_within(cl(0, 1), cl(0, 1)).empty());
    auto residue = complement_within(Interval::open(num(0), num(1)), cl(0, 1));
    REQUIRE(residue.size() == 2);
    CHECK(residue[0] == Interval::point(num(0)));
    CHECK(residue[1] == Interval::point(num(1)));
}

TEST_CASE("complement of a finite disjoint union") {
    auto one = complement_of_finite_union({cl(1, 2)});
    REQUIRE(one.size() == 2);
    CHECK_FALSE(one[0].lo().is_finite());
    CHECK(one[0].hi().value == num(1));
    CHECK_FALSE(one[0].hi().closed);
    CHECK(one[1].lo().value == num(2));
    CHECK_FALSE(one[1].hi().is_finite());

    auto two = complement_of_finite_union({cl(0, 1), cl(2, 3)});
    REQUIRE(two.size() == 3);
    CHECK(two[1] == Interval::open(num(1), num(2)));

    auto none = complement_of_finite_union({});
    REQUIRE(none.size() == 1);
    CHECK_FALSE(none[0].lo().is_finite());
    CHECK_FALSE(none[0].hi().is_finite());

    CHECK_THROWS_AS(complement_of_finite_union({cl(0, 2), cl(1, 3)}),
                    OverlapDetected);
}

TEST_CASE("complement pieces partition the line") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        // Random disjoint intervals with rational endpoints.
        std::vector<Interval> pieces;
        long base = -6;
        for (int i = 0; i < 4; ++i) {
            long a = base + static_cast<long>(rng() % 3);
            long b = a + 1 + static_cast<long>(rng() % 2);
            pieces.push_back(cl(a, b));
            base = b + 1 + static_cast<long>(rng() % 2);
        }
        auto comp = complement_of_finite_union(pieces);
        // Probe a lattice of points: each lies in exactly one side.
        for (long p = -8; p <= base + 2; ++p) {
            LCNumber probe = num(p);
            int inside = 0, outside = 0;
            for (const auto& I : pieces) inside += contains(I, probe);
            for (const auto& I : comp) outside += contains(I, probe);
            CHECK(inside + outside == 1);
        }
    }
}

TEST_CASE("length splits additively") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        LCNumber a = lc::testing::rand_number(rng, 4, 0, 3);
        LCNumber gap1 = monomial(lc::testing::rand_rational(rng, 1, 3),
                                 lc::testing::rand_rational(rng, 0, 2));
        LCNumber gap2 = monomial(lc::testing::rand_rational(rng, 1, 3),
                                 lc::testing::rand_rational(rng, 0, 2));
        LCNumber c = add(a, gap1);
        LCNumber b = add(c, gap2);
        CHECK(add(length(Interval::closed(a, c)), length(Interval::closed(c, b))) ==
              length(Interval::closed(a, b)));
    }
}

TEST_CASE("intersection is commutative, associative, and length-monotone") {
    Rng rng(29);
    auto random_interval = [&] {
        LCNumber a = lc::testing::rand_number(rng, 3, 0, 2);
        LCNumber b = add(a, monomial(lc::testing::rand_rational(rng, 1, 4),
                                     lc::testing::rand_rational(rng, 0, 2)));
        return Interval::closed(a, b);
    };
    for (int trial = 0; trial < 50; ++trial) {
        Interval I = random_interval();
        Interval J = random_interval();
        Interval K = random_interval();
        CHECK(intersect(I, J) == intersect(J, I));
        CHECK(intersect(intersect(I, J), K) == intersect(I, intersect(J, K)));
        LCNumber li = length(intersect(I, J));
        CHECK(compare(li, length(I)).is_less_or_equal());
        CHECK(compare(li, length(J)).is_less_or_equal());
    }
}

TEST_CASE("the sorted subtraction walk matches the generic one") {
    Rng rng(37);
    auto random_sorted_disjoint = [&](long offset) {
        std::vector<Interval> out;
        long base = offset;
        int count = static_cast<int>(rng() % 5);
        for (int i = 0; i < count; ++i) {
            long a = base + static_cast<long>(rng() % 2);
            long b = a + 1 + static_cast<long>(rng() % 2);
            bool lc = rng() % 2, hc = rng() % 2;
            Interval I = Interval::make(Bound::finite(num(a), lc),
                                        Bound::finite(num(b), hc));
            if (!I.is_empty()) out.push_back(I);
            base = b + 1;
        }
        return out;
    };
    for (int trial = 0; trial < 200; ++trial) {
        auto from = random_sorted_disjoint(-5);
        auto minus = random_sorted_disjoint(-6);
        auto fast = normalize_union(subtract_sorted(from, minus));
        auto slow = normalize_union(subtract_list(from, minus));
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
    }
}

TEST_CASE("countable families and length sums") {
    IntervalSeq geo = geometric_interval_seq();
    LCNumber sum = sum_lengths(geo, Rational(5));
    LCNumber expect = LCNumber::zero();
    for (long n = 1; n <= 5; ++n) expect = add(expect, make_dq(Rational(n)));
    CHECK(sum == truncate(expect, Rational(5)));
    validate_disjoint(geo, Rational(8));

    IntervalSeq bad = IntervalSeq::from_list({cl(0, 2), cl(1, 3)});
    CHECK_THROWS_AS(validate_disjoint(bad, Rational(4)), OverlapDetected);
}

TEST_CASE("refinement keeps the inner cover and certifies the residue") {
    auto single = [](Interval I) { return IntervalSeq::from_list({I}); };

    SUBCASE("identical covers leave nothing") {
        Refinement r = refine(single(cl(0, 1)), single(cl(0, 1)),
                              mul(num(2), d));
        REQUIRE(r.kept.size() == 1);
        CHECK(r.kept[0] == cl(0, 1));
        CHECK(r.residue_finite_total == LCNumber::zero());
    }

    SUBCASE("a shaved end becomes the residue") {
        LCNumber one_minus_d = sub(num(1), d);
        Refinement r = refine(single(cl(0, 1)),
                              single(Interval::closed(num(0), one_minus_d)),
                              mul(num(2), d));
        REQUIRE(r.kept.size() == 1);
        CHECK(r.kept[0] == Interval::closed(num(0), one_minus_d));
        CHECK(r.residue_finite_total == d);
        REQUIRE(r.residue_finite.size() == 1);
        CHECK(r.residue_finite[0] ==
              Interval::make(Bound::finite(one_minus_d, false),
                             Bound::finite(num(1), true)));
    }

    SUBCASE("an uncovered outer piece goes wholly to the residue") {
        Interval tiny = Interval::closed(num(2), add(num(2), d));
        Refinement r = refine(IntervalSeq::from_list({cl(0, 1), tiny}),
                              single(cl(0, 1)), mul(num(2), d));
        CHECK(r.residue_finite_total == d);
    }

    SUBCASE("an impossible bound is refused") {
        CHECK_THROWS_AS(refine(single(cl(0, 2)), single(cl(0, 1)), d),
                        PrecisionExhausted);
    }
}

TEST_CASE("derived families compose certificates") {
    IntervalSeq geo = geometric_interval_seq();
    IntervalSeq cut = intersect_with_list(geo, {cl(0, 1)});
    CHECK(sum_lengths(cut, Rational(4)) == sum_lengths(geo, Rational(4)));

    IntervalSeq diff = subtract_list_seq(geo, {geo.at(1)});
    LCNumber s = sum_lengths(diff, Rational(4));
    CHECK(s == truncate(sub(sum_lengths(geo, Rational(5)), make_dq(1)),
                        Rational(4)));

    IntervalSeq both = intersect_seqs(geo, geo);
    CHECK(sum_lengths(both, Rational(4)) == sum_lengths(geo, Rational(4)));
}
