#include <doctest.h>

#include "lc/errors.hpp"
#include "lc/parse.hpp"
#include "helpers.hpp"

using namespace lc;
using lc::testing::Rng;

TEST_CASE("series literals") {
    LCNumber x = parse_number("1 - d + 3/2*d^(2)");
    CHECK(x == LCNumber::make({{Rational(0), Rational(1)},
                               {Rational(1), Rational(-1)},
                               {Rational(2), make_rational(3, 2)}}));
    CHECK(parse_number("d^(1/2)") == make_dq(make_rational(1, 2)));
    CHECK(parse_number("0") == LCNumber::zero());
    CHECK(parse_number("-3/2") == embed_real(make_rational(-3, 2)));
    CHECK(parse_number("  2*d^( -1 ) + 5 ") ==
          LCNumber::make({{Rational(-1), Rational(2)}, {Rational(0), Rational(5)}}));
    CHECK_THROWS_AS(parse_number("d + d"), DuplicateExponent);
    CHECK_THROWS_AS(parse_number("1 +"), SyntaxError);
    CHECK_THROWS_AS(parse_number("1 ~ 2"), SyntaxError);
    CHECK_THROWS_AS(parse_number("d^(1/0)"), SyntaxError);
}

TEST_CASE("rendering round-trips") {
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        LCNumber x = lc::testing::rand_number(rng, 6, -4, 6);
        LCNumber back = parse_number(x.str());
        CHECK(back == x);
        CHECK(back.str() == x.str());
    }
}

TEST_CASE("the parser never crashes on junk") {
    Rng rng(43);
    const std::string alphabet = "01d^()+-*/ []QTSn,|\\&~";
    for (int i = 0; i < 500; ++i) {
        std::string junk;
        int len = 1 + static_cast<int>(rng() % 12);
        for (int j = 0; j < len; ++j)
            junk += alphabet[rng() % alphabet.size()];
        try {
            parse_number(junk);
        } catch (const Error&) {
        }
        try {
            parse_set_script(junk);
        } catch (const Error&) {
        }
    }
}

TEST_CASE("set expressions") {
    SetPtr diff = parse_set_script("[0,1] \\ Q([0,1])");
    CHECK(diff->node() == SetNode::Diff);
    CHECK(diff->left()->node() == SetNode::Single);
    CHECK(diff->right()->node() == SetNode::PointSeq);

    SetPtr c = parse_set_script("union(n, (d^((n-1)/n), 2*d^((n-1)/n)))");
    CHECK(c->node() == SetNode::CountableUnion);
    CHECK_FALSE(c->countable().has_certificate);

    SetPtr with_let = parse_set_script(
        "let C = union(n, (d^((n-1)/n), 2*d^((n-1)/n))); "
        "(T([0,1]) | C) & (S([0,1]) | C)");
    CHECK(with_let->node() == SetNode::Intersect);
    CHECK(structurally_equal(with_let->left()->right(),
                             with_let->right()->right()));

    SetPtr geo = parse_set_script("union(n, [1-1/n, 1-1/n+d^n])");
    CHECK(geo->node() == SetNode::CountableUnion);
    CHECK(geo->countable().has_certificate);

    SetPtr blocks = parse_set_script("union(n, [0,1-1/n] ++ [1-d^(1/n),1])");
    CHECK(blocks->node() == SetNode::CertCountableUnion);

    SetPtr shrink = parse_set_script("intersect(n, (d^(1/n), 1/n))");
    CHECK(shrink->node() == SetNode::CertCountableIntersect);

    CHECK_THROWS_AS(parse_set_script("union(n, [n, 2*n])"), UnknownPattern);
    CHECK_THROWS_AS(parse_set_script("union(n, (d^(1/n), 1/n))"),
                    UnknownPattern);

    SetPtr comp = parse_set_script("~T([0,1]) within [0,1]");
    CHECK(comp->node() == SetNode::Diff);
    CHECK_THROWS_AS(parse_set_script("~T([0,1])"), UnboundedComplement);

    SetPtr grouped = parse_set_script("([0,1] | [2,3]) & [0,5]");
    CHECK(grouped->node() == SetNode::Intersect);

    SetPtr lc_endpoints = parse_set_script("(d, 3*d)");
    CHECK(lc_endpoints->node() == SetNode::Single);
    CHECK(length(lc_endpoints->interval()) ==
          LCNumber::make({{Rational(1), Rational(2)}}));

    CHECK_THROWS_AS(parse_set_script("X & [0,1]"), SyntaxError);
}

TEST_CASE("function expressions") {
    FuncPtr square = parse_func("x*x");
    CHECK(eval_func(square, embed_real(3), Rational(4)) == embed_real(9));
    FuncPtr cube = parse_func("x^3");
    CHECK(eval_func(cube, embed_real(2), Rational(4)) == embed_real(8));
    FuncPtr rational_fn = parse_func("(1 + 2*x) / (3 - x)");
    CHECK(eval_func(rational_fn, embed_real(1), Rational(4)) ==
          embed_real(make_rational(3, 2)));
    FuncPtr rooted = parse_func("root(1 + x, 2)");
    CHECK(eval_func(rooted, embed_real(3), Rational(4)) == embed_real(2));
    FuncPtr negated = parse_func("-x + 1/2");
    CHECK(eval_func(negated, embed_real(2), Rational(4)) ==
          embed_real(make_rational(-3, 2)));
    CHECK_THROWS_AS(parse_func("x +"), SyntaxError);
    CHECK_THROWS_AS(parse_func("root(x)"), SyntaxError);
}
