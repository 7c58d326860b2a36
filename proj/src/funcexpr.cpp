#include "lc/funcexpr.hpp"

#include "lc/errors.hpp"

namespace lc {

FuncPtr FuncExpr::constant_of(Rational c) {
    auto e = std::make_shared<FuncExpr>();
    e->node = FuncNode::Constant;
    e->constant = std::move(c);
    return e;
}

FuncPtr FuncExpr::variable() {
    auto e = std::make_shared<FuncExpr>();
    e->node = FuncNode::Variable;
    return e;
}

namespace {
FuncPtr binary(FuncNode node, FuncPtr a, FuncPtr b) {
    auto e = std::make_shared<FuncExpr>();
    e->node = node;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}
} // namespace

FuncPtr FuncExpr::add(FuncPtr a, FuncPtr b) { return binary(FuncNode::Add, a, b); }
FuncPtr FuncExpr::sub(FuncPtr a, FuncPtr b) { return binary(FuncNode::Sub, a, b); }
FuncPtr FuncExpr::mul(FuncPtr a, FuncPtr b) { return binary(FuncNode::Mul, a, b); }
FuncPtr FuncExpr::div(FuncPtr a, FuncPtr b) { return binary(FuncNode::Div, a, b); }

FuncPtr FuncExpr::root(FuncPtr a, unsigned long degree) {
    auto e = std::make_shared<FuncExpr>();
    e->node = FuncNode::Root;
    e->a = std::move(a);
    e->root_degree = degree;
    return e;
}

LCNumber eval_func(const FuncPtr& f, const LCNumber& x, const Rational& K) {
    switch (f->node) {
        case FuncNode::Constant:
            return embed_real(f->constant);
        case FuncNode::Variable:
            return x;
        case FuncNode::Add:
            return add(eval_func(f->a, x, K), eval_func(f->b, x, K));
        case FuncNode::Sub:
            return sub(eval_func(f->a, x, K), eval_func(f->b, x, K));
        case FuncNode::Mul:
            return mul(eval_func(f->a, x, K), eval_func(f->b, x, K));
        case FuncNode::Div: {
            LCNumber den = eval_func(f->b, x, K);
            if (den.is_exact_zero()) throw DivisionByZero();
            if (!den.has_terms()) throw IndeterminateZeroToOrder(den.order().str());
            if (den.terms().front().exponent > 0)
                throw DivisionByZero(
                    "denominator vanishes at the expansion point");
            return mul(eval_func(f->a, x, K), inverse(den, K));
        }
        case FuncNode::Root:
            return nth_root(eval_func(f->a, x, K), f->root_degree, K);
    }
    throw Error("unreachable");
}

Rational derivative_demo(const FuncPtr& f, const Rational& x0, long n) {
    if (n < 1) throw Error("derivative order must be positive");
    LCNumber at = add(embed_real(x0), make_dq(Rational(1)));
    LCNumber value = eval_func(f, at, Rational(n));
    Rational c = coefficient(value, Rational(n));
    Rational factorial(1);
    for (long i = 2; i <= n; ++i) factorial *= i;
    return c * factorial;
}

} // namespace lc
