#ifndef LC_FUNCEXPR_HPP
#define LC_FUNCEXPR_HPP

#include <memory>

#include "lc/number.hpp"

namespace lc {

// Arithmetic expressions in one variable over the rationals, with division
// and integer roots; the function language of the derivative computation.
struct FuncExpr;
using FuncPtr = std::shared_ptr<const FuncExpr>;

enum class FuncNode { Constant, Variable, Add, Sub, Mul, Div, Root };

struct FuncExpr {
    FuncNode node;
    Rational constant;
    FuncPtr a, b;
    unsigned long root_degree = 2;

    static FuncPtr constant_of(Rational c);
    static FuncPtr variable();
    static FuncPtr add(FuncPtr a, FuncPtr b);
    static FuncPtr sub(FuncPtr a, FuncPtr b);
    static FuncPtr mul(FuncPtr a, FuncPtr b);
    static FuncPtr div(FuncPtr a, FuncPtr b);
    static FuncPtr root(FuncPtr a, unsigned long degree);
};

// Evaluates f with the variable bound to x, every division and root carried
// to working order K.
LCNumber eval_func(const FuncPtr& f, const LCNumber& x, const Rational& K);

// n-th derivative of f at x0: evaluates f(x0 + d) at order n and reads off
// n! times the coefficient at exponent n.
Rational derivative_demo(const FuncPtr& f, const Rational& x0, long n);

} // namespace lc

#endif
