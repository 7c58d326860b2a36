#ifndef LC_PARSE_HPP
#define LC_PARSE_HPP

#include <string>

#include "lc/funcexpr.hpp"
#include "lc/number.hpp"
#include "lc/set.hpp"

namespace lc {

// Series literals: terms `c`, `c*d^(p/q)`, `d^(p/q)`, `d` joined by + or -,
// whitespace-insensitive, exponents exact rationals in parentheses.
// Duplicate exponents are rejected. Rendering and parsing round-trip.
LCNumber parse_number(const std::string& text);

// Set expressions with top-level let bindings:
//   let C = union(n, (d^((n-1)/n), 2*d^((n-1)/n))); (T([0,1]) | C) & (S([0,1]) | C)
// Operators: & intersection, | union, \ difference, ~X within [a,b]
// complement. Primitives: intervals, Q(I), T(I), S(I), union(n, pattern),
// intersect(n, pattern) over the fixed pattern library.
SetPtr parse_set_script(const std::string& text);

// One-variable arithmetic over exact rationals: + - * /, root(f, n), and
// integer powers x^k as shorthand for repeated multiplication.
FuncPtr parse_func(const std::string& text);

// `p/q` or `p`.
Rational parse_rational_text(const std::string& text);

} // namespace lc

#endif
