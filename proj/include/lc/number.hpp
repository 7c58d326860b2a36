#ifndef LC_NUMBER_HPP
#define LC_NUMBER_HPP

#include <ostream>
#include <string>
#include <vector>

#include "lc/rational.hpp"

namespace lc {

// One support point of a sparse series: a nonzero coefficient at a rational
// exponent of the canonical infinitesimal d.
struct Term {
    Rational exponent;
    Rational coefficient;
};

enum class Order { Less, Equal, Greater, IndistinguishableAtOrder };

struct OrderResult {
    Order kind;
    // Truncation order at which the operands became indistinguishable;
    // meaningful only for IndistinguishableAtOrder.
    ExtRational at_order;

    bool is_less() const { return kind == Order::Less; }
    bool is_equal() const { return kind == Order::Equal; }
    bool is_greater() const { return kind == Order::Greater; }
    bool is_indistinguishable() const { return kind == Order::IndistinguishableAtOrder; }
    bool is_less_or_equal() const { return is_less() || is_equal(); }
};

enum class Magnitude { Infinitesimal, Finite, Infinite };

// A Levi-Civita number known up to a truncation order: a strictly ascending
// list of (exponent, nonzero coefficient) pairs, every exponent <= order.
// An infinite order means the value is exact (finite support, fully known);
// a finite order K means nothing is asserted about exponents beyond K.
class LCNumber {
public:
    LCNumber() : order_(ExtRational::infinity()) {}

    // Builds from raw parts; merges duplicate exponents, sorts, strips zero
    // coefficients and terms beyond the order.
    static LCNumber make(std::vector<Term> terms,
                         ExtRational order = ExtRational::infinity());

    static LCNumber zero() { return LCNumber(); }
    // The zero series truncated at k: all that is known is that the value
    // vanishes up to d^k.
    static LCNumber zero_at_order(const Rational& k);

    const std::vector<Term>& terms() const { return terms_; }
    const ExtRational& order() const { return order_; }
    bool is_exact() const { return order_.is_infinite(); }
    bool is_exact_zero() const { return terms_.empty() && is_exact(); }
    bool has_terms() const { return !terms_.empty(); }

    std::string str() const;

private:
    std::vector<Term> terms_;
    ExtRational order_;
};

// Structural equality: identical terms and identical order.
bool operator==(const LCNumber& a, const LCNumber& b);
inline bool operator!=(const LCNumber& a, const LCNumber& b) { return !(a == b); }

inline std::ostream& operator<<(std::ostream& os, const LCNumber& x) {
    return os << x.str() << " (order " << x.order().str() << ")";
}

// --- construction -----------------------------------------------------------

// E(r): the real r as an exact series supported at exponent zero.
LCNumber embed_real(const Rational& r);
LCNumber embed_real(long r);

// d^q as an exact monomial.
LCNumber make_dq(const Rational& q);
LCNumber make_dq(long q);

// c * d^q.
LCNumber monomial(const Rational& coefficient, const Rational& exponent);

// --- arithmetic -------------------------------------------------------------

LCNumber add(const LCNumber& x, const LCNumber& y);
LCNumber sub(const LCNumber& x, const LCNumber& y);
LCNumber neg(const LCNumber& x);
LCNumber mul(const LCNumber& x, const LCNumber& y);

inline LCNumber operator+(const LCNumber& x, const LCNumber& y) { return add(x, y); }
inline LCNumber operator-(const LCNumber& x, const LCNumber& y) { return sub(x, y); }
inline LCNumber operator-(const LCNumber& x) { return neg(x); }
inline LCNumber operator*(const LCNumber& x, const LCNumber& y) { return mul(x, y); }

// Multiplicative inverse computed up to the working order K: the returned y
// satisfies mul(x, y) == 1 on every exponent <= K - 2*lambda(x). Exact
// monomials invert exactly.
LCNumber inverse(const LCNumber& x, const Rational& K);

// Positive n-th root: the returned y satisfies pow(y, n) == x on every
// exponent <= min(K, order(x)). The leading coefficient must be an exact
// n-th power of a rational.
LCNumber nth_root(const LCNumber& x, unsigned long n, const Rational& K);

// Repeated multiplication; exponent >= 0.
LCNumber pow(const LCNumber& x, unsigned long n);

// --- order of magnitude and comparison --------------------------------------

// Minimum support exponent; infinity for exact zero. Throws
// IndeterminateZeroToOrder when all known terms vanish but the order is
// finite.
ExtRational lambda(const LCNumber& x);

// Lower bound for lambda that is always available: the leading exponent when
// terms exist, the truncation order when they do not (infinity for exact 0).
ExtRational lambda_lower_bound(const LCNumber& x);

// The ultrametric absolute value |x|_u = e^{-lambda(x)} is represented by
// lambda itself: larger values mean smaller norms, and the map is faithful
// for comparisons since e^{-t} is strictly decreasing.
ExtRational valuation_norm(const LCNumber& x);

OrderResult compare(const LCNumber& x, const LCNumber& y);
OrderResult compare_zero(const LCNumber& x);

LCNumber abs(const LCNumber& x);

// lambda(x) == lambda(y); both operands must be nonzero.
bool agree_order(const LCNumber& x, const LCNumber& y);
// agree_order and equal leading coefficients.
bool agree_leading(const LCNumber& x, const LCNumber& y);

// Zero counts as infinitesimal.
Magnitude classify_magnitude(const LCNumber& x);

// --- truncation and coefficients --------------------------------------------

// Keeps the terms with exponent <= k and sets the order to k. Requires
// k <= order(x).
LCNumber truncate(const LCNumber& x, const Rational& k);

// x[q]; zero when q is not a support point. Requires q <= order(x).
Rational coefficient(const LCNumber& x, const Rational& q);

// True when x and y have identical coefficients at every exponent <= k.
// Requires k <= order of both.
bool agrees_to(const LCNumber& x, const LCNumber& y, const Rational& k);

std::string to_string(const LCNumber& x);

} // namespace lc

#endif
