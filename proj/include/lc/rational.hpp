#ifndef LC_RATIONAL_HPP
#define LC_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace lc {

// Exact rationals, always canonical (lowest terms, positive denominator).
// GMP keeps results canonical as long as inputs are; the factories below
// canonicalize anything built from raw parts.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

std::string to_string(const Rational& q);

// Largest integer <= q.
Integer floor_int(const Rational& q);
long floor_long(const Rational& q);

bool is_integer(const Rational& q);

// Exact n-th root when q is the n-th power of a rational; nullopt otherwise.
// For even n the root returned is the non-negative one.
std::optional<Rational> exact_nth_root(const Rational& q, unsigned long n);

// The rationals together with a greatest element, the codomain of the
// order-of-magnitude map: infinity marks exact zero / exact knowledge.
class ExtRational {
public:
    ExtRational() : finite_(true), value_(0) {}
    ExtRational(const Rational& v) : finite_(true), value_(v) {}
    ExtRational(long v) : finite_(true), value_(v) {}
    static ExtRational infinity() {
        ExtRational e;
        e.finite_ = false;
        return e;
    }

    bool is_infinite() const { return !finite_; }
    bool is_finite() const { return finite_; }

    // Only valid on finite values.
    const Rational& value() const;

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

    // Addition saturates at infinity.
    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return ExtRational(Rational(a.value_ + b.value_));
    }

    friend ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
    friend ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

    std::string str() const;

private:
    bool finite_;
    Rational value_;
};

} // namespace lc

#endif
