#include "lc/rational.hpp"

#include "lc/errors.hpp"

namespace lc {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(Integer(num), Integer(den));
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

Integer floor_int(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

long floor_long(const Rational& q) {
    return floor_int(q).get_si();
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

std::optional<Rational> exact_nth_root(const Rational& q, unsigned long n) {
    if (n == 0) return std::nullopt;
    if (n == 1) return q;
    if (q < 0 && n % 2 == 0) return std::nullopt;
    Integer num = q.get_num();
    Integer den = q.get_den();
    bool negate = false;
    if (num < 0) {
        negate = true;
        num = -num;
    }
    Integer rnum, rden;
    int num_exact = mpz_root(rnum.get_mpz_t(), num.get_mpz_t(), n);
    int den_exact = mpz_root(rden.get_mpz_t(), den.get_mpz_t(), n);
    if (!num_exact || !den_exact) return std::nullopt;
    if (negate) rnum = -rnum;
    return make_rational(rnum, rden);
}

const Rational& ExtRational::value() const {
    if (!finite_) throw Error("infinite order has no rational value");
    return value_;
}

std::string ExtRational::str() const {
    return finite_ ? to_string(value_) : "inf";
}

} // namespace lc
