#include "lc/number.hpp"

#include <algorithm>
#include <map>

#include "lc/errors.hpp"

namespace lc {

LCNumber LCNumber::make(std::vector<Term> terms, ExtRational order) {
    std::map<Rational, Rational> merged;
    for (const auto& t : terms) merged[t.exponent] += t.coefficient;
    LCNumber x;
    x.order_ = order;
    for (const auto& [q, c] : merged) {
        if (c == 0) continue;
        if (ExtRational(q) > order) continue;
        x.terms_.push_back({q, c});
    }
    return x;
}

LCNumber LCNumber::zero_at_order(const Rational& k) {
    LCNumber x;
    x.order_ = ExtRational(k);
    return x;
}

bool operator==(const LCNumber& a, const LCNumber& b) {
    if (a.order() != b.order()) return false;
    if (a.terms().size() != b.terms().size()) return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        if (a.terms()[i].exponent != b.terms()[i].exponent) return false;
        if (a.terms()[i].coefficient != b.terms()[i].coefficient) return false;
    }
    return true;
}

LCNumber embed_real(const Rational& r) {
    if (r == 0) return LCNumber::zero();
    return LCNumber::make({{Rational(0), r}});
}

LCNumber embed_real(long r) { return embed_real(Rational(r)); }

LCNumber make_dq(const Rational& q) {
    return LCNumber::make({{q, Rational(1)}});
}

LCNumber make_dq(long q) { return make_dq(Rational(q)); }

LCNumber monomial(const Rational& coefficient, const Rational& exponent) {
    if (coefficient == 0) return LCNumber::zero();
    return LCNumber::make({{exponent, coefficient}});
}

LCNumber add(const LCNumber& x, const LCNumber& y) {
    ExtRational order = min(x.order(), y.order());
    std::vector<Term> terms;
    terms.reserve(x.terms().size() + y.terms().size());
    auto ix = x.terms().begin(), ex = x.terms().end();
    auto iy = y.terms().begin(), ey = y.terms().end();
    while (ix != ex || iy != ey) {
        if (iy == ey || (ix != ex && ix->exponent < iy->exponent)) {
            terms.push_back(*ix++);
        } else if (ix == ex || iy->exponent < ix->exponent) {
            terms.push_back(*iy++);
        } else {
            Rational c = ix->coefficient + iy->coefficient;
            if (c != 0) terms.push_back({ix->exponent, c});
            ++ix;
            ++iy;
        }
    }
    return LCNumber::make(std::move(terms), order);
}

LCNumber neg(const LCNumber& x) {
    std::vector<Term> terms = x.terms();
    for (auto& t : terms) t.coefficient = -t.coefficient;
    return LCNumber::make(std::move(terms), x.order());
}

LCNumber sub(const LCNumber& x, const LCNumber& y) { return add(x, neg(y)); }

ExtRational lambda_lower_bound(const LCNumber& x) {
    if (x.has_terms()) return ExtRational(x.terms().front().exponent);
    return x.order();
}

LCNumber mul(const LCNumber& x, const LCNumber& y) {
    if (x.is_exact_zero() || y.is_exact_zero()) return LCNumber::zero();
    // The product is determined up to the finest exponent fed by both
    // factors: knowledge of x stops at order(x), which meets terms of y no
    // earlier than at lambda(y), and symmetrically.
    ExtRational order = min(x.order() + lambda_lower_bound(y),
                            y.order() + lambda_lower_bound(x));
    std::map<Rational, Rational> acc;
    for (const auto& tx : x.terms()) {
        for (const auto& ty : y.terms()) {
            Rational q = tx.exponent + ty.exponent;
            if (ExtRational(q) > order) continue;
            acc[q] += tx.coefficient * ty.coefficient;
        }
    }
    std::vector<Term> terms;
    for (const auto& [q, c] : acc)
        if (c != 0) terms.push_back({q, c});
    return LCNumber::make(std::move(terms), order);
}

LCNumber pow(const LCNumber& x, unsigned long n) {
    LCNumber r = embed_real(1);
    LCNumber base = x;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

ExtRational lambda(const LCNumber& x) {
    if (x.has_terms()) return ExtRational(x.terms().front().exponent);
    if (x.is_exact()) return ExtRational::infinity();
    throw IndeterminateZeroToOrder(x.order().str());
}

ExtRational valuation_norm(const LCNumber& x) { return lambda(x); }

OrderResult compare(const LCNumber& x, const LCNumber& y) {
    return compare_zero(sub(x, y));
}

OrderResult compare_zero(const LCNumber& x) {
    if (x.has_terms()) {
        Order k = x.terms().front().coefficient > 0 ? Order::Greater : Order::Less;
        return {k, ExtRational::infinity()};
    }
    if (x.is_exact()) return {Order::Equal, ExtRational::infinity()};
    return {Order::IndistinguishableAtOrder, x.order()};
}

LCNumber abs(const LCNumber& x) {
    OrderResult c = compare_zero(x);
    if (c.is_indistinguishable())
        throw IndeterminateSign("sign unknown: value vanishes up to order " +
                                x.order().str());
    return c.is_less() ? neg(x) : x;
}

bool agree_order(const LCNumber& x, const LCNumber& y) {
    if (x.is_exact_zero() || y.is_exact_zero())
        throw ZeroOperand("order-of-magnitude agreement is undefined at zero");
    return lambda(x) == lambda(y);
}

bool agree_leading(const LCNumber& x, const LCNumber& y) {
    if (!agree_order(x, y)) return false;
    return x.terms().front().coefficient == y.terms().front().coefficient;
}

Magnitude classify_magnitude(const LCNumber& x) {
    if (x.is_exact_zero()) return Magnitude::Infinitesimal;
    ExtRational l = lambda(x);
    if (l > ExtRational(0)) return Magnitude::Infinitesimal;
    if (l < ExtRational(0)) return Magnitude::Infinite;
    return Magnitude::Finite;
}

LCNumber truncate(const LCNumber& x, const Rational& k) {
    if (ExtRational(k) > x.order())
        throw TruncationBeyondKnowledge("cannot truncate at " + to_string(k) +
                                        ": value is only known up to order " +
                                        x.order().str());
    std::vector<Term> terms;
    for (const auto& t : x.terms()) {
        if (t.exponent > k) break;
        terms.push_back(t);
    }
    return LCNumber::make(std::move(terms), ExtRational(k));
}

Rational coefficient(const LCNumber& x, const Rational& q) {
    if (ExtRational(q) > x.order())
        throw BeyondTruncation("coefficient at " + to_string(q) +
                               " lies beyond the known order " + x.order().str());
    for (const auto& t : x.terms()) {
        if (t.exponent == q) return t.coefficient;
        if (t.exponent > q) break;
    }
    return Rational(0);
}

bool agrees_to(const LCNumber& x, const LCNumber& y, const Rational& k) {
    if (ExtRational(k) > x.order() || ExtRational(k) > y.order())
        throw BeyondTruncation("agreement check at " + to_string(k) +
                               " exceeds an operand's known order");
    auto ix = x.terms().begin(), ex = x.terms().end();
    auto iy = y.terms().begin(), ey = y.terms().end();
    while (true) {
        bool xa = ix != ex && ix->exponent <= k;
        bool ya = iy != ey && iy->exponent <= k;
        if (!xa && !ya) return true;
        if (xa != ya) return false;
        if (ix->exponent != iy->exponent || ix->coefficient != iy->coefficient)
            return false;
        ++ix;
        ++iy;
    }
}

LCNumber inverse(const LCNumber& x, const Rational& K) {
    if (x.is_exact_zero()) throw DivisionByZero();
    if (!x.has_terms()) throw IndeterminateZeroToOrder(x.order().str());

    const Rational L = x.terms().front().exponent;
    const Rational c = x.terms().front().coefficient;
    if (x.terms().size() == 1 && x.is_exact())
        return monomial(Rational(1) / c, -L);

    // x = c d^L (1 + eps) with lambda(eps) > 0, so 1/x is the geometric
    // series (1/c) d^{-L} sum (-eps)^n. The series terminates once the
    // powers of eps sink below the target order. Working to K - 3L in the
    // result makes the order-tracked multiply-back agree with 1 on every
    // exponent <= K - 2L.
    Rational target = K - 3 * L;                 // order of the result
    if (x.order().is_finite()) {
        Rational known = x.order().value() - 2 * L;
        if (known < target) target = known;
    }
    Rational series_order = target + L;          // order inside the (1+eps) factor

    LCNumber scaled = mul(x, monomial(Rational(1) / c, -L)); // 1 + eps
    LCNumber eps = sub(scaled, embed_real(1));
    if (eps.has_terms() && eps.terms().front().exponent <= 0)
        throw Error("inverse: normalized tail is not infinitesimal");

    LCNumber sum = embed_real(1);
    LCNumber power = embed_real(1);
    LCNumber neg_eps = neg(eps);
    while (true) {
        power = mul(power, neg_eps);
        if (power.order().is_finite() || power.has_terms()) {
            // Keep only what matters below the series order.
            std::vector<Term> kept;
            for (const auto& t : power.terms())
                if (t.exponent <= series_order) kept.push_back(t);
            power = LCNumber::make(std::move(kept), power.order());
        }
        if (!power.has_terms()) break;
        sum = add(sum, power);
    }
    LCNumber result = mul(sum, monomial(Rational(1) / c, -L));
    std::vector<Term> kept;
    for (const auto& t : result.terms())
        if (t.exponent <= target) kept.push_back(t);
    return LCNumber::make(std::move(kept), ExtRational(target));
}

LCNumber nth_root(const LCNumber& x, unsigned long n, const Rational& K) {
    if (n == 0) throw Error("nth_root: n must be positive");
    if (n == 1) return x;
    OrderResult sign = compare_zero(x);
    if (sign.is_indistinguishable())
        throw IndeterminateSign("radicand sign unknown at order " + x.order().str());
    if (!sign.is_greater())
        throw NonPositiveRadicand("nth_root requires a positive radicand");

    const Rational L = x.terms().front().exponent;
    const Rational c = x.terms().front().coefficient;
    auto root_c = exact_nth_root(c, n);
    if (!root_c)
        throw LeadingCoefficientNotPerfectPower(
            "leading coefficient " + to_string(c) + " is not an exact " +
            std::to_string(n) + "-th power of a rational");
    Rational Ln = L / Rational(static_cast<long>(n));
    if (x.terms().size() == 1 && x.is_exact()) return monomial(*root_c, Ln);

    // x = c d^L (1 + eps); expand (1 + eps)^{1/n} by the binomial series
    // with exact rational coefficients. Truncating the series at K - L
    // makes the n-th power of the result agree with x up to exponent K.
    Rational target = K;
    if (x.order().is_finite() && x.order().value() < target)
        target = x.order().value();
    Rational series_order = target - L;

    LCNumber scaled = mul(x, monomial(Rational(1) / c, -L)); // 1 + eps
    LCNumber eps = sub(scaled, embed_real(1));

    LCNumber sum = embed_real(1);
    LCNumber power = embed_real(1);
    Rational binom(1);
    Rational alpha = Rational(1) / Rational(static_cast<long>(n));
    long m = 0;
    while (true) {
        binom = binom * (alpha - Rational(m)) / Rational(m + 1);
        ++m;
        power = mul(power, eps);
        std::vector<Term> kept;
        for (const auto& t : power.terms())
            if (t.exponent <= series_order) kept.push_back(t);
        power = LCNumber::make(std::move(kept), power.order());
        if (!power.has_terms()) break;
        sum = add(sum, mul(embed_real(binom), power));
    }
    LCNumber result = mul(sum, monomial(*root_c, Ln));
    std::vector<Term> kept;
    Rational result_order = series_order + Ln;
    for (const auto& t : result.terms())
        if (t.exponent <= result_order) kept.push_back(t);
    return LCNumber::make(std::move(kept), ExtRational(result_order));
}

std::string LCNumber::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coefficient;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        if (t.exponent == 0) {
            out += to_string(c);
        } else {
            out += to_string(c) + "*d^(" + to_string(t.exponent) + ")";
        }
    }
    return out;
}

std::string to_string(const LCNumber& x) { return x.str(); }

} // namespace lc
