#include "lc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lc/errors.hpp"

namespace lc {

namespace {

void require_exact(const LCNumber& endpoint) {
    if (!endpoint.is_exact())
        throw TruncatedEndpoint("interval endpoints must be exact, got order " +
                                endpoint.order().str());
}

// Strict order on lower bounds; closed starts before open at equal values.
bool lower_bound_before(const Bound& a, const Bound& b) {
    if (a.kind == BoundKind::NegInfinite) return b.kind != BoundKind::NegInfinite;
    if (b.kind == BoundKind::NegInfinite) return false;
    if (a.kind == BoundKind::PosInfinite) return false;
    if (b.kind == BoundKind::PosInfinite) return true;
    OrderResult c = compare(a.value, b.value);
    if (c.is_less()) return true;
    if (c.is_greater()) return false;
    return a.closed && !b.closed;
}

// The stronger of two lower bounds.
Bound lower_bound_max(const Bound& a, const Bound& b) {
    if (a.kind == BoundKind::NegInfinite) return b;
    if (b.kind == BoundKind::NegInfinite) return a;
    if (a.kind == BoundKind::PosInfinite || b.kind == BoundKind::PosInfinite)
        return Bound::pos_infinite();
    OrderResult c = compare(a.value, b.value);
    if (c.is_less()) return b;
    if (c.is_greater()) return a;
    return Bound::finite(a.value, a.closed && b.closed);
}

// The stronger of two upper bounds.
Bound upper_bound_min(const Bound& a, const Bound& b) {
    if (a.kind == BoundKind::PosInfinite) return b;
    if (b.kind == BoundKind::PosInfinite) return a;
    if (a.kind == BoundKind::NegInfinite || b.kind == BoundKind::NegInfinite)
        return Bound::neg_infinite();
    OrderResult c = compare(a.value, b.value);
    if (c.is_less()) return a;
    if (c.is_greater()) return b;
    return Bound::finite(a.value, a.closed && b.closed);
}

// The weaker of two upper bounds, for merging unions.
Bound upper_bound_max(const Bound& a, const Bound& b) {
    if (a.kind == BoundKind::PosInfinite || b.kind == BoundKind::PosInfinite)
        return Bound::pos_infinite();
    if (a.kind == BoundKind::NegInfinite) return b;
    if (b.kind == BoundKind::NegInfinite) return a;
    OrderResult c = compare(a.value, b.value);
    if (c.is_less()) return b;
    if (c.is_greater()) return a;
    return Bound::finite(a.value, a.closed || b.closed);
}

long isqrt_floor(long n) {
    if (n < 0) return 0;
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

Interval Interval::make(Bound lo, Bound hi) {
    if (lo.kind == BoundKind::PosInfinite || hi.kind == BoundKind::NegInfinite)
        return empty();
    if (lo.is_finite()) require_exact(lo.value);
    if (hi.is_finite()) require_exact(hi.value);
    if (lo.is_finite() && hi.is_finite()) {
        OrderResult c = compare(lo.value, hi.value);
        if (c.is_greater()) return empty();
        if (c.is_equal() && !(lo.closed && hi.closed)) return empty();
    }
    Interval I;
    I.empty_ = false;
    I.lo_ = std::move(lo);
    I.hi_ = std::move(hi);
    return I;
}

bool Interval::is_point() const {
    if (empty_ || !lo_.is_finite() || !hi_.is_finite()) return false;
    return compare(lo_.value, hi_.value).is_equal();
}

const Bound& Interval::lo() const {
    if (empty_) throw Error("empty interval has no bounds");
    return lo_;
}

const Bound& Interval::hi() const {
    if (empty_) throw Error("empty interval has no bounds");
    return hi_;
}

std::string Interval::str() const {
    if (empty_) return "{}";
    std::string out;
    if (lo_.is_finite())
        out += (lo_.closed ? "[" : "(") + lo_.value.str();
    else
        out += "(-inf";
    out += ", ";
    if (hi_.is_finite())
        out += hi_.value.str() + (hi_.closed ? "]" : ")");
    else
        out += "+inf)";
    return out;
}

bool operator==(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
    auto same_bound = [](const Bound& x, const Bound& y) {
        if (x.kind != y.kind) return false;
        if (!x.is_finite()) return true;
        return x.closed == y.closed && compare(x.value, y.value).is_equal();
    };
    return same_bound(a.lo(), b.lo()) && same_bound(a.hi(), b.hi());
}

LCNumber length(const Interval& I) {
    if (I.is_empty()) return LCNumber::zero();
    if (!I.is_bounded()) throw UnboundedLength();
    return sub(I.hi().value, I.lo().value);
}

bool contains(const Interval& I, const LCNumber& x) {
    if (I.is_empty()) return false;
    if (I.lo().is_finite()) {
        OrderResult c = compare(x, I.lo().value);
        if (c.is_indistinguishable())
            throw IndeterminateOverlap("membership undecidable at order " +
                                       c.at_order.str());
        if (c.is_less() || (c.is_equal() && !I.lo().closed)) return false;
    }
    if (I.hi().is_finite()) {
        OrderResult c = compare(x, I.hi().value);
        if (c.is_indistinguishable())
            throw IndeterminateOverlap("membership undecidable at order " +
                                       c.at_order.str());
        if (c.is_greater() || (c.is_equal() && !I.hi().closed)) return false;
    }
    return true;
}

bool is_subset(const Interval& inner, const Interval& outer) {
    if (inner.is_empty()) return true;
    if (outer.is_empty()) return false;
    // Lower side: outer must start no later than inner.
    if (outer.lo().is_finite()) {
        if (!inner.lo().is_finite()) return false;
        OrderResult c = compare(outer.lo().value, inner.lo().value);
        if (c.is_greater()) return false;
        if (c.is_equal() && !outer.lo().closed && inner.lo().closed) return false;
    }
    if (outer.hi().is_finite()) {
        if (!inner.hi().is_finite()) return false;
        OrderResult c = compare(inner.hi().value, outer.hi().value);
        if (c.is_greater()) return false;
        if (c.is_equal() && !outer.hi().closed && inner.hi().closed) return false;
    }
    return true;
}

bool are_disjoint(const Interval& I, const Interval& J) {
    return intersect(I, J).is_empty();
}

Interval intersect(const Interval& I, const Interval& J) {
    if (I.is_empty() || J.is_empty()) return Interval::empty();
    return Interval::make(lower_bound_max(I.lo(), J.lo()),
                          upper_bound_min(I.hi(), J.hi()));
}

std::vector<Interval> complement_within(const Interval& I, const Interval& J) {
    if (J.is_empty()) return {};
    Interval ov = intersect(I, J);
    if (ov.is_empty()) return {J};
    std::vector<Interval> out;
    if (ov.lo().is_finite()) {
        Interval left = Interval::make(
            J.lo(), Bound::finite(ov.lo().value, !ov.lo().closed));
        if (!left.is_empty()) out.push_back(left);
    }
    if (ov.hi().is_finite()) {
        Interval right = Interval::make(
            Bound::finite(ov.hi().value, !ov.hi().closed), J.hi());
        if (!right.is_empty()) out.push_back(right);
    }
    return out;
}

std::vector<Interval> complement_of_finite_union(const std::vector<Interval>& Is) {
    std::vector<Interval> pieces;
    for (const auto& I : Is)
        if (!I.is_empty()) pieces.push_back(I);
    if (pieces.empty()) return {Interval::whole_line()};
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (!are_disjoint(pieces[i], pieces[j]))
                throw OverlapDetected("intervals " + pieces[i].str() + " and " +
                                      pieces[j].str() + " overlap");
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
        return lower_bound_before(a.lo(), b.lo());
    });
    std::vector<Interval> out;
    auto flip = [](const Bound& b) {
        return b.is_finite() ? Bound::finite(b.value, !b.closed) : b;
    };
    if (pieces.front().lo().is_finite()) {
        Interval before =
            Interval::make(Bound::neg_infinite(), flip(pieces.front().lo()));
        if (!before.is_empty()) out.push_back(before);
    }
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        Interval gap =
            Interval::make(flip(pieces[i].hi()), flip(pieces[i + 1].lo()));
        if (!gap.is_empty()) out.push_back(gap);
    }
    if (pieces.back().hi().is_finite()) {
        Interval after =
            Interval::make(flip(pieces.back().hi()), Bound::pos_infinite());
        if (!after.is_empty()) out.push_back(after);
    }
    return out;
}

std::vector<Interval> subtract_list(const std::vector<Interval>& from,
                                    const std::vector<Interval>& minus) {
    std::vector<Interval> current;
    for (const auto& F : from)
        if (!F.is_empty()) current.push_back(F);
    for (const auto& M : minus) {
        if (M.is_empty()) continue;
        std::vector<Interval> next;
        for (const auto& piece : current) {
            auto left = complement_within(M, piece);
            next.insert(next.end(), left.begin(), left.end());
        }
        current = std::move(next);
    }
    return current;
}

namespace {

// True when every point under hi strictly precedes every point above lo.
bool bound_entirely_before(const Bound& hi, const Bound& lo) {
    if (hi.kind != BoundKind::Finite || lo.kind != BoundKind::Finite)
        return false;
    OrderResult c = compare(hi.value, lo.value);
    if (c.is_less()) return true;
    if (c.is_greater()) return false;
    return !(hi.closed && lo.closed);
}

} // namespace

std::vector<Interval> subtract_sorted(const std::vector<Interval>& from,
                                      const std::vector<Interval>& minus) {
    std::vector<Interval> out;
    std::size_t j = 0;
    for (const auto& F : from) {
        if (F.is_empty()) continue;
        while (j < minus.size() &&
               (minus[j].is_empty() ||
                bound_entirely_before(minus[j].hi(), F.lo())))
            ++j;
        Interval current = F;
        for (std::size_t k = j; k < minus.size() && !current.is_empty(); ++k) {
            const Interval& M = minus[k];
            if (M.is_empty()) continue;
            if (bound_entirely_before(current.hi(), M.lo())) break;
            auto pieces = complement_within(M, current);
            current = Interval::empty();
            for (auto& p : pieces) {
                // Anything left of M is final; the rest may still meet
                // later members.
                if (bound_entirely_before(p.hi(), M.lo()) ||
                    !bound_entirely_before(M.hi(), p.lo())) {
                    out.push_back(p);
                } else {
                    current = p;
                }
            }
        }
        if (!current.is_empty()) out.push_back(current);
    }
    return out;
}

std::vector<Interval> normalize_union(std::vector<Interval> pieces) {
    std::vector<Interval> work;
    for (auto& p : pieces)
        if (!p.is_empty()) work.push_back(std::move(p));
    if (work.empty()) return {};
    std::sort(work.begin(), work.end(), [](const Interval& a, const Interval& b) {
        return lower_bound_before(a.lo(), b.lo());
    });
    std::vector<Interval> out;
    Interval cur = work.front();
    auto touches = [](const Interval& a, const Interval& b) {
        if (!a.hi().is_finite() || !b.lo().is_finite()) return false;
        return compare(a.hi().value, b.lo().value).is_equal() &&
               (a.hi().closed || b.lo().closed);
    };
    for (std::size_t i = 1; i < work.size(); ++i) {
        const Interval& nxt = work[i];
        if (!are_disjoint(cur, nxt) || touches(cur, nxt)) {
            cur = Interval::make(cur.lo(), upper_bound_max(cur.hi(), nxt.hi()));
        } else {
            out.push_back(cur);
            cur = nxt;
        }
    }
    out.push_back(cur);
    return out;
}

LCNumber total_length(const std::vector<Interval>& pieces) {
    LCNumber acc = LCNumber::zero();
    for (const auto& p : pieces) acc = add(acc, length(p));
    return acc;
}

// --- countable families ------------------------------------------------------

IntervalSeq IntervalSeq::from_list(std::vector<Interval> pieces,
                                   bool pairwise_disjoint) {
    auto shared = std::make_shared<std::vector<Interval>>(std::move(pieces));
    long size = static_cast<long>(shared->size());
    IntervalSeq seq;
    seq.at = [shared, size](long n) {
        return (n >= 1 && n <= size) ? (*shared)[n - 1] : Interval::empty();
    };
    seq.decay.threshold = [size](const Rational&) { return size; };
    seq.pairwise_disjoint = pairwise_disjoint;
    return seq;
}

TermGenerator lengths_of(const IntervalSeq& seq) {
    auto at = seq.at;
    return {[at](long n) { return length(at(n)); }, seq.decay};
}

LCNumber sum_lengths(const IntervalSeq& seq, const Rational& K) {
    return sum_series(lengths_of(seq), K);
}

void validate_disjoint(const IntervalSeq& seq, const Rational& work_order,
                       int prefix) {
    if (!seq.pairwise_disjoint)
        throw OverlapDetected("interval family is not marked pairwise disjoint");
    std::vector<long> indices;
    for (long n = 1; n <= prefix; ++n) indices.push_back(n);
    long t = seq.decay.threshold(work_order);
    for (long n : {t, t + 1}) {
        if (n >= 1 && n <= t + 1 && n > prefix) indices.push_back(n);
    }
    std::vector<Interval> values;
    values.reserve(indices.size());
    for (long n : indices) values.push_back(seq.at(n));
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (!are_disjoint(values[i], values[j]))
                throw OverlapDetected(
                    "members " + std::to_string(indices[i]) + " and " +
                    std::to_string(indices[j]) + " of the family overlap");
}

IntervalSeq intersect_with_list(const IntervalSeq& seq,
                                const std::vector<Interval>& pieces) {
    if (pieces.empty()) return IntervalSeq::empty_seq();
    auto shared = std::make_shared<std::vector<Interval>>(pieces);
    long P = static_cast<long>(shared->size());
    auto at = seq.at;
    auto threshold = seq.decay.threshold;
    IntervalSeq out;
    out.at = [shared, P, at](long n) {
        long m = (n - 1) / P + 1;
        long j = (n - 1) % P;
        return intersect(at(m), (*shared)[j]);
    };
    out.decay.threshold = [threshold, P](const Rational& k) {
        return threshold(k) * P;
    };
    out.pairwise_disjoint = seq.pairwise_disjoint;
    return out;
}

IntervalSeq subtract_list_seq(const IntervalSeq& seq,
                              const std::vector<Interval>& minus) {
    auto shared = std::make_shared<std::vector<Interval>>(minus);
    long F = static_cast<long>(shared->size()) + 1;
    auto at = seq.at;
    auto threshold = seq.decay.threshold;
    IntervalSeq out;
    out.at = [shared, F, at](long n) {
        long m = (n - 1) / F + 1;
        long j = (n - 1) % F;
        auto pieces = subtract_list({at(m)}, *shared);
        return j < static_cast<long>(pieces.size()) ? pieces[j] : Interval::empty();
    };
    out.decay.threshold = [threshold, F](const Rational& k) {
        return threshold(k) * F;
    };
    out.pairwise_disjoint = seq.pairwise_disjoint;
    return out;
}

IntervalSeq intersect_seqs(const IntervalSeq& a, const IntervalSeq& b) {
    auto at_a = a.at;
    auto at_b = b.at;
    auto ta = a.decay.threshold;
    auto tb = b.decay.threshold;
    IntervalSeq out;
    out.at = [at_a, at_b](long n) {
        long s = isqrt_floor(n - 1) + 1;
        long p = n - (s - 1) * (s - 1);
        long i, j;
        if (p <= s - 1) {
            i = p;
            j = s;
        } else {
            i = s;
            j = p - (s - 1);
        }
        return intersect(at_a(i), at_b(j));
    };
    out.decay.threshold = [ta, tb](const Rational& k) {
        long m = std::max(ta(k), tb(k));
        return m * m;
    };
    out.pairwise_disjoint = a.pairwise_disjoint && b.pairwise_disjoint;
    return out;
}

IntervalSeq concat_seqs(const IntervalSeq& a, const IntervalSeq& b) {
    auto at_a = a.at;
    auto at_b = b.at;
    auto ta = a.decay.threshold;
    auto tb = b.decay.threshold;
    IntervalSeq out;
    out.at = [at_a, at_b](long n) {
        return (n % 2 == 1) ? at_a((n + 1) / 2) : at_b(n / 2);
    };
    out.decay.threshold = [ta, tb](const Rational& k) {
        return 2 * std::max(ta(k), tb(k)) + 2;
    };
    out.pairwise_disjoint = false;
    return out;
}

IntervalSeq prefix_then_tail(std::vector<Interval> prefix, const IntervalSeq& seq,
                             long from) {
    auto shared = std::make_shared<std::vector<Interval>>(std::move(prefix));
    long P = static_cast<long>(shared->size());
    auto at = seq.at;
    auto threshold = seq.decay.threshold;
    IntervalSeq out;
    out.at = [shared, P, at, from](long n) {
        if (n <= P) return (*shared)[n - 1];
        return at(from + (n - P));
    };
    out.decay.threshold = [threshold, P, from](const Rational& k) {
        return P + std::max(0L, threshold(k) - from);
    };
    out.pairwise_disjoint = seq.pairwise_disjoint;
    return out;
}

std::vector<Interval> significant_prefix(const IntervalSeq& seq, const Rational& K) {
    long N = seq.decay.threshold(K);
    std::vector<Interval> out;
    for (long n = 1; n <= N; ++n) {
        Interval p = seq.at(n);
        if (!p.is_empty()) out.push_back(p);
    }
    return out;
}

// --- cover refinement --------------------------------------------------------

Refinement refine(const IntervalSeq& outer, const IntervalSeq& inner,
                  const LCNumber& eps, int order_margin) {
    OrderResult eps_sign = compare_zero(eps);
    if (!eps_sign.is_greater())
        throw PrecisionExhausted("refine requires a strictly positive eps");
    Rational work = eps.terms().front().exponent + order_margin;

    long M = outer.decay.threshold(work);
    long N = inner.decay.threshold(work);

    std::vector<Interval> outer_pieces;
    for (long m = 1; m <= M; ++m) outer_pieces.push_back(outer.at(m));
    std::vector<Interval> inner_pieces;
    for (long n = 1; n <= N; ++n) inner_pieces.push_back(inner.at(n));

    // The refined inner part: every inner piece cut along the outer pieces.
    // Degenerate cuts carry no length and are left to the residue.
    std::vector<Interval> kept;
    std::vector<std::vector<Interval>> kept_by_outer(outer_pieces.size());
    for (const auto& ip : inner_pieces) {
        if (ip.is_empty()) continue;
        for (std::size_t m = 0; m < outer_pieces.size(); ++m) {
            Interval ov = intersect(ip, outer_pieces[m]);
            if (ov.is_empty()) continue;
            if (!compare_zero(length(ov)).is_greater()) continue;
            kept.push_back(ov);
            kept_by_outer[m].push_back(ov);
        }
    }

    std::vector<Interval> residue_finite;
    for (std::size_t m = 0; m < outer_pieces.size(); ++m) {
        if (outer_pieces[m].is_empty()) continue;
        auto leftover = subtract_list({outer_pieces[m]}, kept_by_outer[m]);
        residue_finite.insert(residue_finite.end(), leftover.begin(), leftover.end());
    }

    LCNumber finite_total = total_length(residue_finite);
    // Residue beyond the enumerated outer pieces sums strictly below d^work,
    // so the bound below certifies the whole residue against eps.
    LCNumber certified = add(finite_total, make_dq(work));
    OrderResult against = compare(certified, eps);
    if (!against.is_less_or_equal())
        throw PrecisionExhausted(
            "cannot certify the residue below eps at working order " +
            to_string(work) + ": explicit residue already sums to " +
            finite_total.str());

    Refinement result;
    result.kept = std::move(kept);
    result.residue_finite = residue_finite;
    result.residue = prefix_then_tail(std::move(residue_finite), outer, M);
    result.residue_finite_total = finite_total;
    return result;
}

} // namespace lc
