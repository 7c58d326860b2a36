#include "lc/set.hpp"

#include <algorithm>
#include <numeric>

#include "lc/errors.hpp"

namespace lc {

SetPtr LCSet::empty() {
    return SetPtr(new LCSet(SetNode::Empty));
}

SetPtr LCSet::single(Interval I) {
    if (I.is_empty()) return empty();
    auto s = new LCSet(SetNode::Single);
    s->interval_ = std::move(I);
    return SetPtr(s);
}

SetPtr LCSet::finite_union(std::vector<SetPtr> parts) {
    if (parts.empty()) return empty();
    if (parts.size() == 1) return parts.front();
    auto s = new LCSet(SetNode::FiniteUnion);
    s->children_ = std::move(parts);
    return SetPtr(s);
}

SetPtr LCSet::union_of(SetPtr a, SetPtr b) {
    auto s = new LCSet(SetNode::Union);
    s->children_ = {std::move(a), std::move(b)};
    return SetPtr(s);
}

SetPtr LCSet::intersect_of(SetPtr a, SetPtr b) {
    auto s = new LCSet(SetNode::Intersect);
    s->children_ = {std::move(a), std::move(b)};
    return SetPtr(s);
}

SetPtr LCSet::diff_of(SetPtr a, SetPtr b) {
    auto s = new LCSet(SetNode::Diff);
    s->children_ = {std::move(a), std::move(b)};
    return SetPtr(s);
}

SetPtr LCSet::dense(DenseFamily family, Interval ambient) {
    if (ambient.is_empty()) return empty();
    auto s = new LCSet(SetNode::Dense);
    s->family_ = family;
    s->interval_ = std::move(ambient);
    return SetPtr(s);
}

SetPtr LCSet::points(PointEnumeration pts) {
    auto s = new LCSet(SetNode::PointSeq);
    s->points_ = std::move(pts);
    return SetPtr(s);
}

SetPtr LCSet::countable_union(CountableFamily family) {
    auto s = new LCSet(SetNode::CountableUnion);
    s->countable_ = std::move(family);
    return SetPtr(s);
}

SetPtr LCSet::certified_union(CertifiedFamily family) {
    auto s = new LCSet(SetNode::CertCountableUnion);
    s->certified_ = std::move(family);
    return SetPtr(s);
}

SetPtr LCSet::certified_intersection(CertifiedFamily family) {
    auto s = new LCSet(SetNode::CertCountableIntersect);
    s->certified_ = std::move(family);
    return SetPtr(s);
}

// --- the embedded rationals inside an interval -------------------------------

namespace {

struct RealBound {
    enum Kind { MinusInfinite, Finite, PlusInfinite } kind;
    Rational value; // valid for Finite
};

// Real numbers r with E(r) >= the given lower endpoint form a half line;
// this returns its left end (the boundary itself is re-checked exactly).
RealBound real_lower_bound(const Bound& lo) {
    if (!lo.is_finite()) return {RealBound::MinusInfinite, Rational()};
    const LCNumber& a = lo.value;
    if (a.is_exact_zero()) return {RealBound::Finite, Rational(0)};
    const Rational& lead_exp = a.terms().front().exponent;
    const Rational& lead_coeff = a.terms().front().coefficient;
    if (lead_exp < 0) {
        if (lead_coeff > 0) return {RealBound::PlusInfinite, Rational()};
        return {RealBound::MinusInfinite, Rational()};
    }
    if (lead_exp > 0) return {RealBound::Finite, Rational(0)};
    return {RealBound::Finite, lead_coeff};
}

RealBound real_upper_bound(const Bound& hi) {
    if (!hi.is_finite()) return {RealBound::PlusInfinite, Rational()};
    const LCNumber& b = hi.value;
    if (b.is_exact_zero()) return {RealBound::Finite, Rational(0)};
    const Rational& lead_exp = b.terms().front().exponent;
    const Rational& lead_coeff = b.terms().front().coefficient;
    if (lead_exp < 0) {
        if (lead_coeff > 0) return {RealBound::PlusInfinite, Rational()};
        return {RealBound::MinusInfinite, Rational()};
    }
    if (lead_exp > 0) return {RealBound::Finite, Rational(0)};
    return {RealBound::Finite, lead_coeff};
}

// Enumerates canonical fractions by height max(|p|, q), then denominator,
// then numerator; deterministic and independent of the interval.
Rational fraction_at(long index) {
    long seen = 0;
    for (long h = 1;; ++h) {
        for (long q = 1; q <= h; ++q) {
            for (long p = -h; p <= h; ++p) {
                if (std::max(std::labs(p), q) != h) continue;
                if (std::gcd(std::labs(p), q) != 1) continue;
                if (seen == index) return make_rational(p, q);
                ++seen;
            }
        }
    }
}

} // namespace

SetPtr LCSet::rational_points(Interval ambient) {
    PointEnumeration pts;
    pts.key = "Q" + ambient.str();
    pts.hull = ambient;
    if (ambient.is_empty()) {
        pts.at = [](long) { return std::optional<LCNumber>(); };
        return points(std::move(pts));
    }
    RealBound rlo = real_lower_bound(ambient.lo());
    RealBound rhi = real_upper_bound(ambient.hi());

    bool no_candidates =
        rlo.kind == RealBound::PlusInfinite || rhi.kind == RealBound::MinusInfinite ||
        (rlo.kind == RealBound::Finite && rhi.kind == RealBound::Finite &&
         rlo.value > rhi.value);
    bool single_candidate = rlo.kind == RealBound::Finite &&
                            rhi.kind == RealBound::Finite && rlo.value == rhi.value;

    if (no_candidates) {
        pts.at = [](long) { return std::optional<LCNumber>(); };
    } else if (single_candidate) {
        LCNumber candidate = embed_real(rlo.value);
        bool inside = contains(ambient, candidate);
        pts.at = [candidate, inside](long n) -> std::optional<LCNumber> {
            if (inside && n == 1) return candidate;
            return std::nullopt;
        };
    } else {
        // Infinitely many: every rational strictly between the real bounds
        // belongs; boundary candidates are checked exactly.
        Interval I = ambient;
        pts.at = [I](long n) -> std::optional<LCNumber> {
            long found = 0;
            for (long idx = 0;; ++idx) {
                Rational q = fraction_at(idx);
                LCNumber cand = embed_real(q);
                if (!contains(I, cand)) continue;
                ++found;
                if (found == n) return cand;
            }
        };
    }
    return points(std::move(pts));
}

// --- structural comparison, hulls, rendering ---------------------------------

bool structurally_equal(const SetPtr& a, const SetPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node() != b->node()) return false;
    switch (a->node()) {
        case SetNode::Empty:
            return true;
        case SetNode::Single:
            return a->interval() == b->interval();
        case SetNode::Dense:
            return a->family() == b->family() && a->ambient() == b->ambient();
        case SetNode::PointSeq:
            return !a->points().key.empty() && a->points().key == b->points().key;
        case SetNode::CountableUnion:
            return !a->countable().key.empty() &&
                   a->countable().key == b->countable().key;
        case SetNode::CertCountableUnion:
        case SetNode::CertCountableIntersect:
            return !a->certified().key.empty() &&
                   a->certified().key == b->certified().key;
        case SetNode::FiniteUnion:
        case SetNode::Union:
        case SetNode::Intersect:
        case SetNode::Diff: {
            if (a->children().size() != b->children().size()) return false;
            for (std::size_t i = 0; i < a->children().size(); ++i)
                if (!structurally_equal(a->children()[i], b->children()[i]))
                    return false;
            return true;
        }
    }
    return false;
}

namespace {

// Convex span of two intervals.
Interval join_hulls(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    Bound lo = a.lo(), hi = a.hi();
    // Weaker lower bound.
    if (!b.lo().is_finite())
        lo = b.lo();
    else if (lo.is_finite()) {
        OrderResult c = compare(b.lo().value, lo.value);
        if (c.is_less()) lo = b.lo();
        else if (c.is_equal()) lo = Bound::finite(lo.value, lo.closed || b.lo().closed);
    }
    if (!b.hi().is_finite())
        hi = b.hi();
    else if (hi.is_finite()) {
        OrderResult c = compare(b.hi().value, hi.value);
        if (c.is_greater()) hi = b.hi();
        else if (c.is_equal()) hi = Bound::finite(hi.value, hi.closed || b.hi().closed);
    }
    return Interval::make(lo, hi);
}

} // namespace

std::optional<Interval> hull_of(const SetPtr& s) {
    switch (s->node()) {
        case SetNode::Empty:
            return Interval::empty();
        case SetNode::Single:
            return s->interval();
        case SetNode::Dense:
            return s->ambient();
        case SetNode::PointSeq:
            return s->points().hull;
        case SetNode::CountableUnion:
            return s->countable().hull;
        case SetNode::CertCountableUnion:
            return s->certified().hull;
        case SetNode::CertCountableIntersect: {
            if (s->certified().hull) return s->certified().hull;
            return hull_of(s->certified().at(1));
        }
        case SetNode::FiniteUnion:
        case SetNode::Union: {
            Interval acc = Interval::empty();
            for (const auto& c : s->children()) {
                auto h = hull_of(c);
                if (!h) return std::nullopt;
                acc = join_hulls(acc, *h);
            }
            return acc;
        }
        case SetNode::Intersect: {
            auto hl = hull_of(s->left());
            auto hr = hull_of(s->right());
            if (hl && hr) return intersect(*hl, *hr);
            if (hl) return hl;
            return hr;
        }
        case SetNode::Diff:
            return hull_of(s->left());
    }
    return std::nullopt;
}

std::string describe(const SetPtr& s) {
    switch (s->node()) {
        case SetNode::Empty:
            return "{}";
        case SetNode::Single:
            return s->interval().str();
        case SetNode::Dense:
            return (s->family() == DenseFamily::T ? std::string("T(")
                                                  : std::string("S(")) +
                   s->ambient().str() + ")";
        case SetNode::PointSeq:
            return s->points().key.empty() ? "points(...)" : s->points().key;
        case SetNode::CountableUnion:
            return s->countable().key.empty() ? "union(n, ...)" : s->countable().key;
        case SetNode::CertCountableUnion:
            return s->certified().key.empty() ? "union(n, ...)" : s->certified().key;
        case SetNode::CertCountableIntersect:
            return s->certified().key.empty() ? "intersect(n, ...)"
                                              : s->certified().key;
        case SetNode::FiniteUnion: {
            if (s->children().size() > 6)
                return "(union of " + std::to_string(s->children().size()) +
                       " parts)";
            std::string out;
            for (const auto& c : s->children()) {
                if (!out.empty()) out += " | ";
                out += describe(c);
            }
            return "(" + out + ")";
        }
        case SetNode::Union:
            return "(" + describe(s->left()) + " | " + describe(s->right()) + ")";
        case SetNode::Intersect:
            return "(" + describe(s->left()) + " & " + describe(s->right()) + ")";
        case SetNode::Diff:
            return "(" + describe(s->left()) + " \\ " + describe(s->right()) + ")";
    }
    return "?";
}

// --- concrete countable families --------------------------------------------

IntervalSeq geometric_interval_seq() {
    IntervalSeq seq;
    seq.at = [](long n) {
        Rational base = Rational(1) - make_rational(1, n);
        LCNumber lo = embed_real(base);
        LCNumber hi = add(lo, make_dq(Rational(n)));
        return Interval::closed(lo, hi);
    };
    seq.decay.threshold = [](const Rational& k) {
        return std::max(0L, floor_long(k));
    };
    seq.pairwise_disjoint = true;
    return seq;
}

SetPtr set_family_geometric() {
    CountableFamily fam;
    fam.seq = geometric_interval_seq();
    fam.has_certificate = true;
    fam.hull = Interval::closed(embed_real(0), embed_real(1));
    fam.key = "union(n, [1-1/n, 1-1/n+d^n])";
    return LCSet::countable_union(std::move(fam));
}

IntervalSeq divergent_interval_seq() {
    IntervalSeq seq;
    seq.at = [](long i) {
        long n = i + 1; // members start at n = 2
        Rational q = make_rational(n - 1, n);
        LCNumber lo = make_dq(q);
        LCNumber hi = mul(embed_real(2), lo);
        return Interval::open(lo, hi);
    };
    // No genuine decay threshold exists; the conservative claim below is
    // only used to size spot checks and sums.
    seq.decay.threshold = [](const Rational& k) {
        return std::max(0L, floor_long(k)) + 1;
    };
    seq.pairwise_disjoint = true;
    return seq;
}

SetPtr set_family_divergent() {
    CountableFamily fam;
    fam.seq = divergent_interval_seq();
    fam.has_certificate = false;
    fam.lambda_bound = Rational(1);
    fam.hull = Interval::closed(embed_real(0), embed_real(1));
    fam.key = "union(n, (d^((n-1)/n), 2*d^((n-1)/n)))";
    return LCSet::countable_union(std::move(fam));
}

SetPtr set_family_two_block_union() {
    CertifiedFamily fam;
    fam.at = [](long n) {
        LCNumber one = embed_real(1);
        LCNumber left_hi = sub(one, embed_real(make_rational(1, n)));
        LCNumber right_lo = sub(one, make_dq(make_rational(1, n)));
        return LCSet::finite_union(
            {LCSet::single(Interval::closed(embed_real(0), left_hi)),
             LCSet::single(Interval::closed(right_lo, one))});
    };
    fam.increments.threshold = [](const Rational& k) {
        return std::max(0L, floor_long(k)) + 1;
    };
    fam.hull = Interval::closed(embed_real(0), embed_real(1));
    fam.key = "union(n, [0,1-1/n] ++ [1-d^(1/n),1])";
    return LCSet::certified_union(std::move(fam));
}

SetPtr set_family_shrinking_intersection() {
    CertifiedFamily fam;
    fam.at = [](long n) {
        LCNumber lo = make_dq(make_rational(1, n));
        LCNumber hi = embed_real(make_rational(1, n));
        return LCSet::single(Interval::open(lo, hi));
    };
    fam.increments.threshold = [](const Rational& k) {
        return std::max(0L, floor_long(k)) + 1;
    };
    fam.hull = Interval::open(make_dq(Rational(1)), embed_real(1));
    fam.key = "intersect(n, (d^(1/n), 1/n))";
    return LCSet::certified_intersection(std::move(fam));
}

SetPtr set_countable_from_pattern(const std::string& normalized_pattern,
                                  bool is_union) {
    const std::string& p = normalized_pattern;
    if (p == "[1-1/n,1-1/n+d^n]" || p == "[1-1/n,1-1/n+d^(n)]") {
        if (is_union) return set_family_geometric();
        throw UnknownPattern(p + " under intersect(n, .)");
    }
    if (p == "(d^((n-1)/n),2*d^((n-1)/n))") {
        if (is_union) return set_family_divergent();
        throw UnknownPattern(p + " under intersect(n, .)");
    }
    if (p == "[0,1-1/n]++[1-d^(1/n),1]") {
        if (is_union) return set_family_two_block_union();
        throw UnknownPattern(p + " under intersect(n, .)");
    }
    if (p == "(d^(1/n),1/n)") {
        if (!is_union) return set_family_shrinking_intersection();
        throw UnknownPattern(p + " under union(n, .): the members are nested, "
                                 "not a disjoint family");
    }
    throw UnknownPattern(p);
}

} // namespace lc
