#ifndef LC_INTERVAL_HPP
#define LC_INTERVAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lc/number.hpp"
#include "lc/series.hpp"

namespace lc {

enum class BoundKind { NegInfinite, Finite, PosInfinite };

// One end of an interval. Infinite bounds are symbolic and always open.
struct Bound {
    BoundKind kind = BoundKind::Finite;
    LCNumber value; // meaningful only for finite bounds
    bool closed = false;

    static Bound neg_infinite() { return {BoundKind::NegInfinite, LCNumber(), false}; }
    static Bound pos_infinite() { return {BoundKind::PosInfinite, LCNumber(), false}; }
    static Bound finite(LCNumber v, bool closed) {
        return {BoundKind::Finite, std::move(v), closed};
    }
    bool is_finite() const { return kind == BoundKind::Finite; }
};

// An interval over exact Levi-Civita endpoints, normalized at construction:
// crossed or open-degenerate bounds collapse to the empty interval.
// Endpoints must be exact; truncated endpoints would make every relation
// between sets indeterminate.
class Interval {
public:
    Interval() : empty_(true) {}

    static Interval empty() { return Interval(); }
    static Interval make(Bound lo, Bound hi);
    // Closed/open shorthand over finite endpoints.
    static Interval closed(const LCNumber& a, const LCNumber& b) {
        return make(Bound::finite(a, true), Bound::finite(b, true));
    }
    static Interval open(const LCNumber& a, const LCNumber& b) {
        return make(Bound::finite(a, false), Bound::finite(b, false));
    }
    static Interval point(const LCNumber& a) { return closed(a, a); }
    static Interval whole_line() {
        return make(Bound::neg_infinite(), Bound::pos_infinite());
    }

    bool is_empty() const { return empty_; }
    bool is_bounded() const {
        return empty_ || (lo_.is_finite() && hi_.is_finite());
    }
    bool is_point() const;

    // Valid only on nonempty intervals.
    const Bound& lo() const;
    const Bound& hi() const;

    std::string str() const;

private:
    bool empty_;
    Bound lo_, hi_;
};

bool operator==(const Interval& a, const Interval& b);
inline bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

inline std::ostream& operator<<(std::ostream& os, const Interval& I) {
    return os << I.str();
}

// b - a; zero for the empty interval and for points. Boundary kinds do not
// affect the length. Unbounded intervals have none.
LCNumber length(const Interval& I);

bool contains(const Interval& I, const LCNumber& x);
bool is_subset(const Interval& inner, const Interval& outer);
bool are_disjoint(const Interval& I, const Interval& J);

Interval intersect(const Interval& I, const Interval& J);

// J \ I as zero, one, or two disjoint intervals with complementary boundary
// kinds at the cuts.
std::vector<Interval> complement_within(const Interval& I, const Interval& J);

// The complement of a disjoint finite union in the whole line: at most N+1
// disjoint intervals, the outermost two unbounded. Throws OverlapDetected
// when the inputs are not pairwise disjoint.
std::vector<Interval> complement_of_finite_union(const std::vector<Interval>& Is);

// Subtracts a finite union from each of a finite family; result is the
// leftover pieces, disjoint when the inputs are.
std::vector<Interval> subtract_list(const std::vector<Interval>& from,
                                    const std::vector<Interval>& minus);

// Same result in a single merge walk; both inputs must be sorted by position
// and pairwise disjoint.
std::vector<Interval> subtract_sorted(const std::vector<Interval>& from,
                                      const std::vector<Interval>& minus);

// Merges overlapping or touching members into a canonical disjoint list,
// sorted by position.
std::vector<Interval> normalize_union(std::vector<Interval> pieces);

// Sum of lengths of a finite family.
LCNumber total_length(const std::vector<Interval>& pieces);

// --- countable families ------------------------------------------------------

// A lazy countable interval family (1-based). The decay certificate bounds
// the lengths: for n > threshold(k), the length of at(n) has order of
// magnitude above k. pairwise_disjoint is an asserted contract, validated
// by sampling.
struct IntervalSeq {
    std::function<Interval(long n)> at;
    DecayCertificate decay;
    bool pairwise_disjoint = false;

    static IntervalSeq from_list(std::vector<Interval> pieces,
                                 bool pairwise_disjoint = true);
    static IntervalSeq empty_seq() { return from_list({}); }
};

// Lengths of the family as a term generator, ready for sum_series.
TermGenerator lengths_of(const IntervalSeq& seq);

// Sum of lengths at order K.
LCNumber sum_lengths(const IntervalSeq& seq, const Rational& K);

// Checks all pairs among the first `prefix` indices plus spot checks at the
// certificate boundary for the working order.
void validate_disjoint(const IntervalSeq& seq, const Rational& work_order,
                       int prefix = 32);

// Every member intersected with a fixed disjoint finite family.
IntervalSeq intersect_with_list(const IntervalSeq& seq,
                                const std::vector<Interval>& pieces);

// Every member minus a fixed finite union.
IntervalSeq subtract_list_seq(const IntervalSeq& seq,
                              const std::vector<Interval>& minus);

// Pairwise intersections of two countable families, enumerated in square
// shells so the derived decay certificate stays valid.
IntervalSeq intersect_seqs(const IntervalSeq& a, const IntervalSeq& b);

// Interleaves two families; disjointness of the result is not inferred.
IntervalSeq concat_seqs(const IntervalSeq& a, const IntervalSeq& b);

// A finite prefix followed by a lazy tail taken from `seq` starting after
// index `from`.
IntervalSeq prefix_then_tail(std::vector<Interval> prefix, const IntervalSeq& seq,
                             long from);

// First indices whose lengths can reach order of magnitude <= K.
std::vector<Interval> significant_prefix(const IntervalSeq& seq, const Rational& K);

// --- cover refinement --------------------------------------------------------

struct Refinement {
    std::vector<Interval> kept;           // refined inner pieces, disjoint
    std::vector<Interval> residue_finite; // explicit residue pieces
    IntervalSeq residue;                  // residue_finite followed by the outer tail
    LCNumber residue_finite_total;        // exact sum of explicit residue lengths
};

// Splits an outer cover into the refined inner part plus a residue of total
// length below eps. Requires the inner union to lie inside the outer union
// with a length gap below eps/2; the bound on the residue is certified
// exactly at the working order, else PrecisionExhausted.
Refinement refine(const IntervalSeq& outer, const IntervalSeq& inner,
                  const LCNumber& eps, int order_margin = 8);

} // namespace lc

#endif
