#ifndef LC_SET_HPP
#define LC_SET_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lc/interval.hpp"

namespace lc {

class LCSet;
using SetPtr = std::shared_ptr<const LCSet>;

enum class SetNode {
    Empty,
    Single,
    FiniteUnion,
    CountableUnion,
    PointSeq,
    Dense,
    Intersect,
    Union,
    Diff,
    CertCountableUnion,
    CertCountableIntersect,
};

// The two symbolic dense families inside an ambient interval: elements whose
// expansions are eventually zero (T) and those whose expansions never stop
// (S). They partition the ambient interval, are disjoint, and are each dense
// in it; those facts are carried as axioms, not point generators.
enum class DenseFamily { T, S };

// A countable point set given by enumeration; at(n) returns the n-th point
// or nullopt once exhausted. Must be pure. The key identifies the
// enumeration for structural comparison of sets.
struct PointEnumeration {
    std::function<std::optional<LCNumber>(long n)> at;
    std::optional<Interval> hull;
    std::string key;
};

// A countable union of intervals. Either it carries a valid length-decay
// certificate (inside seq.decay), or it may carry a divergence witness: a
// bound that the orders of magnitude of the lengths never exceed, which is
// positive evidence that the cover sums cannot converge.
struct CountableFamily {
    IntervalSeq seq;
    bool has_certificate = false;
    std::optional<Rational> lambda_bound;
    std::optional<Interval> hull;
    std::string key;
};

// A countable family of sets with a claimed decay certificate on the measure
// increments of its partial unions (or intersections). The claim is spot
// checked during evaluation.
struct CertifiedFamily {
    std::function<SetPtr(long n)> at;
    DecayCertificate increments;
    std::optional<Interval> hull;
    std::string key;
};

class LCSet {
public:
    SetNode node() const { return node_; }

    const Interval& interval() const { return interval_; }
    const std::vector<SetPtr>& children() const { return children_; }
    const SetPtr& left() const { return children_[0]; }
    const SetPtr& right() const { return children_[1]; }
    DenseFamily family() const { return family_; }
    const Interval& ambient() const { return interval_; }
    const PointEnumeration& points() const { return points_; }
    const CountableFamily& countable() const { return countable_; }
    const CertifiedFamily& certified() const { return certified_; }

    static SetPtr empty();
    static SetPtr single(Interval I);
    static SetPtr finite_union(std::vector<SetPtr> parts);
    static SetPtr union_of(SetPtr a, SetPtr b);
    static SetPtr intersect_of(SetPtr a, SetPtr b);
    static SetPtr diff_of(SetPtr a, SetPtr b);
    static SetPtr dense(DenseFamily family, Interval ambient);
    static SetPtr points(PointEnumeration pts);
    // The embedded rationals lying in the ambient interval, as a point
    // enumeration.
    static SetPtr rational_points(Interval ambient);
    static SetPtr countable_union(CountableFamily family);
    static SetPtr certified_union(CertifiedFamily family);
    static SetPtr certified_intersection(CertifiedFamily family);

private:
    explicit LCSet(SetNode node) : node_(node) {}

    SetNode node_;
    Interval interval_;
    std::vector<SetPtr> children_;
    DenseFamily family_ = DenseFamily::T;
    PointEnumeration points_;
    CountableFamily countable_;
    CertifiedFamily certified_;
};

// Syntactic equality; generator-backed nodes compare by their identity keys.
bool structurally_equal(const SetPtr& a, const SetPtr& b);

// A bounding interval derived from the syntax, when one exists.
std::optional<Interval> hull_of(const SetPtr& s);

// Short rendering for traces and witnesses.
std::string describe(const SetPtr& s);

// --- concrete countable families --------------------------------------------

// Disjoint intervals with lengths d, d^2, d^3, ... inside [0, 1), the n-th
// sitting at 1 - 1/n.
IntervalSeq geometric_interval_seq();
SetPtr set_family_geometric();

// The family (d^((n-1)/n), 2 d^((n-1)/n)) for n >= 2: disjoint, with length
// orders (n-1)/n bounded by 1, so the lengths never vanish in the valuation.
IntervalSeq divergent_interval_seq();
SetPtr set_family_divergent();

// Members [0, 1-1/n] ++ [1-d^(1/n), 1]; the partial-union measures
// 1 - 1/n + d^(1/n) have non-vanishing increments, so the claimed
// certificate fails its spot checks.
SetPtr set_family_two_block_union();

// Members (d^(1/n), 1/n) under countable intersection; the partial measures
// 1/n - d^(1/n) likewise fail the claimed certificate.
SetPtr set_family_shrinking_intersection();

// union(n, .) / intersect(n, .) over a pattern key used by the DSL.
SetPtr set_countable_from_pattern(const std::string& normalized_pattern, bool is_union);

} // namespace lc

#endif
