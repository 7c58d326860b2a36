#ifndef LC_MEASURE_HPP
#define LC_MEASURE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lc/set.hpp"

namespace lc {

enum class MeasureKind { Value, NotOuterMeasurable, Undecided };

// Verdict of an outer-measure evaluation. A Value is produced only when a
// constructive evaluation rule applies end to end; NotOuterMeasurable only
// on a positive divergence witness; Undecided otherwise. The trace lists
// the rules applied, one line per node.
struct MeasureResult {
    MeasureKind kind;
    std::optional<LCNumber> value;
    std::string witness;
    std::vector<std::string> trace;

    bool is_value() const { return kind == MeasureKind::Value; }
};

// Squeezing inner/outer disjoint-interval covers indexed by stage k, with
// the contract sum l(outer(k)) - sum l(inner(k)) <= d^k and nested unions.
// The gap is spot checked during evaluation.
struct CoverSequence {
    std::function<IntervalSeq(long k)> inner;
    std::function<IntervalSeq(long k)> outer;
};

struct StageResidual {
    long stage;                 // residue certified below d^stage
    LCNumber explicit_total;    // exact sum of the explicit residue pieces
    IntervalSeq residue;        // full residue family for this stage
};

// A set split into a disjoint countable union of intervals carrying all of
// its measure, plus a null remainder witnessed by shrinking residual covers.
struct Decomposition {
    std::vector<Interval> intervals;
    IntervalSeq intervals_seq;
    LCNumber interval_sum;      // exact sum over the listed pieces
    LCNumber squeeze_value;     // agrees with interval_sum at order K
    SetPtr null_part;
    std::vector<StageResidual> residuals;
    std::vector<std::string> trace;
};

enum class LVerdict { Yes, No, Unknown };

struct LCheckResult {
    LVerdict verdict;
    std::optional<LCNumber> measure;
    std::string witness;
    std::vector<std::string> trace;
};

struct CaratheodoryResult {
    bool holds;
    LCNumber whole;    // measure of the test set B
    LCNumber inside;   // measure of A & B
    LCNumber outside;  // measure of B \ A
    std::vector<std::string> trace;
};

struct InclusionExclusionResult {
    LCNumber union_measure;
    LCNumber sum_form; // M(A) + M(B) - M(A & B)
    bool equal;
};

struct ContinuityResult {
    LCNumber limit_of_partials;
    LCNumber measure_of_limit;
    bool equal;
};

// Outer measure of a representable set at truncation order K.
MeasureResult outer_measure(const SetPtr& A, const Rational& K);

// Squeeze value from a caller-supplied cover sequence. Throws
// GapCertificateViolation when a sampled stage gap exceeds d^k.
MeasureResult s_measure(const SetPtr& A, const CoverSequence& covers,
                        const Rational& K);

// Splits A into disjoint intervals plus a null part, iterating cover
// refinement with eps = d, d^2, ... Throws PrecisionExhausted when a stage
// residue cannot be certified.
Decomposition decompose(const SetPtr& A, const CoverSequence& covers,
                        const Rational& K);

LCheckResult is_L_measurable(const SetPtr& A, const Rational& K);

// Checks M(B) = M(A & B) + M(B \ A) exactly at order K. Throws NotEvaluable
// when any of the three measures has no value.
CaratheodoryResult caratheodory_check(const SetPtr& A, const SetPtr& B,
                                      const Rational& K);

// Returns (M(A | B), M(A) + M(B) - M(A & B)) and whether they agree at
// order K. Both operands must pass is_L_measurable.
InclusionExclusionResult measure_inclusion_exclusion(const SetPtr& A,
                                                     const SetPtr& B,
                                                     const Rational& K);

// Compares the limit of M(X & (A_1 | ... | A_N)) against the measure of
// X intersected with the full countable union. Divergent families surface
// as CertificateViolation.
ContinuityResult continuity_union(const CertifiedFamily& family, const SetPtr& X,
                                  const Rational& K);

// Dual statement for countable intersections.
ContinuityResult continuity_intersection(const CertifiedFamily& family,
                                         const SetPtr& X, const Rational& K);

// Checks M(A) <= M(B) + M(C) at order K; the containment of A in B | C is
// the caller's contract.
bool subadditivity_check(const SetPtr& A, const SetPtr& B, const SetPtr& C,
                         const Rational& K);

// Synthesizes the canonical squeezing covers for sets built from intervals,
// certified countable unions, and enumerated point sets whose components
// are pairwise separated; nullopt when no construction applies.
std::optional<CoverSequence> make_standard_covers(const SetPtr& A);

} // namespace lc

#endif
