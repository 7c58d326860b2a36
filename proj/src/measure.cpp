#include "lc/measure.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "lc/errors.hpp"

namespace lc {

namespace {

// Stage-indexed outer covers realizing a measure value: A is contained in
// the union of covers(k), and the sum of their lengths differs from the
// measure by something of order above k.
struct CoverFamily {
    std::function<IntervalSeq(long k)> at;
};

struct Evaluated {
    LCNumber measure;
    std::optional<CoverFamily> covers;
};

struct Outcome {
    MeasureKind kind;
    std::optional<Evaluated> val;
    std::string witness;

    static Outcome value(LCNumber m, std::optional<CoverFamily> covers) {
        return {MeasureKind::Value, Evaluated{std::move(m), std::move(covers)}, ""};
    }
    static Outcome not_outer(std::string w) {
        return {MeasureKind::NotOuterMeasurable, std::nullopt, std::move(w)};
    }
    static Outcome undecided(std::string w) {
        return {MeasureKind::Undecided, std::nullopt, std::move(w)};
    }
    bool is_value() const { return kind == MeasureKind::Value; }
    bool is_zero_value() const { return is_value() && !val->measure.has_terms(); }
};

CoverFamily constant_covers(std::vector<Interval> pieces) {
    auto seq = IntervalSeq::from_list(std::move(pieces));
    return {[seq](long) { return seq; }};
}

CoverFamily seq_covers(IntervalSeq seq) {
    return {[seq](long) { return seq; }};
}

std::vector<SetPtr> singles_of(const std::vector<Interval>& pieces) {
    std::vector<SetPtr> out;
    for (const auto& p : pieces)
        if (!p.is_empty()) out.push_back(LCSet::single(p));
    return out;
}

// Exact reduction of a set expression to a disjoint finite interval list
// when the expression is built from intervals alone.
std::optional<std::vector<Interval>> as_interval_list(const SetPtr& s) {
    switch (s->node()) {
        case SetNode::Empty:
            return std::vector<Interval>{};
        case SetNode::Single:
            return std::vector<Interval>{s->interval()};
        case SetNode::FiniteUnion:
        case SetNode::Union: {
            std::vector<Interval> acc;
            for (const auto& c : s->children()) {
                auto part = as_interval_list(c);
                if (!part) return std::nullopt;
                acc.insert(acc.end(), part->begin(), part->end());
            }
            return normalize_union(std::move(acc));
        }
        case SetNode::Intersect: {
            auto la = as_interval_list(s->left());
            auto lb = as_interval_list(s->right());
            if (!la || !lb) return std::nullopt;
            std::vector<Interval> acc;
            for (const auto& a : *la)
                for (const auto& b : *lb) {
                    Interval ov = intersect(a, b);
                    if (!ov.is_empty()) acc.push_back(ov);
                }
            return normalize_union(std::move(acc));
        }
        case SetNode::Diff: {
            auto la = as_interval_list(s->left());
            auto lb = as_interval_list(s->right());
            if (!la || !lb) return std::nullopt;
            return normalize_union(subtract_sorted(*la, *lb));
        }
        default:
            return std::nullopt;
    }
}

class Evaluator {
public:
    Evaluator(const Rational& K) : K_(K), stage_(floor_long(K) + 1) {}

    std::vector<std::string> trace;

    Outcome eval(const SetPtr& s, int depth) {
        SetPtr t = simplify(s, depth);
        if (auto list = as_interval_list(t)) {
            for (const auto& piece : *list)
                if (!piece.is_bounded()) {
                    note(depth, "unbounded", describe(t));
                    return Outcome::not_outer(
                        describe(t) +
                        ": contains an unbounded interval; no countable cover "
                        "has a converging length sum");
                }
            LCNumber total = total_length(*list);
            note(depth, "interval-algebra", describe(t) + " -> " + total.str());
            return Outcome::value(std::move(total), constant_covers(*list));
        }
        switch (t->node()) {
            case SetNode::PointSeq:
                return eval_points(t, depth);
            case SetNode::Dense:
                return eval_dense(t, depth);
            case SetNode::CountableUnion:
                return eval_countable(t, depth);
            case SetNode::Intersect:
                return eval_intersect(t, depth);
            case SetNode::Union:
            case SetNode::FiniteUnion:
                return eval_union(t, depth);
            case SetNode::Diff:
                return eval_diff(t, depth);
            case SetNode::CertCountableUnion:
                return eval_certified_union(t, depth);
            case SetNode::CertCountableIntersect:
                return eval_certified_intersection(t, depth);
            default:
                return Outcome::undecided("no evaluation rule for " + describe(t));
        }
    }

    // Limit of the partial-union measures of a certified family; throws
    // CertificateViolation when the claimed increments fail spot checks.
    LCNumber certified_union_limit(const CertifiedFamily& fam, int depth) {
        auto partial = [this, &fam, depth](long n) {
            return measure_of_partial(partial_union(fam, n), depth);
        };
        TermGenerator g{partial, fam.increments};
        return limit_sequence(g, K_);
    }

    LCNumber certified_intersection_limit(const CertifiedFamily& fam, int depth) {
        auto partial = [this, &fam, depth](long n) {
            return measure_of_partial(partial_intersection(fam, n), depth);
        };
        TermGenerator g{partial, fam.increments};
        return limit_sequence(g, K_);
    }

    const Rational& order() const { return K_; }
    long stage() const { return stage_; }

private:
    Rational K_;
    long stage_;

    void note(int depth, const std::string& rule, const std::string& text) {
        trace.push_back(std::string(2 * depth, ' ') + "[" + rule + "] " + text);
    }

    // --- syntactic rewrites ---------------------------------------------------

    SetPtr simplify(const SetPtr& s, int depth) {
        switch (s->node()) {
            case SetNode::Union:
            case SetNode::Intersect:
            case SetNode::Diff: {
                SetPtr a = simplify(s->left(), depth);
                SetPtr b = simplify(s->right(), depth);
                if (s->node() == SetNode::Union) return simplify_union(a, b, depth);
                if (s->node() == SetNode::Intersect)
                    return simplify_intersect(a, b, depth);
                return simplify_diff(a, b, depth);
            }
            case SetNode::FiniteUnion: {
                std::vector<SetPtr> kept;
                for (const auto& c : s->children()) {
                    SetPtr sc = simplify(c, depth);
                    if (sc->node() != SetNode::Empty) kept.push_back(sc);
                }
                return LCSet::finite_union(std::move(kept));
            }
            default:
                return s;
        }
    }

    SetPtr simplify_union(const SetPtr& a, const SetPtr& b, int depth) {
        if (a->node() == SetNode::Empty) return b;
        if (b->node() == SetNode::Empty) return a;
        if (structurally_equal(a, b)) return a;
        // The two dense families partition their ambient interval.
        if (a->node() == SetNode::Dense && b->node() == SetNode::Dense &&
            a->family() != b->family() && a->ambient() == b->ambient()) {
            note(depth, "dense-partition",
                 describe(a) + " | " + describe(b) + " -> " + a->ambient().str());
            return LCSet::single(a->ambient());
        }
        return LCSet::union_of(a, b);
    }

    SetPtr simplify_intersect(const SetPtr& a, const SetPtr& b, int depth) {
        if (a->node() == SetNode::Empty || b->node() == SetNode::Empty)
            return LCSet::empty();
        if (structurally_equal(a, b)) return a;
        if (a->node() == SetNode::Dense && b->node() == SetNode::Dense) {
            Interval common = intersect(a->ambient(), b->ambient());
            if (a->family() != b->family()) {
                note(depth, "disjoint-families",
                     describe(a) + " & " + describe(b) + " -> {}");
                return LCSet::empty();
            }
            note(depth, "dense-restricts",
                 describe(a) + " & " + describe(b) + " -> dense in " + common.str());
            return LCSet::dense(a->family(), common);
        }
        // (X | C) & (Y | C) -> (X & Y) | C for a shared component C.
        if (a->node() == SetNode::Union && b->node() == SetNode::Union) {
            for (const SetPtr& ca : {a->left(), a->right()}) {
                for (const SetPtr& cb : {b->left(), b->right()}) {
                    if (!structurally_equal(ca, cb)) continue;
                    SetPtr xa = structurally_equal(ca, a->left()) ? a->right()
                                                                  : a->left();
                    SetPtr yb = structurally_equal(cb, b->left()) ? b->right()
                                                                  : b->left();
                    note(depth, "shared-union-factor",
                         "(" + describe(xa) + " | C) & (" + describe(yb) +
                             " | C) -> (" + describe(xa) + " & " + describe(yb) +
                             ") | C with C = " + describe(ca));
                    return simplify_union(
                        simplify_intersect(xa, yb, depth + 1), ca, depth);
                }
            }
        }
        // (X | C) & C -> C.
        if (a->node() == SetNode::Union) {
            if (structurally_equal(a->left(), b) ||
                structurally_equal(a->right(), b))
                return b;
        }
        if (b->node() == SetNode::Union) {
            if (structurally_equal(b->left(), a) ||
                structurally_equal(b->right(), a))
                return a;
        }
        return LCSet::intersect_of(a, b);
    }

    SetPtr simplify_diff(const SetPtr& a, const SetPtr& b, int depth) {
        if (a->node() == SetNode::Empty) return a;
        if (b->node() == SetNode::Empty) return a;
        if (structurally_equal(a, b)) return LCSet::empty();
        if (a->node() == SetNode::Dense && b->node() == SetNode::Dense) {
            if (a->family() != b->family()) {
                note(depth, "disjoint-families",
                     describe(a) + " \\ " + describe(b) + " -> " + describe(a));
                return a;
            }
            auto leftover = complement_within(b->ambient(), a->ambient());
            std::vector<SetPtr> parts;
            for (const auto& piece : leftover)
                parts.push_back(LCSet::dense(a->family(), piece));
            note(depth, "dense-restricts",
                 describe(a) + " \\ " + describe(b) + " -> dense in the leftover");
            return LCSet::finite_union(std::move(parts));
        }
        return LCSet::diff_of(a, b);
    }

    // --- leaf rules -----------------------------------------------------------

    Outcome eval_points(const SetPtr& s, int depth) {
        const PointEnumeration& pts = s->points();
        note(depth, "point-set-null",
             describe(s) + " -> 0 (each point n covered at stage k by an "
                           "interval of length d^(n+k))");
        auto at = pts.at;
        CoverFamily covers{[at](long k) {
            IntervalSeq seq;
            seq.at = [at, k](long n) {
                auto p = at(n);
                if (!p) return Interval::empty();
                return Interval::make(
                    Bound::finite(*p, true),
                    Bound::finite(add(*p, make_dq(Rational(n + k))), true));
            };
            seq.decay.threshold = [k](const Rational& q) {
                return std::max(0L, floor_long(q) - k + 1);
            };
            seq.pairwise_disjoint = false;
            return seq;
        }};
        return Outcome::value(LCNumber::zero(), covers);
    }

    Outcome eval_dense(const SetPtr& s, int depth) {
        LCNumber len = length(s->ambient());
        note(depth, "dense-full-measure",
             describe(s) + " -> " + len.str() +
                 " (every interval cover of a dense subset pays the full length)");
        return Outcome::value(len, constant_covers({s->ambient()}));
    }

    Outcome eval_countable(const SetPtr& s, int depth) {
        const CountableFamily& fam = s->countable();
        validate_disjoint(fam.seq, K_);
        if (fam.has_certificate) {
            try {
                LCNumber sum = sum_lengths(fam.seq, K_);
                note(depth, "certified-length-sum",
                     describe(s) + " -> " + sum.str());
                return Outcome::value(sum, seq_covers(fam.seq));
            } catch (const CertificateViolation& e) {
                note(depth, "length-decay-violated", describe(s));
                return Outcome::not_outer(describe(s) +
                                          ": length-decay certificate failed (" +
                                          e.what() + ")");
            }
        }
        if (fam.lambda_bound) {
            // Positive divergence witness: sampled lengths confirm the bound,
            // so the lengths do not vanish and no cover sum can converge.
            std::string samples;
            for (long n : {1L, 2L, 4L, 8L, 16L, 32L}) {
                LCNumber len = length(fam.seq.at(n));
                ExtRational lam = lambda(len);
                if (lam > ExtRational(*fam.lambda_bound))
                    return Outcome::undecided(
                        describe(s) + ": claimed divergence bound " +
                        to_string(*fam.lambda_bound) + " fails at n=" +
                        std::to_string(n));
                if (!samples.empty()) samples += ", ";
                samples += "lambda(l(I_" + std::to_string(n) + "))=" + lam.str();
            }
            note(depth, "lengths-not-null", describe(s));
            return Outcome::not_outer(
                describe(s) + ": interval lengths have order of magnitude <= " +
                to_string(*fam.lambda_bound) + " for all n (" + samples +
                "); the lengths do not vanish in the valuation, so no cover sum "
                "converges");
        }
        return Outcome::undecided(describe(s) +
                                  ": countable union carries neither a "
                                  "length-decay certificate nor a divergence "
                                  "witness");
    }

    // --- composite rules ------------------------------------------------------

    Outcome eval_intersect(const SetPtr& s, int depth) {
        const SetPtr& X = s->left();
        const SetPtr& Y = s->right();
        auto lx = as_interval_list(X);
        auto ly = as_interval_list(Y);
        // One side a finite interval list: section the other side's covers.
        if (lx || ly) {
            const std::vector<Interval>& list = lx ? *lx : *ly;
            const SetPtr& other = lx ? Y : X;
            if (list.empty()) {
                note(depth, "empty-operand", describe(s) + " -> 0");
                return Outcome::value(LCNumber::zero(), constant_covers({}));
            }
            if (other->node() == SetNode::Dense) {
                std::vector<Interval> pieces;
                for (const auto& J : list) {
                    Interval ov = intersect(other->ambient(), J);
                    if (!ov.is_empty()) pieces.push_back(ov);
                }
                LCNumber m = total_length(pieces);
                note(depth, "dense-restricts",
                     describe(s) + " -> " + m.str());
                return Outcome::value(m, constant_covers(pieces));
            }
            Outcome o = eval(other, depth + 1);
            if (!o.is_value())
                return Outcome::undecided("intersection with " + describe(other) +
                                          ": " + o.witness);
            if (o.is_zero_value()) {
                note(depth, "inside-null", describe(s) + " -> 0");
                return Outcome::value(o.val->measure, o.val->covers);
            }
            if (!o.val->covers)
                return Outcome::undecided(describe(other) +
                                          " has a value but exposes no stage "
                                          "covers to section");
            auto parent = *o.val->covers;
            CoverFamily covers{[parent, list](long k) {
                return intersect_with_list(parent.at(k), list);
            }};
            LCNumber m = sum_lengths(covers.at(stage_), K_);
            note(depth, "cover-sections", describe(s) + " -> " + m.str());
            return Outcome::value(m, covers);
        }
        // One side a certified countable disjoint union: section against the
        // whole family.
        for (auto [fst, snd] : {std::pair{X, Y}, std::pair{Y, X}}) {
            if (fst->node() == SetNode::CountableUnion &&
                fst->countable().has_certificate) {
                Outcome o = eval(snd, depth + 1);
                if (!o.is_value())
                    return Outcome::undecided("intersection with " + describe(snd) +
                                              ": " + o.witness);
                if (o.is_zero_value()) {
                    note(depth, "inside-null", describe(s) + " -> 0");
                    return Outcome::value(o.val->measure, o.val->covers);
                }
                if (!o.val->covers)
                    return Outcome::undecided(describe(snd) +
                                              " exposes no stage covers");
                IntervalSeq family = fst->countable().seq;
                auto parent = *o.val->covers;
                CoverFamily covers{[parent, family](long k) {
                    return intersect_seqs(parent.at(k), family);
                }};
                LCNumber m = sum_lengths(covers.at(stage_), K_);
                note(depth, "countable-sections", describe(s) + " -> " + m.str());
                return Outcome::value(m, covers);
            }
        }
        // A null operand makes the intersection null.
        for (const SetPtr& side : {X, Y}) {
            if (side->node() == SetNode::PointSeq ||
                side->node() == SetNode::CertCountableUnion ||
                side->node() == SetNode::CertCountableIntersect) {
                Outcome o = eval(side, depth + 1);
                if (o.is_zero_value()) {
                    note(depth, "inside-null", describe(s) + " -> 0");
                    return Outcome::value(o.val->measure, o.val->covers);
                }
            }
        }
        return Outcome::undecided(
            describe(s) +
            ": no sectioning rule applies; intersections are only evaluable "
            "against interval families or null sets");
    }

    Outcome eval_union(const SetPtr& s, int depth) {
        std::vector<SetPtr> parts;
        if (s->node() == SetNode::FiniteUnion)
            parts = s->children();
        else
            parts = {s->left(), s->right()};
        // Fold left over binary unions.
        Outcome acc = eval(parts[0], depth + 1);
        SetPtr acc_set = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) {
            acc = eval_binary_union(acc_set, acc, parts[i], depth);
            acc_set = LCSet::union_of(acc_set, parts[i]);
            if (!acc.is_value()) return acc;
        }
        return acc;
    }

    Outcome eval_binary_union(const SetPtr& X, Outcome ox, const SetPtr& Y,
                              int depth) {
        // A dense component absorbs any syntactic subset of its ambient
        // interval: the union stays dense and keeps the full length.
        if (X->node() == SetNode::Dense || Y->node() == SetNode::Dense) {
            const SetPtr& d = X->node() == SetNode::Dense ? X : Y;
            const SetPtr& o = X->node() == SetNode::Dense ? Y : X;
            auto ho = hull_of(o);
            if (ho && is_subset(*ho, d->ambient())) {
                LCNumber len = length(d->ambient());
                note(depth, "dense-absorbs",
                     describe(d) + " | " + describe(o) + " -> " + len.str() +
                         " (the union is still dense in " + d->ambient().str() +
                         ")");
                return Outcome::value(len, constant_covers({d->ambient()}));
            }
        }
        if (!ox.is_value())
            return Outcome::undecided("union operand " + describe(X) + ": " +
                                      ox.witness);
        Outcome oy = eval(Y, depth + 1);
        if (!oy.is_value())
            return Outcome::undecided("union operand " + describe(Y) + ": " +
                                      oy.witness);
        if (!ox.val->covers || !oy.val->covers)
            return Outcome::undecided(describe(X) + " | " + describe(Y) +
                                      ": an operand exposes no stage covers");
        auto cx = *ox.val->covers;
        auto cy = *oy.val->covers;

        // Adding a null set never changes the measure.
        if (ox.is_zero_value() || oy.is_zero_value()) {
            const Outcome& main = ox.is_zero_value() ? oy : ox;
            note(depth, "null-extension",
                 describe(X) + " | " + describe(Y) + " -> " +
                     main.val->measure.str());
            CoverFamily covers{[cx, cy](long k) {
                return concat_seqs(cx.at(k), cy.at(k));
            }};
            return Outcome::value(main.val->measure, covers);
        }
        // Separated operands add.
        auto hx = hull_of(X);
        auto hy = hull_of(Y);
        if (hx && hy && are_disjoint(*hx, *hy)) {
            LCNumber m = add(ox.val->measure, oy.val->measure);
            note(depth, "separated-sum",
                 describe(X) + " | " + describe(Y) + " -> " + m.str());
            CoverFamily covers{[cx, cy](long k) {
                return concat_seqs(cx.at(k), cy.at(k));
            }};
            return Outcome::value(m, covers);
        }
        // General case: measure X, then the part of Y outside a stage cover
        // of X; the leftover measures converge with the cover gaps.
        std::vector<Interval> prefix =
            significant_prefix(cx.at(stage_), Rational(stage_));
        SetPtr remainder =
            LCSet::diff_of(Y, LCSet::finite_union(singles_of(prefix)));
        Outcome orem = eval(remainder, depth + 1);
        if (!orem.is_value() || !orem.val->covers)
            return Outcome::undecided(
                describe(X) + " | " + describe(Y) +
                ": the remainder of the second operand outside the first's "
                "stage cover is not evaluable");
        LCNumber m = add(ox.val->measure, orem.val->measure);
        // The stage value approximates the limit of the leftover measures
        // only below the working order.
        if (m.order() > ExtRational(K_)) m = truncate(m, K_);
        note(depth, "remainder-sum",
             describe(X) + " | " + describe(Y) + " -> " + m.str());
        SetPtr Ycopy = Y;
        auto self = this;
        CoverFamily covers{[self, cx, Ycopy, depth](long k) {
            std::vector<Interval> pref =
                significant_prefix(cx.at(k), Rational(k));
            SetPtr rem =
                LCSet::diff_of(Ycopy, LCSet::finite_union(singles_of(pref)));
            Outcome orem2 = self->eval(rem, depth + 1);
            if (!orem2.is_value() || !orem2.val->covers)
                throw PrecisionExhausted("stage covers of a union remainder "
                                         "became unavailable");
            return concat_seqs(cx.at(k), orem2.val->covers->at(k));
        }};
        return Outcome::value(m, covers);
    }

    Outcome eval_diff(const SetPtr& s, int depth) {
        const SetPtr& X = s->left();
        const SetPtr& Y = s->right();

        // Removing a set of measure zero changes nothing.
        if (Y->node() == SetNode::PointSeq ||
            Y->node() == SetNode::CertCountableUnion ||
            Y->node() == SetNode::CertCountableIntersect) {
            Outcome oy = eval(Y, depth + 1);
            if (oy.is_zero_value()) {
                Outcome ox = eval(X, depth + 1);
                if (!ox.is_value()) return ox;
                note(depth, "null-removal",
                     describe(s) + " -> " + ox.val->measure.str());
                return ox;
            }
        }
        // Subtracting a finite interval list: subtract it from the covers.
        if (auto ly = as_interval_list(Y)) {
            Outcome ox = eval(X, depth + 1);
            if (!ox.is_value())
                return Outcome::undecided("difference base " + describe(X) +
                                          ": " + ox.witness);
            if (ox.is_zero_value()) {
                note(depth, "inside-null", describe(s) + " -> 0");
                return Outcome::value(ox.val->measure, ox.val->covers);
            }
            if (!ox.val->covers)
                return Outcome::undecided(describe(X) +
                                          " exposes no stage covers");
            auto parent = *ox.val->covers;
            auto list = *ly;
            CoverFamily covers{[parent, list](long k) {
                return subtract_list_seq(parent.at(k), list);
            }};
            LCNumber m = sum_lengths(covers.at(stage_), K_);
            note(depth, "removed-intervals", describe(s) + " -> " + m.str());
            return Outcome::value(m, covers);
        }
        // Subtracting a certified countable union: the finite removals
        // converge, with the family's length decay as the rate.
        if (Y->node() == SetNode::CountableUnion &&
            Y->countable().has_certificate) {
            IntervalSeq family = Y->countable().seq;
            validate_disjoint(family, K_);
            Outcome ox = eval(X, depth + 1);
            if (!ox.is_value() || !ox.val->covers)
                return Outcome::undecided("difference base " + describe(X) +
                                          " is not evaluable with covers");
            auto parent = *ox.val->covers;
            SetPtr Xcopy = X;
            auto self = this;
            auto memo = std::make_shared<std::map<long, LCNumber>>();
            auto partial_measure = [self, Xcopy, family, depth, memo](long N) {
                auto hit = memo->find(N);
                if (hit != memo->end()) return hit->second;
                std::vector<Interval> prefix;
                for (long n = 1; n <= N; ++n) {
                    Interval p = family.at(n);
                    if (!p.is_empty()) prefix.push_back(p);
                }
                SetPtr part = LCSet::diff_of(
                    Xcopy, LCSet::finite_union(singles_of(prefix)));
                Outcome o = self->eval(part, depth + 2);
                if (!o.is_value())
                    throw NotEvaluable("finite removal is not evaluable: " +
                                       o.witness);
                memo->emplace(N, o.val->measure);
                return o.val->measure;
            };
            TermGenerator g{partial_measure, family.decay};
            LCNumber m = limit_sequence(g, K_);
            note(depth, "removal-limit", describe(s) + " -> " + m.str());
            auto threshold = family.decay.threshold;
            CoverFamily covers{[parent, family, threshold](long k) {
                long N = threshold(Rational(k));
                std::vector<Interval> prefix;
                for (long n = 1; n <= N; ++n) {
                    Interval p = family.at(n);
                    if (!p.is_empty()) prefix.push_back(p);
                }
                return subtract_list_seq(parent.at(k), prefix);
            }};
            return Outcome::value(m, covers);
        }
        // Removing a dense family flips it to the complementary family
        // inside the removed region.
        if (Y->node() == SetNode::Dense) {
            if (auto lx = as_interval_list(X)) {
                DenseFamily co = Y->family() == DenseFamily::T ? DenseFamily::S
                                                               : DenseFamily::T;
                std::vector<SetPtr> parts;
                auto outside = subtract_list(*lx, {Y->ambient()});
                for (const auto& p : outside) parts.push_back(LCSet::single(p));
                for (const auto& piece : *lx) {
                    Interval ov = intersect(piece, Y->ambient());
                    if (!ov.is_empty())
                        parts.push_back(LCSet::dense(co, ov));
                }
                SetPtr rewritten = LCSet::finite_union(std::move(parts));
                note(depth, "complement-family",
                     describe(s) + " -> " + describe(rewritten));
                return eval(rewritten, depth + 1);
            }
            return Outcome::undecided(describe(s) +
                                      ": removal of a dense family is only "
                                      "evaluable from interval sets");
        }
        return Outcome::undecided(describe(s) + ": no removal rule applies");
    }

    // --- certified countable nodes --------------------------------------------

    SetPtr partial_union(const CertifiedFamily& fam, long n) {
        std::vector<SetPtr> parts;
        for (long i = 1; i <= n; ++i) parts.push_back(fam.at(i));
        return LCSet::finite_union(std::move(parts));
    }

    SetPtr partial_intersection(const CertifiedFamily& fam, long n) {
        SetPtr acc = fam.at(1);
        for (long i = 2; i <= n; ++i) acc = LCSet::intersect_of(acc, fam.at(i));
        return acc;
    }

    LCNumber measure_of_partial(const SetPtr& part, int depth) {
        Outcome o = eval(part, depth + 2);
        if (!o.is_value())
            throw NotEvaluable("partial set is not evaluable: " + o.witness);
        return o.val->measure;
    }

    Outcome eval_certified_union(const SetPtr& s, int depth) {
        const CertifiedFamily& fam = s->certified();
        LCNumber m;
        try {
            m = certified_union_limit(fam, depth);
        } catch (const CertificateViolation& e) {
            note(depth, "increments-not-null", describe(s));
            return Outcome::undecided(
                describe(s) + ": " + e.what() +
                "; the partial-union measures do not converge in the "
                "valuation topology");
        }
        note(depth, "certified-union-limit", describe(s) + " -> " + m.str());
        auto covers = certified_union_covers(fam, depth);
        return Outcome::value(m, covers);
    }

    Outcome eval_certified_intersection(const SetPtr& s, int depth) {
        const CertifiedFamily& fam = s->certified();
        LCNumber m;
        try {
            m = certified_intersection_limit(fam, depth);
        } catch (const CertificateViolation& e) {
            note(depth, "increments-not-null", describe(s));
            return Outcome::undecided(
                describe(s) + ": " + e.what() +
                "; the partial-intersection measures do not converge in the "
                "valuation topology");
        }
        note(depth, "certified-intersection-limit",
             describe(s) + " -> " + m.str());
        // A cover of any partial intersection covers the full one.
        auto self = this;
        CertifiedFamily fc = fam;
        CoverFamily covers{[self, fc, depth](long k) {
            long N = fc.increments.threshold(Rational(k)) + 1;
            SetPtr part = self->partial_intersection(fc, N);
            Outcome o = self->eval(part, depth + 2);
            if (!o.is_value() || !o.val->covers)
                throw PrecisionExhausted(
                    "partial intersection exposes no covers");
            return o.val->covers->at(k);
        }};
        return Outcome::value(m, covers);
    }

    // Exact cover of the full union: the pieces of a deep partial union plus
    // every later increment; the sums telescope to the limit measure.
    std::optional<CoverFamily> certified_union_covers(const CertifiedFamily& fam,
                                                      int depth) {
        (void)depth;
        for (long i = 1; i <= 4; ++i)
            if (!as_interval_list(fam.at(i))) return std::nullopt;
        CertifiedFamily fc = fam;
        auto self = this;
        return CoverFamily{[self, fc](long k) {
            long N = fc.increments.threshold(Rational(k)) + 1;
            auto base = as_interval_list(self->partial_union(fc, N));
            if (!base)
                throw PrecisionExhausted("partial union is not interval-like");
            constexpr long fanout = 8;
            auto at_tail = [self, fc, N](long idx) {
                long t = (idx - 1) / fanout + 1;
                long j = (idx - 1) % fanout;
                auto big = as_interval_list(self->partial_union(fc, N + t));
                auto small = as_interval_list(self->partial_union(fc, N + t - 1));
                if (!big || !small)
                    throw PrecisionExhausted("partial union is not interval-like");
                auto inc = subtract_list(*big, *small);
                return j < static_cast<long>(inc.size()) ? inc[j]
                                                         : Interval::empty();
            };
            auto inc_threshold = fc.increments.threshold;
            IntervalSeq tail;
            tail.at = at_tail;
            tail.decay.threshold = [inc_threshold, N](const Rational& q) {
                return std::max(0L, inc_threshold(q) - N + 1) * fanout;
            };
            tail.pairwise_disjoint = false;
            return prefix_then_tail(*base, tail, 0);
        }};
    }
};

} // namespace

// --- public operations --------------------------------------------------------

MeasureResult outer_measure(const SetPtr& A, const Rational& K) {
    Evaluator ev(K);
    Outcome o = ev.eval(A, 0);
    MeasureResult r;
    r.kind = o.kind;
    r.trace = ev.trace;
    if (o.is_value()) {
        LCNumber m = o.val->measure;
        if (m.order().is_finite() && ExtRational(K) < m.order())
            m = truncate(m, K);
        r.value = m;
    } else {
        r.witness = o.witness;
    }
    return r;
}

MeasureResult s_measure(const SetPtr& A, const CoverSequence& covers,
                        const Rational& K) {
    (void)A;
    // Spot check the squeeze: the outer sum may exceed the inner sum by at
    // most d^k at each sampled stage.
    long k0 = floor_long(K) + 1;
    for (long k : {1L, 2L, k0, k0 + 1}) {
        if (k < 1) continue;
        Rational work = Rational(k) + 4;
        LCNumber so = sum_lengths(covers.outer(k), work);
        LCNumber si = sum_lengths(covers.inner(k), work);
        LCNumber gap = sub(so, si);
        OrderResult c = compare(gap, make_dq(Rational(k)));
        if (c.is_greater())
            throw GapCertificateViolation(
                "stage " + std::to_string(k) + ": cover gap " + gap.str() +
                " exceeds d^" + std::to_string(k));
    }
    auto inner = covers.inner;
    auto at = [inner, &K](long k) { return sum_lengths(inner(k), K); };
    TermGenerator g{at, {[](const Rational& q) { return floor_long(q) + 1; }}};
    LCNumber m;
    try {
        m = limit_sequence(g, K);
    } catch (const CertificateViolation& e) {
        throw GapCertificateViolation(e.what());
    }
    MeasureResult r;
    r.kind = MeasureKind::Value;
    r.value = m;
    r.trace.push_back("[squeeze-limit] inner cover sums converge to " + m.str());
    return r;
}

Decomposition decompose(const SetPtr& A, const CoverSequence& covers,
                        const Rational& K) {
    Decomposition out;
    MeasureResult squeeze = s_measure(A, covers, K);
    long k0 = floor_long(K) + 1;
    std::vector<Interval> accumulated;
    for (long k = 1; k <= k0; ++k) {
        // Stage k: refine the (k+1)-stage covers, whose gap is below
        // d^(k+1) < d^k / 2, against eps = d^k.
        Refinement ref =
            refine(covers.outer(k + 1), covers.inner(k + 1), make_dq(Rational(k)));
        long added = 0;
        for (const auto& piece : ref.kept) {
            auto fresh = subtract_list({piece}, accumulated);
            for (auto& f : fresh) {
                if (!compare_zero(length(f)).is_greater()) continue;
                accumulated.push_back(f);
                ++added;
            }
        }
        out.residuals.push_back({k, ref.residue_finite_total, ref.residue});
        long boundary_pieces = 0;
        for (const auto& piece : ref.residue_finite)
            if (!compare_zero(length(piece)).is_greater()) ++boundary_pieces;
        out.trace.push_back("[decompose-stage " + std::to_string(k) + "] kept " +
                            std::to_string(added) + " new pieces, residue " +
                            ref.residue_finite_total.str() + " < d^" +
                            std::to_string(k));
        if (boundary_pieces > 0)
            out.trace.push_back(
                "[decompose-stage " + std::to_string(k) + "] " +
                std::to_string(boundary_pieces) +
                " zero-length boundary pieces in the residue; their endpoint "
                "kinds matter for set identity but not for any length");
    }
    accumulated = normalize_union(std::move(accumulated));
    out.intervals = accumulated;
    out.intervals_seq = IntervalSeq::from_list(accumulated);
    out.interval_sum = total_length(accumulated);
    out.squeeze_value = *squeeze.value;
    if (!agrees_to(out.interval_sum, *squeeze.value, K))
        throw PrecisionExhausted(
            "decomposition intervals sum to " + out.interval_sum.str() +
            " but the squeeze value is " + squeeze.value->str());
    out.null_part =
        LCSet::diff_of(A, LCSet::finite_union(singles_of(accumulated)));
    out.trace.push_back("[decompose-done] interval sum " +
                        out.interval_sum.str() + " matches the squeeze value");
    return out;
}

CaratheodoryResult caratheodory_check(const SetPtr& A, const SetPtr& B,
                                      const Rational& K) {
    MeasureResult whole = outer_measure(B, K);
    MeasureResult inside = outer_measure(LCSet::intersect_of(A, B), K);
    MeasureResult outside = outer_measure(LCSet::diff_of(B, A), K);
    if (!whole.is_value())
        throw NotEvaluable("M(B) has no value: " + whole.witness);
    if (!inside.is_value())
        throw NotEvaluable("M(A & B) has no value: " + inside.witness);
    if (!outside.is_value())
        throw NotEvaluable("M(B \\ A) has no value: " + outside.witness);
    CaratheodoryResult r{false, *whole.value, *inside.value, *outside.value, {}};
    LCNumber sum = add(r.inside, r.outside);
    r.holds = agrees_to(r.whole, sum, K);
    r.trace = whole.trace;
    r.trace.insert(r.trace.end(), inside.trace.begin(), inside.trace.end());
    r.trace.insert(r.trace.end(), outside.trace.begin(), outside.trace.end());
    r.trace.push_back("[splitting-check] M(B)=" + r.whole.str() +
                      " vs M(A&B)+M(B\\A)=" + sum.str() +
                      (r.holds ? " (equal)" : " (differ)"));
    return r;
}

namespace {

// Witness candidates against the splitting identity: the ambient intervals
// of dense components, and for unions carrying a dense component, the same
// union with the complementary family substituted (whose intersection with
// the original reduces to the shared remainder).
void collect_witness_candidates(const SetPtr& s, std::vector<SetPtr>& out) {
    switch (s->node()) {
        case SetNode::Dense:
            out.push_back(LCSet::single(s->ambient()));
            return;
        case SetNode::Union: {
            for (auto [a, b] : {std::pair{s->left(), s->right()},
                                std::pair{s->right(), s->left()}}) {
                if (a->node() == SetNode::Dense) {
                    DenseFamily co = a->family() == DenseFamily::T
                                         ? DenseFamily::S
                                         : DenseFamily::T;
                    out.push_back(LCSet::union_of(
                        LCSet::dense(co, a->ambient()), b));
                }
            }
            for (const auto& c : s->children())
                collect_witness_candidates(c, out);
            return;
        }
        case SetNode::FiniteUnion:
        case SetNode::Intersect:
        case SetNode::Diff:
            for (const auto& c : s->children())
                collect_witness_candidates(c, out);
            return;
        default:
            return;
    }
}

// Structural sufficient conditions for membership in the measurable family:
// interval sets, certified countable unions, null point sets, and anything
// built from members by finite set operations.
bool structurally_measurable(const SetPtr& s) {
    switch (s->node()) {
        case SetNode::Empty:
        case SetNode::Single:
        case SetNode::PointSeq:
            return true;
        case SetNode::CountableUnion:
            return s->countable().has_certificate;
        case SetNode::CertCountableUnion:
        case SetNode::CertCountableIntersect: {
            for (long i = 1; i <= 4; ++i)
                if (!structurally_measurable(s->certified().at(i))) return false;
            return true;
        }
        case SetNode::Dense:
            return false;
        case SetNode::FiniteUnion:
        case SetNode::Union:
        case SetNode::Intersect:
        case SetNode::Diff: {
            for (const auto& c : s->children())
                if (!structurally_measurable(c)) return false;
            return true;
        }
    }
    return false;
}

} // namespace

LCheckResult is_L_measurable(const SetPtr& A, const Rational& K) {
    LCheckResult r;
    MeasureResult m = outer_measure(A, K);
    r.trace = m.trace;
    if (m.kind == MeasureKind::NotOuterMeasurable) {
        r.verdict = LVerdict::No;
        r.witness = "not outer measurable: " + m.witness;
        return r;
    }
    if (m.kind == MeasureKind::Undecided) {
        r.verdict = LVerdict::Unknown;
        r.witness = m.witness;
        return r;
    }
    // Null sets split every test set exactly.
    if (!m.value->has_terms()) {
        r.verdict = LVerdict::Yes;
        r.measure = m.value;
        r.trace.push_back("[null-set] outer measure 0 suffices");
        return r;
    }
    if (structurally_measurable(A)) {
        r.verdict = LVerdict::Yes;
        r.measure = m.value;
        r.trace.push_back(
            "[closure] built from intervals, certified countable unions, and "
            "null sets by finite set operations");
        return r;
    }
    // Try to refute the splitting identity with a witness test set.
    std::vector<SetPtr> candidates;
    collect_witness_candidates(A, candidates);
    candidates.push_back(
        LCSet::single(Interval::closed(embed_real(0), embed_real(1))));
    for (const auto& B : candidates) {
        MeasureResult mb = outer_measure(B, K);
        if (!mb.is_value()) continue;
        MeasureResult mi = outer_measure(LCSet::intersect_of(A, B), K);
        if (mi.kind == MeasureKind::NotOuterMeasurable) {
            r.verdict = LVerdict::No;
            r.witness = "for B = " + describe(B) +
                        ", A & B is not outer measurable: " + mi.witness;
            r.trace.insert(r.trace.end(), mi.trace.begin(), mi.trace.end());
            r.trace.push_back("[splitting-witness] " + r.witness);
            return r;
        }
        MeasureResult mo = outer_measure(LCSet::diff_of(B, A), K);
        if (mo.kind == MeasureKind::NotOuterMeasurable) {
            r.verdict = LVerdict::No;
            r.witness = "for B = " + describe(B) +
                        ", B \\ A is not outer measurable: " + mo.witness;
            r.trace.push_back("[splitting-witness] " + r.witness);
            return r;
        }
        if (!mi.is_value() || !mo.is_value()) continue;
        LCNumber sum = add(*mi.value, *mo.value);
        if (!agrees_to(*mb.value, sum, K)) {
            r.verdict = LVerdict::No;
            r.witness = "B = " + describe(B) + ": M(B) = " + mb.value->str() +
                        " but M(A & B) + M(B \\ A) = " + sum.str();
            r.trace.push_back("[splitting-witness] " + r.witness);
            return r;
        }
    }
    r.verdict = LVerdict::Unknown;
    r.witness =
        "outer measurable, but no closure rule certifies the splitting "
        "identity and no finite witness refutes it";
    return r;
}

InclusionExclusionResult measure_inclusion_exclusion(const SetPtr& A,
                                                     const SetPtr& B,
                                                     const Rational& K) {
    LCheckResult la = is_L_measurable(A, K);
    LCheckResult lb = is_L_measurable(B, K);
    if (la.verdict != LVerdict::Yes || lb.verdict != LVerdict::Yes)
        throw NotEvaluable("inclusion-exclusion requires both operands "
                           "L-measurable");
    MeasureResult mu = outer_measure(LCSet::union_of(A, B), K);
    MeasureResult mi = outer_measure(LCSet::intersect_of(A, B), K);
    if (!mu.is_value() || !mi.is_value())
        throw NotEvaluable("union or intersection has no measure value");
    InclusionExclusionResult r{*mu.value,
                               sub(add(*la.measure, *lb.measure), *mi.value),
                               false};
    r.equal = agrees_to(r.union_measure, r.sum_form, K);
    return r;
}

ContinuityResult continuity_union(const CertifiedFamily& family, const SetPtr& X,
                                  const Rational& K) {
    Evaluator ev(K);
    auto partial = [&ev, &family, &X](long n) {
        std::vector<SetPtr> parts;
        for (long i = 1; i <= n; ++i) parts.push_back(family.at(i));
        SetPtr capped =
            LCSet::intersect_of(X, LCSet::finite_union(std::move(parts)));
        Outcome o = ev.eval(capped, 0);
        if (!o.is_value())
            throw NotEvaluable("partial union against X is not evaluable: " +
                               o.witness);
        return o.val->measure;
    };
    TermGenerator g{partial, family.increments};
    LCNumber lhs = limit_sequence(g, K);
    MeasureResult rhs = outer_measure(
        LCSet::intersect_of(X, LCSet::certified_union(family)), K);
    if (!rhs.is_value())
        throw NotEvaluable("X & full union has no measure value: " + rhs.witness);
    return {lhs, *rhs.value, agrees_to(lhs, *rhs.value, K)};
}

ContinuityResult continuity_intersection(const CertifiedFamily& family,
                                         const SetPtr& X, const Rational& K) {
    Evaluator ev(K);
    auto partial = [&ev, &family, &X](long n) {
        SetPtr acc = family.at(1);
        for (long i = 2; i <= n; ++i) acc = LCSet::intersect_of(acc, family.at(i));
        Outcome o = ev.eval(LCSet::intersect_of(X, acc), 0);
        if (!o.is_value())
            throw NotEvaluable(
                "partial intersection against X is not evaluable: " + o.witness);
        return o.val->measure;
    };
    TermGenerator g{partial, family.increments};
    LCNumber lhs = limit_sequence(g, K);
    MeasureResult rhs = outer_measure(
        LCSet::intersect_of(X, LCSet::certified_intersection(family)), K);
    if (!rhs.is_value())
        throw NotEvaluable("X & full intersection has no measure value: " +
                           rhs.witness);
    return {lhs, *rhs.value, agrees_to(lhs, *rhs.value, K)};
}

bool subadditivity_check(const SetPtr& A, const SetPtr& B, const SetPtr& C,
                         const Rational& K) {
    MeasureResult ma = outer_measure(A, K);
    MeasureResult mb = outer_measure(B, K);
    MeasureResult mc = outer_measure(C, K);
    if (!ma.is_value() || !mb.is_value() || !mc.is_value())
        throw NotEvaluable("subadditivity requires all three measures");
    LCNumber diff = sub(add(*mb.value, *mc.value), *ma.value);
    OrderResult c = compare_zero(diff);
    // Indistinguishable at the working order means equality there.
    return !c.is_less();
}

// --- canonical cover synthesis -------------------------------------------------

namespace {

std::optional<CoverSequence> standard_covers_impl(const SetPtr& s) {
    if (auto list = as_interval_list(s)) {
        auto seq = IntervalSeq::from_list(*list);
        return CoverSequence{[seq](long) { return seq; },
                             [seq](long) { return seq; }};
    }
    switch (s->node()) {
        case SetNode::PointSeq: {
            auto at = s->points().at;
            auto inner = [at](long) {
                IntervalSeq seq;
                seq.at = [at](long n) {
                    auto p = at(n);
                    return p ? Interval::point(*p) : Interval::empty();
                };
                seq.decay = trivial_certificate();
                seq.pairwise_disjoint = true;
                return seq;
            };
            auto outer = [at](long k) {
                IntervalSeq seq;
                seq.at = [at, k](long n) {
                    auto p = at(n);
                    if (!p) return Interval::empty();
                    return Interval::make(
                        Bound::finite(*p, true),
                        Bound::finite(add(*p, make_dq(Rational(n + k))), true));
                };
                seq.decay.threshold = [k](const Rational& q) {
                    return std::max(0L, floor_long(q) - k + 1);
                };
                seq.pairwise_disjoint = true;
                return seq;
            };
            return CoverSequence{inner, outer};
        }
        case SetNode::CountableUnion: {
            if (!s->countable().has_certificate) return std::nullopt;
            auto seq = s->countable().seq;
            return CoverSequence{[seq](long) { return seq; },
                                 [seq](long) { return seq; }};
        }
        case SetNode::FiniteUnion:
        case SetNode::Union: {
            // Components must be separated for the concatenated families to
            // stay pairwise disjoint.
            std::vector<SetPtr> parts = s->children();
            for (std::size_t i = 0; i < parts.size(); ++i)
                for (std::size_t j = i + 1; j < parts.size(); ++j) {
                    auto hi = hull_of(parts[i]);
                    auto hj = hull_of(parts[j]);
                    if (!hi || !hj || !are_disjoint(*hi, *hj))
                        return std::nullopt;
                }
            std::vector<CoverSequence> subs;
            for (const auto& p : parts) {
                auto sub = standard_covers_impl(p);
                if (!sub) return std::nullopt;
                subs.push_back(*sub);
            }
            auto inner = [subs](long k) {
                IntervalSeq acc = subs[0].inner(k);
                for (std::size_t i = 1; i < subs.size(); ++i) {
                    acc = concat_seqs(acc, subs[i].inner(k));
                    acc.pairwise_disjoint = true;
                }
                return acc;
            };
            auto outer = [subs](long k) {
                IntervalSeq acc = subs[0].outer(k);
                for (std::size_t i = 1; i < subs.size(); ++i) {
                    acc = concat_seqs(acc, subs[i].outer(k));
                    acc.pairwise_disjoint = true;
                }
                return acc;
            };
            return CoverSequence{inner, outer};
        }
        default:
            return std::nullopt;
    }
}

} // namespace

std::optional<CoverSequence> make_standard_covers(const SetPtr& A) {
    return standard_covers_impl(A);
}

} // namespace lc
