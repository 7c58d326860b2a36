// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. All checks are exact; there are no tolerances anywhere.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lc/errors.hpp"
#include "lc/measure.hpp"
#include "lc/parse.hpp"
#include "cli_golden.hpp"
#include "helpers.hpp"

using namespace lc;
using lc::testing::Rng;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<std::string()>& body) {
    std::string failure;
    try {
        failure = body();
    } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
    }
    if (failure.empty()) {
        std::cout << "criterion " << number << " (" << name << "): PASS"
                  << std::endl;
    } else {
        std::cout << "criterion " << number << " (" << name
                  << "): FAIL - " << failure << std::endl;
        ++g_failures;
    }
}

LCNumber num(long v) { return embed_real(v); }
const LCNumber d_ = make_dq(1);
Interval cl(long a, long b) { return Interval::closed(num(a), num(b)); }

LCNumber geometric_closed_form(const Rational& K) {
    return truncate(mul(d_, inverse(sub(num(1), d_), K)), K);
}

// --- criterion 1: field and valuation laws ------------------------------------

std::string field_valuation_suite() {
    Rng rng(1001);
    const Rational K(16);
    std::vector<LCNumber> pool;
    for (int i = 0; i < 500; ++i)
        pool.push_back(lc::testing::rand_number(rng, 8, -3, 6));
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const LCNumber& x = pool[i];
        const LCNumber& y = pool[(i + 1) % pool.size()];
        const LCNumber& z = pool[(i + 2) % pool.size()];
        if (add(add(x, y), z) != add(x, add(y, z)))
            return "associativity of addition failed at sample " + std::to_string(i);
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            return "associativity of multiplication failed at sample " +
                   std::to_string(i);
        if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z)))
            return "distributivity failed at sample " + std::to_string(i);
        if (x.has_terms() && y.has_terms() &&
            lambda(mul(x, y)) != lambda(x) + lambda(y))
            return "lambda multiplicativity failed at sample " + std::to_string(i);
        if (lambda_lower_bound(add(x, y)) <
            min(lambda_lower_bound(x), lambda_lower_bound(y)))
            return "ultrametric inequality failed at sample " + std::to_string(i);
        if (x.has_terms()) {
            Rational L = x.terms().front().exponent;
            LCNumber back = mul(x, inverse(x, K));
            if (!agrees_to(back, num(1), K - 2 * L))
                return "multiply-back of the inverse failed at sample " +
                       std::to_string(i);
        }
    }
    return "";
}

// --- criterion 2: convergence criteria -----------------------------------------

std::string convergence_criteria() {
    TermGenerator geo{[](long n) { return make_dq(Rational(n)); },
                      {[](const Rational& k) {
                          return std::max(0L, floor_long(k));
                      }}};
    LCNumber summed = sum_series(geo, Rational(12));
    LCNumber closed = geometric_closed_form(Rational(12));
    if (summed != closed)
        return "geometric sum disagrees with the closed form: " + summed.str() +
               " vs " + closed.str();

    DecayCertificate claimed{[](const Rational& k) {
        return std::max(0L, floor_long(k)) + 1;
    }};
    TermGenerator first{[](long n) {
                            return sub(embed_real(make_rational(1, n)),
                                       make_dq(make_rational(1, n)));
                        },
                        claimed};
    if (check_cauchy_prefix(first, Rational(0), 8))
        return "1/N - d^(1/N) was not rejected";
    TermGenerator second{[](long n) {
                             return add(sub(num(1), embed_real(make_rational(1, n))),
                                        make_dq(make_rational(1, n)));
                         },
                         claimed};
    if (check_cauchy_prefix(second, Rational(0), 8))
        return "1 - 1/N + d^(1/N) was not rejected";
    return "";
}

// --- criterion 3: interval and squeeze-measure identities ----------------------

std::string interval_smeasure_identities() {
    Rng rng(1003);
    for (int i = 0; i < 100; ++i) {
        LCNumber a = lc::testing::rand_number(rng, 4, -2, 4);
        LCNumber b = add(a, monomial(lc::testing::rand_rational(rng, 1, 5),
                                     lc::testing::rand_rational(rng, -1, 3)));
        MeasureResult r =
            outer_measure(LCSet::single(Interval::closed(a, b)), Rational(16));
        if (!r.is_value() || *r.value != sub(b, a))
            return "outer measure of a random interval is not its length";
    }

    SetPtr unit = LCSet::single(cl(0, 1));
    auto unit_covers = make_standard_covers(unit);
    if (!unit_covers) return "no covers for [0,1]";
    if (*s_measure(unit, *unit_covers, Rational(12)).value !=
        truncate(num(1), Rational(12)))
        return "squeeze measure of [0,1] is not 1";

    SetPtr rationals = LCSet::rational_points(cl(0, 1));
    auto q_covers = make_standard_covers(rationals);
    if (!q_covers) return "no covers for the rational points";
    if (*s_measure(rationals, *q_covers, Rational(12)).value !=
        LCNumber::zero_at_order(Rational(12)))
        return "squeeze measure of the rational points is not 0";

    SetPtr A = LCSet::union_of(set_family_geometric(),
                               LCSet::rational_points(cl(2, 3)));
    auto covers = make_standard_covers(A);
    if (!covers) return "no covers for the geometric union plus points";
    Decomposition dec = decompose(A, *covers, Rational(12));
    if (!agrees_to(dec.interval_sum, geometric_closed_form(Rational(12)),
                   Rational(12)))
        return "decomposition sum differs from d/(1-d) below d^12";
    for (const auto& residual : dec.residuals) {
        if (residual.stage > 8) continue;
        LCNumber full =
            sum_lengths(residual.residue, Rational(residual.stage) + 8);
        if (!compare(truncate(full, Rational(residual.stage) + 4),
                     make_dq(Rational(residual.stage)))
                 .is_less())
            return "stage " + std::to_string(residual.stage) +
                   " residual covers are not below d^k";
    }
    return "";
}

// --- criterion 4: outer-measure propositions on random instances ---------------

std::string outer_measure_propositions() {
    Rng rng(1004);
    const Rational K(12);

    // Subadditivity.
    for (int i = 0; i < 50; ++i) {
        long a = static_cast<long>(rng() % 3) - 1;
        long w1 = 1 + static_cast<long>(rng() % 3);
        long b = a + static_cast<long>(rng() % 3);
        long w2 = 1 + static_cast<long>(rng() % 3);
        SetPtr B = LCSet::single(cl(a, a + w1));
        SetPtr C = LCSet::single(cl(b, b + w2));
        SetPtr A = LCSet::union_of(B, C);
        if (!subadditivity_check(A, B, C, K))
            return "subadditivity failed at sample " + std::to_string(i);
    }

    // Null-set absorption.
    for (int i = 0; i < 50; ++i) {
        long a = static_cast<long>(rng() % 3) - 1;
        long b = a + 1 + static_cast<long>(rng() % 3);
        SetPtr A = LCSet::union_of(
            LCSet::single(cl(a, b)),
            LCSet::dense(DenseFamily::T, cl(b + 1, b + 2)));
        SetPtr C = LCSet::rational_points(cl(a, b));
        LCNumber whole = *outer_measure(A, K).value;
        LCNumber removed = *outer_measure(LCSet::diff_of(A, C), K).value;
        if (!agrees_to(whole, removed, K))
            return "null-set absorption failed at sample " + std::to_string(i);
    }

    // Finite-partition additivity.
    for (int i = 0; i < 50; ++i) {
        long split = 1 + static_cast<long>(rng() % 3);
        SetPtr A = LCSet::union_of(LCSet::dense(DenseFamily::S, cl(0, 4)),
                                   LCSet::single(cl(5, 6)));
        Interval J1 = cl(0, split);
        Interval J2 = Interval::make(Bound::finite(num(split), false),
                                     Bound::finite(num(6), true));
        LCNumber whole =
            *outer_measure(
                 LCSet::intersect_of(A, LCSet::finite_union(
                                            {LCSet::single(J1),
                                             LCSet::single(J2)})),
                 K)
                 .value;
        LCNumber parts =
            add(*outer_measure(LCSet::intersect_of(A, LCSet::single(J1)), K)
                     .value,
                *outer_measure(LCSet::intersect_of(A, LCSet::single(J2)), K)
                     .value);
        if (!agrees_to(whole, parts, K))
            return "partition additivity failed at sample " + std::to_string(i);
    }

    // Disjoint adjunction.
    for (int i = 0; i < 50; ++i) {
        long gap = 2 + static_cast<long>(rng() % 3);
        long w = 1 + static_cast<long>(rng() % 2);
        SetPtr A = LCSet::dense(DenseFamily::T, cl(0, 1));
        Interval I = cl(gap, gap + w);
        LCNumber joined =
            *outer_measure(LCSet::union_of(A, LCSet::single(I)), K).value;
        LCNumber expected = add(*outer_measure(A, K).value, length(I));
        if (!agrees_to(joined, expected, K))
            return "disjoint adjunction failed at sample " + std::to_string(i);
    }

    // Removing a countable union, stage by stage.
    for (int i = 0; i < 50; ++i) {
        long b = 1 + static_cast<long>(rng() % 3);
        SetPtr A = LCSet::single(cl(0, b));
        MeasureResult r =
            outer_measure(LCSet::diff_of(A, set_family_geometric()), K);
        if (!r.is_value())
            return "countable removal not evaluable at sample " +
                   std::to_string(i);
        LCNumber expected =
            truncate(sub(num(b), geometric_closed_form(K + 1)), K);
        if (*r.value != expected)
            return "countable removal limit failed at sample " +
                   std::to_string(i);
    }
    return "";
}

// --- criterion 5: counterexample reproduction ----------------------------------

std::string counterexamples() {
    SetPtr C = set_family_divergent();
    MeasureResult rc = outer_measure(C, Rational(8));
    if (rc.kind != MeasureKind::NotOuterMeasurable)
        return "the divergent family was not flagged";
    if (rc.witness.find("order of magnitude <= 1") == std::string::npos)
        return "the divergence witness does not carry the exponent bound";

    SetPtr lhs = LCSet::union_of(LCSet::dense(DenseFamily::T, cl(0, 1)), C);
    SetPtr rhs = LCSet::union_of(LCSet::dense(DenseFamily::S, cl(0, 1)), C);
    MeasureResult tangled =
        outer_measure(LCSet::intersect_of(lhs, rhs), Rational(8));
    if (tangled.is_value()) return "the tangled intersection produced a value";
    bool reduced = false;
    for (const auto& line : tangled.trace)
        if (line.find("shared-union-factor") != std::string::npos) reduced = true;
    if (!reduced) return "the trace does not show the reduction to C";

    CaratheodoryResult carat = caratheodory_check(
        LCSet::dense(DenseFamily::T, cl(0, 1)), LCSet::single(cl(0, 1)),
        Rational(8));
    if (carat.holds) return "the dense family passed the splitting identity";
    if (carat.whole != num(1) || add(carat.inside, carat.outside) != num(2))
        return "the splitting identity did not produce 1 vs 2";

    LCheckResult cocountable = is_L_measurable(
        LCSet::diff_of(LCSet::single(cl(0, 1)),
                       LCSet::rational_points(cl(0, 1))),
        Rational(8));
    if (cocountable.verdict != LVerdict::Yes || *cocountable.measure != num(1))
        return "[0,1] minus the rationals is not judged measurable with value 1";
    return "";
}

// --- criterion 6: measure suite -------------------------------------------------

std::string measure_suite() {
    Rng rng(1006);
    auto random_union = [&](long offset) {
        std::vector<SetPtr> parts;
        long base = offset;
        for (int i = 0; i < 3; ++i) {
            long a = base + static_cast<long>(rng() % 2);
            long b = a + 1 + static_cast<long>(rng() % 2);
            parts.push_back(LCSet::single(cl(a, b)));
            base = b + static_cast<long>(rng() % 2);
        }
        return LCSet::finite_union(std::move(parts));
    };
    for (int i = 0; i < 100; ++i) {
        InclusionExclusionResult r = measure_inclusion_exclusion(
            random_union(-4), random_union(-2), Rational(12));
        if (!r.equal)
            return "inclusion-exclusion failed at sample " + std::to_string(i);
    }

    CertifiedFamily geometric_members;
    {
        IntervalSeq seq = geometric_interval_seq();
        geometric_members.at = [seq](long n) { return LCSet::single(seq.at(n)); };
        geometric_members.increments.threshold = [](const Rational& k) {
            return std::max(0L, floor_long(k));
        };
        geometric_members.hull = cl(0, 1);
        geometric_members.key = "geometric-members";
    }
    ContinuityResult cu = continuity_union(geometric_members,
                                           LCSet::single(cl(0, 1)), Rational(12));
    if (!cu.equal) return "continuity along the certified union failed";

    CertifiedFamily nested_upper;
    nested_upper.at = [](long n) {
        return LCSet::single(
            Interval::closed(num(0), add(num(1), make_dq(Rational(n)))));
    };
    nested_upper.increments.threshold = [](const Rational& k) {
        return std::max(0L, floor_long(k)) + 1;
    };
    nested_upper.hull = cl(0, 2);
    nested_upper.key = "nested-upper";
    ContinuityResult ci = continuity_intersection(
        nested_upper, LCSet::single(cl(0, 2)), Rational(12));
    if (!ci.equal) return "continuity along the certified intersection failed";

    bool rejected = false;
    try {
        continuity_intersection(set_family_shrinking_intersection()->certified(),
                                LCSet::single(cl(0, 1)), Rational(8));
    } catch (const CertificateViolation&) {
        rejected = true;
    }
    if (!rejected) return "(d^(1/n), 1/n) was not rejected";

    rejected = false;
    try {
        continuity_union(set_family_two_block_union()->certified(),
                         LCSet::single(cl(0, 1)), Rational(8));
    } catch (const CertificateViolation&) {
        rejected = true;
    }
    if (!rejected) return "[0,1-1/n] ++ [1-d^(1/n),1] was not rejected";
    return "";
}

// --- criterion 7: command corpus ------------------------------------------------

std::string cli_corpus() {
    const auto& cases = lc::testing::golden_corpus();
    if (cases.size() < 20) return "fewer than 20 scripted invocations";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        lc::testing::CliRun r = lc::testing::run_cli(c.args);
        if (r.code != c.exit_code)
            return "case " + std::to_string(i) + " exited " +
                   std::to_string(r.code) + ", expected " +
                   std::to_string(c.exit_code);
        if (r.out != c.stdout_exact)
            return "case " + std::to_string(i) + " produced unexpected output";
        if (c.stderr_contains.empty() && !r.err.empty())
            return "case " + std::to_string(i) + " wrote to stderr";
        if (!c.stderr_contains.empty() &&
            r.err.find(c.stderr_contains) == std::string::npos)
            return "case " + std::to_string(i) + " missed the error message";
    }
    return "";
}

// --- criterion 8: derivative demo -----------------------------------------------

std::string derivative_suite() {
    Rng rng(1008);
    for (int trial = 0; trial < 20; ++trial) {
        int degree = 1 + static_cast<int>(rng() % 5);
        std::vector<Rational> coeffs;
        for (int i = 0; i <= degree; ++i)
            coeffs.push_back(lc::testing::rand_rational(rng, -5, 5));
        Rational x0 = lc::testing::rand_rational(rng, -4, 4);

        FuncPtr x = FuncExpr::variable();
        FuncPtr expr = FuncExpr::constant_of(Rational(0));
        FuncPtr power = FuncExpr::constant_of(Rational(1));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            expr = FuncExpr::add(
                expr, FuncExpr::mul(FuncExpr::constant_of(coeffs[i]), power));
            power = FuncExpr::mul(power, x);
        }

        std::vector<Rational> current = coeffs;
        for (long n = 1; n <= 3; ++n) {
            std::vector<Rational> next;
            for (std::size_t i = 1; i < current.size(); ++i)
                next.push_back(current[i] * Rational(static_cast<long>(i)));
            current = next;
            Rational expected(0);
            for (std::size_t i = current.size(); i-- > 0;)
                expected = expected * x0 + current[i];
            if (derivative_demo(expr, x0, n) != expected)
                return "derivative mismatch at trial " + std::to_string(trial) +
                       ", n = " + std::to_string(n);
        }
    }
    return "";
}

} // namespace

int main() {
    criterion(1, "field and valuation laws", field_valuation_suite);
    criterion(2, "convergence criteria", convergence_criteria);
    criterion(3, "interval and squeeze-measure identities",
              interval_smeasure_identities);
    criterion(4, "outer-measure propositions", outer_measure_propositions);
    criterion(5, "counterexample reproduction", counterexamples);
    criterion(6, "measure suite", measure_suite);
    criterion(7, "command corpus", cli_corpus);
    criterion(8, "derivative demo", derivative_suite);
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
