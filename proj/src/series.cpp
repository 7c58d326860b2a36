#include "lc/series.hpp"

#include <vector>

#include "lc/errors.hpp"

namespace lc {

DecayCertificate trivial_certificate() {
    return {[](const Rational&) { return 0L; }};
}

namespace {

std::vector<long> sample_indices(long start, int count) {
    std::vector<long> out;
    long step = 1;
    for (int i = 0; i < count; ++i) {
        out.push_back(start + step);
        step *= 2;
    }
    return out;
}

// A term provably fails the decay claim when its leading exponent is known
// and does not exceed k.
void check_decay_at(const LCNumber& value, const Rational& k, long n) {
    if (value.has_terms()) {
        if (ExtRational(value.terms().front().exponent) <= ExtRational(k))
            throw CertificateViolation(
                n, "term has order of magnitude " +
                       to_string(value.terms().front().exponent) +
                       " which does not exceed " + to_string(k));
    } else if (value.order() < ExtRational(k)) {
        throw PrecisionExhausted(
            "term at index " + std::to_string(n) + " is only known to order " +
            value.order().str() + ", too coarse to check decay beyond " +
            to_string(k));
    }
}

} // namespace

LCNumber sum_series(const TermGenerator& g, const Rational& K) {
    long N = g.decay.threshold(K);
    LCNumber acc = LCNumber::zero();
    for (long n = 1; n <= N; ++n) acc = add(acc, g.at(n));
    for (long n : sample_indices(N, kCertificateSamples))
        check_decay_at(g.at(n), K, n);
    if (acc.order() < ExtRational(K))
        throw PrecisionExhausted("series terms are only known to order " +
                                 acc.order().str() +
                                 ", below the requested order " + to_string(K));
    return truncate(acc, K);
}

LCNumber limit_sequence(const TermGenerator& g, const Rational& K) {
    long N = g.decay.threshold(K);
    for (long n : sample_indices(N, kCertificateSamples))
        check_decay_at(sub(g.at(n + 1), g.at(n)), K, n);
    LCNumber value = g.at(N + 1);
    if (value.order() < ExtRational(K))
        throw PrecisionExhausted("sequence values are only known to order " +
                                 value.order().str() +
                                 ", below the requested order " + to_string(K));
    return truncate(value, K);
}

bool check_cauchy_prefix(const TermGenerator& g, const Rational& k, int samples) {
    long N = g.decay.threshold(k);
    for (long n : sample_indices(N, samples)) {
        LCNumber diff = sub(g.at(n + 1), g.at(n));
        if (diff.has_terms() &&
            ExtRational(diff.terms().front().exponent) <= ExtRational(k))
            return false;
    }
    return true;
}

} // namespace lc
