#ifndef LC_SERIES_HPP
#define LC_SERIES_HPP

#include <functional>

#include "lc/number.hpp"

namespace lc {

// Witness that a sequence vanishes in the valuation topology: for every
// rational k, all indices beyond threshold(k) have order of magnitude
// above k. Violations found by sampling are hard errors.
struct DecayCertificate {
    std::function<long(const Rational& k)> threshold;
};

// A certificate that is trivially satisfied (all terms vanish from the
// start), for finite or identically-zero tails.
DecayCertificate trivial_certificate();

// Indices are 1-based. at must be pure: repeated calls agree.
struct TermGenerator {
    std::function<LCNumber(long n)> at;
    DecayCertificate decay;
};

// Number of spot-check indices taken past a threshold, geometrically spaced.
inline constexpr int kCertificateSamples = 8;

// Sum of the series at(1) + at(2) + ... truncated at order K. Terms past
// threshold(K) are invisible below d^K, so the sum stops there; a geometric
// sample of later indices is checked against the certificate.
LCNumber sum_series(const TermGenerator& g, const Rational& K);

// Limit of a sequence of partial values whose consecutive differences carry
// the decay certificate. Returns at(threshold(K) + 1) truncated at K.
LCNumber limit_sequence(const TermGenerator& g, const Rational& K);

// True iff the sampled consecutive differences past threshold(k) all have
// order of magnitude above k; false signals a divergent sequence.
bool check_cauchy_prefix(const TermGenerator& g, const Rational& k, int samples);

} // namespace lc

#endif
