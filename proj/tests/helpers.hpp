#ifndef LC_TEST_HELPERS_HPP
#define LC_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <vector>

#include "lc/number.hpp"

namespace lc::testing {

using Rng = std::mt19937_64;

inline Rational rand_rational(Rng& rng, long lo, long hi, long max_den = 4) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
    return make_rational(num_dist(rng), den);
}

inline Rational rand_nonzero_rational(Rng& rng, long lo, long hi,
                                      long max_den = 4) {
    while (true) {
        Rational q = rand_rational(rng, lo, hi, max_den);
        if (q != 0) return q;
    }
}

// Exact number with up to max_terms support points, exponents within
// [exp_lo, exp_hi].
inline LCNumber rand_number(Rng& rng, int max_terms, long exp_lo, long exp_hi) {
    std::uniform_int_distribution<int> count_dist(0, max_terms);
    int count = count_dist(rng);
    std::set<Rational> used;
    std::vector<Term> terms;
    for (int i = 0; i < count; ++i) {
        Rational q = rand_rational(rng, exp_lo, exp_hi);
        if (used.count(q)) continue;
        used.insert(q);
        terms.push_back({q, rand_nonzero_rational(rng, -6, 6)});
    }
    return LCNumber::make(std::move(terms));
}

inline LCNumber rand_nonzero_number(Rng& rng, int max_terms, long exp_lo,
                                    long exp_hi) {
    while (true) {
        LCNumber x = rand_number(rng, max_terms, exp_lo, exp_hi);
        if (x.has_terms()) return x;
    }
}

} // namespace lc::testing

#endif
