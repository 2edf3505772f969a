#pragma once

#include "singmod/series.hpp"

#include <cstdint>
#include <random>

namespace singmod::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return make_rational(num(rng), den(rng));
}

/// Random series on lattice 1 with lowest exponent in [lo, hi] and a nonzero
/// leading coefficient.
inline FourierSeries random_series(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi,
                                   std::int64_t length) {
    std::uniform_int_distribution<std::int64_t> start(lo, hi);
    const std::int64_t v = start(rng);
    FourierSeries::Terms terms;
    Rational lead;
    do {
        lead = random_rational(rng);
    } while (sgn(lead) == 0);
    terms[v] = lead;
    for (std::int64_t e = v + 1; e < v + length; ++e) terms[e] = random_rational(rng);
    return FourierSeries(1, v + length, std::move(terms));
}

inline bool all_canonical(const FourierSeries& f) {
    for (const auto& [e, c] : f.terms()) {
        Rational copy = c;
        copy.canonicalize();
        if (copy.get_num() != c.get_num() || copy.get_den() != c.get_den() || sgn(c) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace singmod::testing
