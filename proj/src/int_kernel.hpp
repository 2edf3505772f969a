#pragma once

// Integer kernels behind the rational series types. Operands are scaled by
// the lcm of their denominators so inner loops run on mpz values only.

#include "singmod/rational.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace singmod::detail {

template <class Map>
Integer common_denominator(const Map& terms) {
    Integer den = 1;
    for (const auto& [key, value] : terms) {
        if (value.get_den() != 1) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), value.get_den().get_mpz_t());
        }
    }
    return den;
}

using SparseInts = std::vector<std::pair<std::int64_t, Integer>>;

template <class Map>
SparseInts scaled_integers(const Map& terms, const Integer& den) {
    SparseInts out;
    out.reserve(terms.size());
    for (const auto& [key, value] : terms) {
        Integer z = value.get_num();
        if (value.get_den() != den) {
            z *= den;
            mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), value.get_den().get_mpz_t());
        }
        out.emplace_back(key, std::move(z));
    }
    return out;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

} // namespace singmod::detail
