#pragma once

// Exact scalars. Integers and rationals are GMP values; mpq_class results are
// always canonical (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace singmod {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::string to_decimal(const Integer& z) { return z.get_str(10); }

inline Integer parse_integer(const std::string& text) {
    Integer z;
    if (text.empty() || z.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a decimal integer: '" + text + "'");
    }
    return z;
}

// Non-negative residue of z modulo m (m > 0).
inline std::int64_t mod_floor(const Integer& z, std::int64_t m) {
    return static_cast<std::int64_t>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(m)));
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace singmod
