#pragma once

// Positive definite binary quadratic forms [a, b, c] = ax^2 + bxy + cy^2.

#include "singmod/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace singmod {

struct QuadForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    /// d = 4ac - b^2, so the discriminant is -d.
    std::int64_t d() const noexcept { return 4 * a * c - b * b; }
    std::string str() const;

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

/// The root (-b + i sqrt(d)) / (2a) in the upper half plane, kept exact.
struct HeegnerPoint {
    std::int64_t b = 0;
    std::int64_t a = 1;
    std::int64_t d = 4;

    /// Real part -b/(2a).
    Rational real() const { return make_rational(-b, 2 * a); }
    /// Square of the imaginary part, d/(4a^2).
    Rational imag_squared() const { return make_rational(d, 4 * a * a); }

    friend bool operator==(const HeegnerPoint&, const HeegnerPoint&) = default;
};

/// Throws InvalidArgument unless a > 0 and 4ac - b^2 > 0.
void require_positive_definite(const QuadForm& q);

/// Gauss reduction: |b| <= a <= c, with b >= 0 when |b| = a or a = c.
QuadForm reduce(QuadForm q);
bool is_reduced(const QuadForm& q) noexcept;

/// Applies (x, y) -> (alpha x + beta y, gamma x + delta y) with determinant 1.
QuadForm transform(const QuadForm& q, std::int64_t alpha, std::int64_t beta, std::int64_t gamma,
                   std::int64_t delta);

/// All reduced forms of discriminant -d, imprimitive ones included, ordered by
/// a, then |b|, then sign of b (positive first). Throws UnsupportedDiscriminant
/// unless d > 0 and d = 0, 3 mod 4.
std::vector<QuadForm> class_representatives(std::int64_t d);

/// 2 for forms equivalent to [a, 0, a], 3 for [a, a, a], 1 otherwise.
int omega(const QuadForm& q);

/// sum over class_representatives(d) of 1/omega.
Rational hurwitz_sum(std::int64_t d);

HeegnerPoint heegner_point(const QuadForm& q);

/// A form equivalent to q with p | a and b = beta mod 2p. Searches b' in order
/// of increasing |b'| and divisors a' of (b'^2 + d)/4 in increasing order.
/// Throws InvalidArgument unless beta^2 = -d mod 4p, and LiftNotFound past
/// the search cap.
QuadForm lift_to_level(const QuadForm& q, std::int64_t p, std::int64_t beta);

/// Square roots of -d modulo 4p in [0, 2p).
std::vector<std::int64_t> level_roots(std::int64_t p, std::int64_t d);

/// 0 < d <= dmax with -d a square modulo 4p.
std::vector<std::int64_t> valid_discriminants(std::int64_t p, std::int64_t dmax);

} // namespace singmod
