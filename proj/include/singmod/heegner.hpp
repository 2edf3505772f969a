#pragma once

// High-precision evaluation of eta, E4, E6, j and the genus-zero Hauptmoduln
// j_p* at exact points of the upper half plane, and trace sums over Heegner
// points. Every value carries a conservative absolute error radius.

#include "singmod/mpfr.hpp"
#include "singmod/quadratic.hpp"
#include "singmod/series.hpp"

#include <cstddef>
#include <cstdint>

namespace singmod {

struct PrecisionContext {
    unsigned bits = 256;
    unsigned guard = 32;
    std::size_t term_cap = 2'000'000;
};

/// x + iy with x and y^2 rational.
struct UpperHalfPoint {
    Rational re;
    Rational im_squared;

    static UpperHalfPoint from(const HeegnerPoint& h) { return {h.real(), h.imag_squared()}; }
    /// The point m * tau.
    UpperHalfPoint scaled(std::int64_t m) const { return {re * m, im_squared * m * m}; }
    /// The point tau + k.
    UpperHalfPoint translated(const Rational& k) const { return {re + k, im_squared}; }
};

/// Image under SL2(Z) in the standard fundamental domain.
UpperHalfPoint reduce_to_fundamental_domain(UpperHalfPoint z);

struct Evaluation {
    Complex value;
    /// log2 of the absolute error radius.
    double log2_radius = 0;
};

Evaluation eval_eta(const UpperHalfPoint& tau, const PrecisionContext& ctx = {});
/// k = 4 or 6.
Evaluation eval_eisenstein(int k, const UpperHalfPoint& tau, const PrecisionContext& ctx = {});
Evaluation eval_j(const UpperHalfPoint& tau, const PrecisionContext& ctx = {});

/// True for the five primes with an eta-quotient Hauptmodul.
bool has_hauptmodul(std::int64_t p) noexcept;

/// j_p* = f + s + p^(s/2) / f with f = (eta(tau) / eta(p tau))^s, s = 24/(p-1).
Evaluation eval_hauptmodul(std::int64_t p, const UpperHalfPoint& tau, const PrecisionContext& ctx = {});

/// Exact q-expansion of j_p*, known below qmax.
FourierSeries hauptmodul_series(std::int64_t p, std::int64_t qmax);

/// sum over reduced forms of discriminant -d of (j(alpha_Q) - 744) / omega_Q.
Integer trace_oracle_level1(std::int64_t d, const PrecisionContext& ctx = {});

/// sum over level-one classes Q of j_p*(alpha_Q') / omega_Q, Q' the lift of Q
/// with p | a and b = beta mod 2p. The first overload takes the smallest beta.
Integer trace_oracle_star(std::int64_t p, std::int64_t d, const PrecisionContext& ctx = {});
Integer trace_oracle_star(std::int64_t p, std::int64_t d, std::int64_t beta, const PrecisionContext& ctx = {});

/// Rounds an evaluated sum. Throws PrecisionExceeded when the radius is not
/// below 2^-32 of the tolerance and NotNearInteger when the value is farther
/// than the tolerance from an integer.
Integer nearest_integer(const Evaluation& e, double tolerance = 1e-6);

} // namespace singmod
