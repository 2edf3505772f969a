#pragma once

// Truncated Fourier expansions of Jacobi forms and the two weak generators
// a = phi_{-2,1} and b = phi_{0,1}.

#include "singmod/bivariate.hpp"
#include "singmod/series.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace singmod {

struct JacobiExpansion {
    std::int64_t weight = 0;
    std::int64_t index = 0;
    TwoVariableSeries series;

    /// c(n, r) for integral n, r; OutOfWindow when n >= qtrunc.
    Rational coefficient(std::int64_t n, std::int64_t r) const;
    std::int64_t qtrunc() const;
};

/// (zeta - 2 + zeta^-1) prod_{n>=1} (1-q^n zeta)^2 (1-q^n zeta^-1)^2 / (1-q^n)^4,
/// known for q-exponents below qmax.
JacobiExpansion gen_a(std::int64_t qmax);

/// 4 (f2^2 + f3^2 + f4^2) with f_i(tau, z) = theta_i(tau, z) / theta_i(tau, 0).
/// Throws NonIntegralResult if the sum does not land on integral lattices
/// with integral coefficients.
JacobiExpansion gen_b(std::int64_t qmax);

JacobiExpansion jacobi_mul(const JacobiExpansion& phi, const JacobiExpansion& psi);

/// f * phi where f is a modular form of the given weight.
JacobiExpansion scale_by_form(const JacobiExpansion& phi, const FourierSeries& f, std::int64_t weight);

JacobiExpansion jacobi_add(const JacobiExpansion& phi, const JacobiExpansion& psi);
JacobiExpansion jacobi_scale(const JacobiExpansion& phi, const Rational& c);

// Invariant checks. Each returns a description of the first violation found.

/// c(n, r) = c(n, -r).
std::optional<std::string> check_symmetry(const JacobiExpansion& phi);

/// c(n, r) = c(n + r l + N l^2, r + 2 N l) whenever both sides are in the window.
std::optional<std::string> check_elliptic_shift(const JacobiExpansion& phi,
                                                std::span<const std::int64_t> lambdas);

/// Equal 4Nn - r^2 implies equal coefficients across the window.
std::optional<std::string> check_discriminant_dependence(const JacobiExpansion& phi);

/// c(n, r) = 0 whenever r^2 > 4Nn + N^2.
std::optional<std::string> check_support_bound(const JacobiExpansion& phi);

/// Integral lattices and integral coefficients.
std::optional<std::string> check_integral(const JacobiExpansion& phi);

} // namespace singmod
