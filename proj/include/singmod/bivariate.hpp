#pragma once

// Two-variable truncated series sum c(n, r) q^n zeta^r with exact rational
// coefficients. Exponents n live on (1/qlattice)Z and r on (1/zlattice)Z;
// each q-power carries a finite Laurent polynomial in zeta.

#include "singmod/rational.hpp"
#include "singmod/series.hpp"

#include <cstdint>
#include <map>

namespace singmod {

class ZetaPolynomial {
  public:
    using Terms = std::map<std::int64_t, Rational>;

    ZetaPolynomial() = default;
    explicit ZetaPolynomial(Terms terms);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(std::int64_t r) const;
    /// Invariant under r -> -r.
    bool is_symmetric() const;

    friend bool operator==(const ZetaPolynomial&, const ZetaPolynomial&) = default;

  private:
    Terms terms_;
};

class TwoVariableSeries {
  public:
    using Exponent = std::int64_t;
    using Terms = std::map<Exponent, ZetaPolynomial>;

    TwoVariableSeries() = default;
    TwoVariableSeries(Exponent qlattice, Exponent zlattice, Exponent qtrunc, Terms terms);

    /// f(q) viewed as a series constant in zeta.
    static TwoVariableSeries from_form(const FourierSeries& f);

    Exponent qlattice() const noexcept { return qlattice_; }
    Exponent zlattice() const noexcept { return zlattice_; }
    Exponent qtrunc_scaled() const noexcept { return qtrunc_; }
    Rational qtrunc() const { return make_rational(qtrunc_, qlattice_); }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Exponent valuation_scaled() const noexcept;

    /// Coefficient of q^n zeta^r; OutOfWindow when n >= qtrunc.
    Rational coefficient(const Rational& n, const Rational& r) const;

    /// Polynomial in zeta at q^n (scaled exponents).
    const ZetaPolynomial* row(Exponent n_scaled) const;

    TwoVariableSeries truncated(const Rational& bound) const;
    TwoVariableSeries on_lattices(Exponent qlattice, Exponent zlattice) const;
    bool has_integral_coefficients() const;

    TwoVariableSeries operator-() const;

  private:
    void normalize();

    Exponent qlattice_ = 1;
    Exponent zlattice_ = 1;
    Exponent qtrunc_ = 0;
    Terms terms_;
};

TwoVariableSeries add(const TwoVariableSeries& f, const TwoVariableSeries& g);
TwoVariableSeries sub(const TwoVariableSeries& f, const TwoVariableSeries& g);
TwoVariableSeries mul(const TwoVariableSeries& f, const TwoVariableSeries& g);
TwoVariableSeries scale(const TwoVariableSeries& f, const Rational& c);
TwoVariableSeries mul(const TwoVariableSeries& f, const FourierSeries& g);

/// Coefficientwise equality on the common q-window.
bool agree(const TwoVariableSeries& f, const TwoVariableSeries& g);
bool operator==(const TwoVariableSeries& f, const TwoVariableSeries& g);

} // namespace singmod
