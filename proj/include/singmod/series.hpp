#pragma once

// Truncated Laurent/Puiseux series in q over exact rationals.
//
// A FourierSeries stores the coefficients of q^(m/L) for integer m on the
// lattice (1/L)Z. Everything at or above q^(trunc/L) is unknown, and reading
// it is an error rather than an implicit zero.

#include "singmod/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>

namespace singmod {

class FourierSeries {
  public:
    using Exponent = std::int64_t;
    using Terms = std::map<Exponent, Rational>;

    /// The zero series known nowhere (trunc at q^0).
    FourierSeries() = default;

    /// Builds a series from scaled exponents. Zero coefficients and those at
    /// or above trunc are dropped, and the lattice is coarsened when possible.
    FourierSeries(Exponent lattice, Exponent trunc, Terms terms);

    /// Integral-exponent constructor: {{exponent, coefficient}, ...} + O(q^trunc).
    static FourierSeries from_terms(std::initializer_list<std::pair<Exponent, Rational>> terms,
                                    Exponent trunc);
    static FourierSeries one(Exponent trunc) { return from_terms({{0, 1}}, trunc); }
    static FourierSeries zero(Exponent trunc) { return FourierSeries(1, trunc, {}); }

    Exponent lattice() const noexcept { return lattice_; }
    Exponent trunc_scaled() const noexcept { return trunc_; }
    Rational trunc() const { return make_rational(trunc_, lattice_); }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Lowest stored scaled exponent; trunc_scaled() for the zero series.
    Exponent valuation_scaled() const noexcept;
    Rational valuation() const { return make_rational(valuation_scaled(), lattice_); }

    Rational coefficient(const Rational& exponent) const;
    Rational coefficient(std::int64_t exponent) const { return coefficient(Rational(exponent)); }

    /// Drops everything at or above q^bound; bound must not exceed trunc().
    FourierSeries truncated(const Rational& bound) const;

    /// Same series written on the finer lattice (1/new_lattice)Z.
    FourierSeries on_lattice(Exponent new_lattice) const;

    bool has_integral_coefficients() const;

    FourierSeries operator-() const;

  private:
    void normalize();

    Exponent lattice_ = 1;
    Exponent trunc_ = 0;
    Terms terms_;
};

FourierSeries add(const FourierSeries& f, const FourierSeries& g);
FourierSeries sub(const FourierSeries& f, const FourierSeries& g);
FourierSeries mul(const FourierSeries& f, const FourierSeries& g);
FourierSeries scale(const FourierSeries& f, const Rational& c);
FourierSeries inv(const FourierSeries& f);
FourierSeries pow(const FourierSeries& f, std::int64_t e);
FourierSeries dilate(const FourierSeries& f, std::int64_t m);
/// Multiplies by q^e.
FourierSeries shift(const FourierSeries& f, const Rational& e);

inline FourierSeries operator+(const FourierSeries& f, const FourierSeries& g) { return add(f, g); }
inline FourierSeries operator-(const FourierSeries& f, const FourierSeries& g) { return sub(f, g); }
inline FourierSeries operator*(const FourierSeries& f, const FourierSeries& g) { return mul(f, g); }
inline FourierSeries operator*(const Rational& c, const FourierSeries& f) { return scale(f, c); }

/// Coefficientwise equality on the common window min(f.trunc, g.trunc).
bool agree(const FourierSeries& f, const FourierSeries& g);

/// Exact equality including the truncation bound.
bool operator==(const FourierSeries& f, const FourierSeries& g);

} // namespace singmod
