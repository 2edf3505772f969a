#pragma once

// Thin RAII wrappers over MPFR. Results take the larger operand precision and
// round to nearest.

#include "singmod/rational.hpp"

#include <mpfr.h>

#include <string>

namespace singmod {

class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64);
    Real(mpfr_prec_t prec, long value);
    Real(mpfr_prec_t prec, const Rational& value);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    static Real pi(mpfr_prec_t prec);

    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(x_); }
    mpfr_ptr get() noexcept { return x_; }
    mpfr_srcptr get() const noexcept { return x_; }

    bool is_zero() const noexcept { return mpfr_zero_p(x_) != 0; }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    /// Nearest integer.
    Integer round() const;
    /// Decimal with the given number of significant digits.
    std::string to_string(int digits = 20) const;

    /// Upper and lower bounds on log2|x|; -infinity at zero.
    double log2_abs_upper() const;
    double log2_abs_lower() const;

  private:
    mpfr_t x_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real cos(const Real& a);
Real sin(const Real& a);
Real abs(const Real& a);

struct Complex {
    Real re;
    Real im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t precision() const noexcept { return std::max(re.precision(), im.precision()); }
    double log2_abs_upper() const;
    double log2_abs_lower() const;
    std::string to_string(int digits = 20) const;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex exp(const Complex& z);

} // namespace singmod
