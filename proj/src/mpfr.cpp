#include "singmod/mpfr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace singmod {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

double log2_bound(mpfr_srcptr x, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(x)) return kNegInf;
    long e = 0;
    const double m = std::fabs(mpfr_get_d_2exp(&e, x, rnd));
    // m is in [0.5, 1]; nudge outward to absorb the rounding of log2.
    const double l = std::log2(m) + static_cast<double>(e);
    return rnd == MPFR_RNDA ? l + 1e-9 : l - 1e-9;
}

double log2_sum(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi)) + 1e-9;
}

} // namespace

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_zero(x_, 1);
}

Real::Real(mpfr_prec_t prec, long value) {
    mpfr_init2(x_, prec);
    mpfr_set_si(x_, value, MPFR_RNDN);
}

Real::Real(mpfr_prec_t prec, const Rational& value) {
    mpfr_init2(x_, prec);
    mpfr_set_q(x_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(x_, other.precision());
    mpfr_set(x_, other.x_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(x_, other.precision());
    mpfr_swap(x_, other.x_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(x_, other.precision());
        mpfr_set(x_, other.x_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(x_, other.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Real Real::pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.x_, MPFR_RNDN);
    return r;
}

Integer Real::round() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), x_, MPFR_RNDN);
    return z;
}

std::string Real::to_string(int digits) const {
    char* raw = nullptr;
    if (mpfr_asprintf(&raw, "%.*Rg", digits, x_) < 0 || raw == nullptr) return {};
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

double Real::log2_abs_upper() const { return log2_bound(x_, MPFR_RNDA); }
double Real::log2_abs_lower() const { return log2_bound(x_, MPFR_RNDZ); }

Real operator+(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

#define SINGMOD_UNARY(name, fn)                                                                             \
    Real name(const Real& a) {                                                                              \
        Real r(a.precision());                                                                              \
        fn(r.get(), a.get(), MPFR_RNDN);                                                                    \
        return r;                                                                                           \
    }
SINGMOD_UNARY(sqrt, mpfr_sqrt)
SINGMOD_UNARY(exp, mpfr_exp)
SINGMOD_UNARY(cos, mpfr_cos)
SINGMOD_UNARY(sin, mpfr_sin)
SINGMOD_UNARY(abs, mpfr_abs)
#undef SINGMOD_UNARY

double Complex::log2_abs_upper() const { return log2_sum(re.log2_abs_upper(), im.log2_abs_upper()); }

double Complex::log2_abs_lower() const { return std::max(re.log2_abs_lower(), im.log2_abs_lower()); }

std::string Complex::to_string(int digits) const {
    const bool negative = mpfr_signbit(im.get()) != 0;
    return re.to_string(digits) + (negative ? " - " : " + ") + abs(im).to_string(digits) + "i";
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
    const Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Complex exp(const Complex& z) {
    const Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

} // namespace singmod
