#pragma once

// Complex midpoint-radius arithmetic on top of MPFR. Radii are kept as log2
// values so bounds far below double range stay representable. Every
// operation adds its own rounding error to the propagated radius.

#include "singmod/error.hpp"
#include "singmod/mpfr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace singmod::detail {

inline constexpr double kExact = -std::numeric_limits<double>::infinity();

inline double lsum(double a, double b) {
    if (a == kExact) return b;
    if (b == kExact) return a;
    const double hi = std::max(a, b);
    return hi + std::log2(1.0 + std::exp2(std::min(a, b) - hi)) + 1e-9;
}

inline double lsum(double a, double b, double c) { return lsum(lsum(a, b), c); }
inline double lsum(double a, double b, double c, double d) { return lsum(lsum(a, b, c), d); }

struct Ball {
    Complex mid;
    double lrad = kExact;

    mpfr_prec_t prec() const { return mid.precision(); }
    /// Upper bound on log2 of |z| over the ball.
    double upper() const { return lsum(mid.log2_abs_upper(), lrad); }
    /// Lower bound on log2 of |z| over the ball; throws when the ball may contain 0.
    double lower() const {
        const double l = mid.log2_abs_lower();
        if (!(lrad < l - 1)) raise(ErrorKind::PrecisionExceeded, "ball too wide to bound away from zero");
        return l - 1;
    }
};

inline Ball real_ball(const Rational& q, mpfr_prec_t p) {
    Ball b{Complex(Real(p, q), Real(p)), kExact};
    if (!b.mid.re.is_zero()) b.lrad = b.mid.re.log2_abs_upper() - static_cast<double>(p);
    return b;
}

inline Ball real_ball(long v, mpfr_prec_t p) { return real_ball(Rational(v), p); }

inline Ball pi_ball(mpfr_prec_t p) {
    return {Complex(Real::pi(p), Real(p)), 2.0 - static_cast<double>(p)};
}

inline Ball operator+(const Ball& a, const Ball& b) {
    Ball r{a.mid + b.mid, 0};
    r.lrad = lsum(a.lrad, b.lrad, r.mid.log2_abs_upper() + 1 - static_cast<double>(r.prec()));
    return r;
}

inline Ball operator-(const Ball& a, const Ball& b) {
    Ball r{a.mid - b.mid, 0};
    r.lrad = lsum(a.lrad, b.lrad, r.mid.log2_abs_upper() + 1 - static_cast<double>(r.prec()));
    return r;
}

inline Ball operator*(const Ball& a, const Ball& b) {
    Ball r{a.mid * b.mid, 0};
    const double ma = a.mid.log2_abs_upper();
    const double mb = b.mid.log2_abs_upper();
    r.lrad = lsum(ma + b.lrad, mb + a.lrad, a.lrad + b.lrad, ma + mb + 3 - static_cast<double>(r.prec()));
    return r;
}

inline Ball operator/(const Ball& a, const Ball& b) {
    const double lb = b.lower();
    Ball r{a.mid / b.mid, 0};
    const double mq = a.mid.log2_abs_upper() - lb;
    r.lrad = lsum(1 + lsum(a.lrad, mq + b.lrad) - lb, mq + 5 - static_cast<double>(r.prec()));
    return r;
}

inline Ball scale(const Ball& a, const Integer& k) {
    const auto p = a.prec();
    const Ball kb = real_ball(Rational(k), p);
    return kb * a;
}

inline Ball exp(const Ball& z) {
    if (z.lrad > -2) raise(ErrorKind::PrecisionExceeded, "exponent known too loosely");
    Ball r{exp(z.mid), 0};
    const double mw = r.mid.log2_abs_upper();
    // |e^(z+h) - e^z| <= |e^z| (e^|h| - 1) <= 2 |e^z| |h| for |h| <= 1/2.
    r.lrad = lsum(mw + 1 + z.lrad, mw + 4 - static_cast<double>(r.prec()));
    return r;
}

inline Ball pow(Ball base, unsigned e) {
    Ball acc = real_ball(1, base.prec());
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

} // namespace singmod::detail
