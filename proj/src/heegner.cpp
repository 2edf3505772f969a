#include "singmod/heegner.hpp"

#include "ball.hpp"
#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/phi.hpp"

#include <cmath>

namespace singmod {

using detail::Ball;
using detail::kExact;
using detail::lsum;
using detail::pi_ball;
using detail::real_ball;

namespace {

constexpr double kLog2E = 1.4426950408889634;

Ball point_ball(const UpperHalfPoint& z, mpfr_prec_t prec) {
    if (sgn(z.im_squared) <= 0) raise(ErrorKind::InvalidArgument, "point is not in the upper half plane");
    const Ball x = real_ball(z.re, prec);
    const Real y = sqrt(Real(prec, z.im_squared));
    const double ylrad = y.log2_abs_upper() + 2 - static_cast<double>(prec);
    return {Complex(x.mid.re, y), lsum(x.lrad, ylrad)};
}

// exp(2 pi i tau / m).
Ball q_ball(const Ball& tau, long m) {
    const auto prec = tau.prec();
    const Ball c = pi_ball(prec) * real_ball(Rational(2, m), prec);
    const Ball iz{Complex(-tau.mid.im, tau.mid.re), tau.lrad};
    return exp(c * iz);
}

double log2_one_minus(double lq) { return std::log2(-std::expm1(lq / kLog2E)); }

std::size_t terms_needed(double lq, double slack, mpfr_prec_t prec, const PrecisionContext& ctx) {
    if (!(lq < 0)) raise(ErrorKind::PrecisionExceeded, "|q| is not bounded below 1");
    const double need = (-static_cast<double>(prec) - 5 - slack) / lq;
    if (!(need < static_cast<double>(ctx.term_cap))) {
        raise(ErrorKind::PrecisionExceeded, "term cap reached before the tail bound closes");
    }
    return static_cast<std::size_t>(std::ceil(std::max(need, 1.0)));
}

Ball eta_ball(const UpperHalfPoint& z, mpfr_prec_t prec, const PrecisionContext& ctx) {
    const Ball tau = point_ball(z, prec);
    const Ball q = q_ball(tau, 1);
    const double lq = q.upper();
    const double om = lq < 0 ? log2_one_minus(lq) : 0;
    // Tail of prod_{n > N}(1 - q^n) - 1 is at most 2 |q|^(N+1) / (1 - |q|).
    const std::size_t n_terms = terms_needed(lq, 1 - om, prec, ctx);
    const Ball one = real_ball(1, prec);
    Ball prod = one;
    Ball qn = q;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        prod = prod * (one - qn);
        if (n < n_terms) qn = qn * q;
    }
    prod.lrad = lsum(prod.lrad, prod.upper() + 1 + static_cast<double>(n_terms + 1) * lq - om);
    return q_ball(tau, 24) * prod;
}

Ball eisenstein_ball(int k, const UpperHalfPoint& z, mpfr_prec_t prec, const PrecisionContext& ctx) {
    const long c = k == 4 ? 240 : -504;
    const unsigned e = static_cast<unsigned>(k - 1);
    const Ball q = q_ball(point_ball(z, prec), 1);
    const double lq = q.upper();
    if (!(lq < 0)) raise(ErrorKind::PrecisionExceeded, "|q| is not bounded below 1");
    // sigma_e(n) <= 1.25 n^e; with ratio ((n+1)/n)^e |q| <= 1/2 the tail is
    // at most twice its first term.
    const double lc = std::log2(2 * 1.25 * std::fabs(static_cast<double>(c)));
    std::size_t n_terms = 1;
    auto tail = [&](std::size_t n) {
        return lc + e * std::log2(static_cast<double>(n + 1)) + static_cast<double>(n + 1) * lq;
    };
    auto ratio_ok = [&](std::size_t n) {
        return e * std::log2(static_cast<double>(n + 2) / static_cast<double>(n + 1)) + lq <= -1;
    };
    while (!(ratio_ok(n_terms) && tail(n_terms) <= -static_cast<double>(prec) - 4)) {
        if (++n_terms > ctx.term_cap) raise(ErrorKind::PrecisionExceeded, "term cap reached in Eisenstein series");
    }
    Ball acc = real_ball(1, prec);
    Ball qn = q;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        acc = acc + detail::scale(qn, c * divisor_sigma(e, static_cast<std::int64_t>(n)));
        if (n < n_terms) qn = qn * q;
    }
    acc.lrad = lsum(acc.lrad, tail(n_terms));
    return acc;
}

double imag_part(const UpperHalfPoint& z) { return std::sqrt(z.im_squared.get_d()); }

// Initial guard for products over |q| close to 1.
double cancellation_bits(const UpperHalfPoint& z) {
    const double y = imag_part(z);
    return 2 * std::log2(1 + 1 / (2 * M_PI * y)) + 16;
}

template <class Compute>
Evaluation adaptive(Compute compute, const PrecisionContext& ctx, double extra) {
    auto prec = static_cast<mpfr_prec_t>(ctx.bits + ctx.guard + static_cast<unsigned>(std::ceil(extra)));
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            const Ball r = compute(prec);
            const double target = -static_cast<double>(ctx.bits) + std::max(0.0, r.mid.log2_abs_upper());
            if (r.lrad <= target) return {r.mid, r.lrad};
            prec += static_cast<mpfr_prec_t>(std::ceil(r.lrad - target)) + 32;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExceeded || attempt == 7) throw;
            prec *= 2;
        }
    }
    raise(ErrorKind::PrecisionExceeded, "error radius did not close within the precision budget");
}

void require_hauptmodul(std::int64_t p) {
    if (!has_hauptmodul(p)) {
        raise(ErrorKind::UnsupportedLevel, "no eta-quotient Hauptmodul is implemented for p = " + std::to_string(p));
    }
}

Ball hauptmodul_ball(std::int64_t p, const UpperHalfPoint& z, mpfr_prec_t prec, const PrecisionContext& ctx) {
    const auto s = static_cast<unsigned>(24 / (p - 1));
    const Ball f = pow(eta_ball(z, prec, ctx) / eta_ball(z.scaled(p), prec, ctx), s);
    Integer c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(p), s / 2);
    const Ball cb = real_ball(Rational(c), prec);
    return f + real_ball(static_cast<long>(s), prec) + cb / f;
}

Ball as_ball(const Evaluation& e) { return {e.value, e.log2_radius}; }

template <class Sum>
Integer rounded_sum(Sum sum, PrecisionContext ctx) {
    for (int attempt = 0;; ++attempt) {
        const Evaluation total = sum(ctx);
        try {
            return nearest_integer(total);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExceeded || attempt == 3) throw;
            ctx.bits *= 2;
        }
    }
}

} // namespace

UpperHalfPoint reduce_to_fundamental_domain(UpperHalfPoint z) {
    if (sgn(z.im_squared) <= 0) raise(ErrorKind::InvalidArgument, "point is not in the upper half plane");
    while (true) {
        // Translate into [-1/2, 1/2).
        Rational shifted = z.re + Rational(1, 2);
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        z.re -= k;
        const Rational norm = z.re * z.re + z.im_squared;
        if (norm >= 1) return z;
        z.re = -z.re / norm;
        z.im_squared = z.im_squared / (norm * norm);
    }
}

Evaluation eval_eta(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    return adaptive([&](mpfr_prec_t prec) { return eta_ball(tau, prec, ctx); }, ctx, cancellation_bits(tau));
}

Evaluation eval_eisenstein(int k, const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    if (k != 4 && k != 6) raise(ErrorKind::InvalidArgument, "only E4 and E6 are available");
    return adaptive([&](mpfr_prec_t prec) { return eisenstein_ball(k, tau, prec, ctx); }, ctx,
                    cancellation_bits(tau));
}

Evaluation eval_j(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    const UpperHalfPoint z = reduce_to_fundamental_domain(tau);
    const double magnitude = 2 * M_PI * imag_part(z) * kLog2E;
    return adaptive(
        [&](mpfr_prec_t prec) {
            const Ball e4 = eisenstein_ball(4, z, prec, ctx);
            const Ball delta = pow(eta_ball(z, prec, ctx), 24);
            return pow(e4, 3) / delta;
        },
        ctx, magnitude + 16);
}

bool has_hauptmodul(std::int64_t p) noexcept { return p == 2 || p == 3 || p == 5 || p == 7 || p == 13; }

Evaluation eval_hauptmodul(std::int64_t p, const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    require_hauptmodul(p);
    return adaptive([&](mpfr_prec_t prec) { return hauptmodul_ball(p, tau, prec, ctx); }, ctx,
                    cancellation_bits(tau.scaled(p)));
}

FourierSeries hauptmodul_series(std::int64_t p, std::int64_t qmax) {
    require_hauptmodul(p);
    const std::int64_t s = 24 / (p - 1);
    const FourierSeries f = eta_quotient({{{1, s}, {p, -s}}}, qmax);
    Integer c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(s / 2));
    return (f + FourierSeries::from_terms({{0, s}}, qmax)) + scale(inv(f), Rational(c));
}

Integer nearest_integer(const Evaluation& e, double tolerance) {
    const double target = std::log2(tolerance) - 32;
    if (!(e.log2_radius <= target)) {
        raise(ErrorKind::PrecisionExceeded, "error radius 2^" + std::to_string(e.log2_radius) +
                                                " exceeds the acceptance bound");
    }
    const Integer n = e.value.re.round();
    const double dist = std::fabs((e.value.re - Real(e.value.re.precision(), Rational(n))).to_double());
    const double imag = std::fabs(e.value.im.to_double());
    if (dist > tolerance || imag > tolerance) {
        raise(ErrorKind::NotNearInteger, "value " + e.value.to_string(30) + " is not within " +
                                             std::to_string(tolerance) + " of an integer");
    }
    return n;
}

Integer trace_oracle_level1(std::int64_t d, const PrecisionContext& ctx) {
    const auto forms = class_representatives(d);
    return rounded_sum(
        [&](const PrecisionContext& c) {
            Ball total;
            bool first = true;
            for (const auto& q : forms) {
                const Evaluation j = eval_j(UpperHalfPoint::from(heegner_point(q)), c);
                const auto prec = j.value.precision();
                const Ball term = (as_ball(j) - real_ball(744, prec)) / real_ball(omega(q), prec);
                total = first ? term : total + term;
                first = false;
            }
            return Evaluation{total.mid, total.lrad};
        },
        ctx);
}

Integer trace_oracle_star(std::int64_t p, std::int64_t d, const PrecisionContext& ctx) {
    require_hauptmodul(p);
    const auto roots = level_roots(p, d);
    if (roots.empty()) {
        raise(ErrorKind::UnsupportedDiscriminant,
              "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p));
    }
    return trace_oracle_star(p, d, roots.front(), ctx);
}

Integer trace_oracle_star(std::int64_t p, std::int64_t d, std::int64_t beta, const PrecisionContext& ctx) {
    require_hauptmodul(p);
    if (!is_square_class(p, d) || d <= 0) {
        raise(ErrorKind::UnsupportedDiscriminant,
              "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p));
    }
    if (d % (p * p) == 0) {
        raise(ErrorKind::UnsupportedDiscriminant, "p^2 divides d; the lift does not realise the level-p classes");
    }
    const auto forms = class_representatives(d);
    std::vector<QuadForm> lifts;
    for (const auto& q : forms) lifts.push_back(lift_to_level(q, p, beta));
    return rounded_sum(
        [&](const PrecisionContext& c) {
            Ball total;
            for (std::size_t i = 0; i < forms.size(); ++i) {
                const Evaluation v = eval_hauptmodul(p, UpperHalfPoint::from(heegner_point(lifts[i])), c);
                const Ball term = as_ball(v) / real_ball(omega(forms[i]), v.value.precision());
                total = i == 0 ? term : total + term;
            }
            return Evaluation{total.mid, total.lrad};
        },
        ctx);
}

} // namespace singmod
