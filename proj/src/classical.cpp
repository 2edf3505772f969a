#include "singmod/classical.hpp"

#include "int_kernel.hpp"
#include "singmod/error.hpp"

#include <string>

namespace singmod {

namespace {

void require_window(std::int64_t qmax) {
    if (qmax < 1) raise(ErrorKind::InvalidArgument, "qmax must be at least 1");
}

FourierSeries eisenstein(unsigned k, const Integer& factor, std::int64_t qmax) {
    require_window(qmax);
    FourierSeries::Terms terms;
    terms.emplace(0, Rational(1));
    for (std::int64_t n = 1; n < qmax; ++n) {
        terms.emplace_hint(terms.end(), n, Rational(factor * divisor_sigma(k, n)));
    }
    return FourierSeries(1, qmax, std::move(terms));
}

} // namespace

Rational EtaQuotientSpec::prefactor() const {
    Rational total = 0;
    for (const auto& [m, e] : factors) total += Rational(m * e, 24);
    total.canonicalize();
    return total;
}

FourierSeries euler_product(std::int64_t qmax) {
    require_window(qmax);
    // sum_{k in Z} (-1)^k q^(k(3k-1)/2)
    FourierSeries::Terms terms;
    terms.emplace(0, Rational(1));
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t e1 = k * (3 * k - 1) / 2;
        const std::int64_t e2 = k * (3 * k + 1) / 2;
        if (e1 >= qmax) break;
        const Rational sign = (k % 2 == 0) ? 1 : -1;
        terms.emplace(e1, sign);
        if (e2 < qmax) terms.emplace(e2, sign);
    }
    return FourierSeries(1, qmax, std::move(terms));
}

FourierSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t qmax) {
    require_window(qmax);
    const Rational v = spec.prefactor();
    // The product part is needed for exponents below qmax - v.
    const Rational need = Rational(qmax) - v;
    Integer need_ceil;
    mpz_cdiv_q(need_ceil.get_mpz_t(), need.get_num().get_mpz_t(), need.get_den().get_mpz_t());
    const std::int64_t window = std::max<std::int64_t>(1, need_ceil.get_si());

    FourierSeries product = FourierSeries::one(window);
    for (const auto& [m, e] : spec.factors) {
        if (m <= 0) raise(ErrorKind::InvalidArgument, "eta multiplier must be positive");
        if (e == 0) continue;
        const std::int64_t w = detail::ceil_div(window, m);
        FourierSeries factor = pow(euler_product(w), e);
        product = mul(product, dilate(factor, m));
    }
    product = product.truncated(Rational(window));
    return shift(product, v).truncated(Rational(qmax));
}

FourierSeries theta_series(std::int64_t qmax) {
    require_window(qmax);
    FourierSeries::Terms terms;
    terms.emplace(0, Rational(1));
    for (std::int64_t n = 1; n * n < qmax; ++n) {
        terms.emplace(n * n, Rational(n % 2 == 0 ? 2 : -2));
    }
    return FourierSeries(1, qmax, std::move(terms));
}

Integer divisor_sigma(unsigned k, std::int64_t n) {
    if (n <= 0) raise(ErrorKind::InvalidArgument, "divisor_sigma needs n > 0");
    Integer total = 0;
    Integer term;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), k);
        total += term;
        const std::int64_t e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(e), k);
            total += term;
        }
    }
    return total;
}

FourierSeries eisenstein_e4(std::int64_t qmax) { return eisenstein(3, 240, qmax); }

FourierSeries eisenstein_e6(std::int64_t qmax) { return eisenstein(5, -504, qmax); }

FourierSeries delta(std::int64_t qmax) {
    require_window(qmax);
    const FourierSeries e4 = eisenstein_e4(qmax);
    const FourierSeries e6 = eisenstein_e6(qmax);
    return scale(sub(pow(e4, 3), pow(e6, 2)), Rational(1, 1728));
}

FourierSeries delta_inv(std::int64_t qmax) {
    require_window(qmax);
    // inv loses two orders against a series of valuation one.
    return inv(delta(qmax + 2)).truncated(Rational(qmax));
}

FourierSeries j_series(std::int64_t qmax) {
    require_window(qmax);
    return mul(pow(eisenstein_e4(qmax + 1), 3), delta_inv(qmax));
}

FourierSeries zagier_g(std::int64_t qmax) {
    require_window(qmax);
    const std::int64_t inner = detail::ceil_div(qmax + 1, 4);
    const FourierSeries e4_4z = dilate(eisenstein_e4(inner), 4);
    const FourierSeries eta_4z = eta_quotient({{{4, -6}}}, qmax);
    const FourierSeries theta = theta_series(qmax + 1);
    return (-mul(theta, mul(e4_4z, eta_4z))).truncated(Rational(qmax));
}

TraceTableLevel1 TraceTableLevel1::from_series(const FourierSeries& g) {
    if (g.lattice() != 1) {
        raise(ErrorKind::InvariantViolation, "g(z) must have integral exponents");
    }
    if (g.trunc_scaled() < 1 || g.coefficient(-1) != -1 || g.coefficient(0) != 2) {
        raise(ErrorKind::InvariantViolation, "g(z) must begin -q^-1 + 2");
    }
    TraceTableLevel1 table;
    table.bound_ = g.trunc_scaled();
    for (const auto& [e, c] : g.terms()) {
        if (e <= 0) continue;
        if (!is_integral(c)) {
            raise(ErrorKind::NonIntegralResult, "t(" + std::to_string(e) + ") = " + c.get_str());
        }
        if (!is_level1_discriminant(e)) {
            raise(ErrorKind::InvariantViolation,
                  "nonzero coefficient of g at q^" + std::to_string(e) + " outside d = 0,3 mod 4");
        }
    }
    for (std::int64_t d = 3; d < table.bound_; ++d) {
        if (!is_level1_discriminant(d)) continue;
        table.values_.emplace_hint(table.values_.end(), d, g.coefficient(d).get_num());
    }
    return table;
}

bool is_level1_discriminant(std::int64_t d) noexcept { return d > 0 && (d % 4 == 0 || d % 4 == 3); }

Integer trace_level1(std::int64_t d, const TraceTableLevel1& table) {
    if (!is_level1_discriminant(d)) {
        raise(ErrorKind::UnsupportedDiscriminant,
              "t(d) needs d > 0 with d = 0 or 3 mod 4, got d = " + std::to_string(d));
    }
    if (d >= table.bound()) {
        raise(ErrorKind::OutOfWindow, "t(" + std::to_string(d) + ") beyond table bound " +
                                          std::to_string(table.bound()));
    }
    return table.values().at(d);
}

} // namespace singmod
