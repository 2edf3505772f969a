#include "singmod/jacobi.hpp"

#include "singmod/error.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace singmod {

Rational JacobiExpansion::coefficient(std::int64_t n, std::int64_t r) const {
    return series.coefficient(Rational(n), Rational(r));
}

std::int64_t JacobiExpansion::qtrunc() const {
    const Rational t = series.qtrunc();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return is_integral(t) ? f.get_si() : f.get_si() + 1;
}

JacobiExpansion gen_a(std::int64_t qmax) {
    if (qmax < 1) raise(ErrorKind::InvalidArgument, "gen_a needs qmax >= 1");
    // Dense rows: row m holds zeta^r for |r| <= m + 1 at offset qmax + 1.
    const std::int64_t off = qmax + 1;
    const auto width = static_cast<std::size_t>(2 * off + 1);
    std::vector<std::vector<Integer>> rows(static_cast<std::size_t>(qmax), std::vector<Integer>(width));
    rows[0][off - 1] = 1;
    rows[0][off] = -2;
    rows[0][off + 1] = 1;
    auto span_of = [&](std::int64_t m) { return std::min(m + 1, off); };
    for (std::int64_t n = 1; n < qmax; ++n) {
        for (int pass = 0; pass < 4; ++pass) {
            const std::int64_t dr = pass < 2 ? 1 : -1;
            for (std::int64_t m = qmax - 1; m >= n; --m) {
                auto& dst = rows[static_cast<std::size_t>(m)];
                const auto& src = rows[static_cast<std::size_t>(m - n)];
                const auto s = span_of(m - n);
                for (std::int64_t r = -s; r <= s; ++r) {
                    const auto& v = src[static_cast<std::size_t>(off + r)];
                    if (sgn(v) != 0) dst[static_cast<std::size_t>(off + r + dr)] -= v;
                }
            }
        }
        for (int pass = 0; pass < 4; ++pass) {
            for (std::int64_t m = n; m < qmax; ++m) {
                auto& dst = rows[static_cast<std::size_t>(m)];
                const auto& src = rows[static_cast<std::size_t>(m - n)];
                const auto s = span_of(m - n);
                for (std::int64_t r = -s; r <= s; ++r) {
                    const auto& v = src[static_cast<std::size_t>(off + r)];
                    if (sgn(v) != 0) dst[static_cast<std::size_t>(off + r)] += v;
                }
            }
        }
    }
    TwoVariableSeries::Terms terms;
    for (std::int64_t m = 0; m < qmax; ++m) {
        ZetaPolynomial::Terms poly;
        const auto& row = rows[static_cast<std::size_t>(m)];
        for (std::size_t i = 0; i < width; ++i) {
            if (sgn(row[i]) != 0) poly.emplace_hint(poly.end(), static_cast<std::int64_t>(i) - off, Rational(row[i]));
        }
        terms.emplace_hint(terms.end(), m, ZetaPolynomial(std::move(poly)));
    }
    return {-2, 1, TwoVariableSeries(1, 1, qmax, std::move(terms))};
}

namespace {

enum class Theta { Two, Three, Four };

// theta_i(tau, z) on the (1/8, 1/2) lattice, and theta_i(tau, 0).
std::pair<TwoVariableSeries, FourierSeries> theta_pair(Theta kind, std::int64_t trunc) {
    std::map<std::int64_t, ZetaPolynomial::Terms> rows;
    FourierSeries::Terms nulls;
    const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(trunc))) + 2;
    for (std::int64_t n = -bound; n <= bound; ++n) {
        const std::int64_t r = kind == Theta::Two ? 2 * n + 1 : 2 * n;
        const std::int64_t e = r * r;
        if (e >= trunc) continue;
        const int sign = (kind == Theta::Four && (n % 2 != 0)) ? -1 : 1;
        rows[e][r] += sign;
        nulls[e] += sign;
    }
    TwoVariableSeries::Terms terms;
    for (auto& [e, row] : rows) terms.emplace(e, ZetaPolynomial(std::move(row)));
    return {TwoVariableSeries(8, 2, trunc, std::move(terms)), FourierSeries(8, trunc, std::move(nulls))};
}

} // namespace

JacobiExpansion gen_b(std::int64_t qmax) {
    if (qmax < 1) raise(ErrorKind::InvalidArgument, "gen_b needs qmax >= 1");
    const std::int64_t trunc = 8 * qmax + 8;
    TwoVariableSeries sum;
    bool first = true;
    for (const Theta kind : {Theta::Two, Theta::Three, Theta::Four}) {
        const auto [num, den] = theta_pair(kind, trunc);
        const TwoVariableSeries f = mul(num, inv(den));
        const TwoVariableSeries sq = mul(f, f);
        sum = first ? sq : add(sum, sq);
        first = false;
    }
    TwoVariableSeries b = scale(sum, 4).truncated(Rational(qmax));
    if (b.qlattice() != 1 || b.zlattice() != 1 || !b.has_integral_coefficients()) {
        raise(ErrorKind::NonIntegralResult, "theta quotient sum is not an integral index-one expansion");
    }
    return {0, 1, std::move(b)};
}

JacobiExpansion jacobi_mul(const JacobiExpansion& phi, const JacobiExpansion& psi) {
    return {phi.weight + psi.weight, phi.index + psi.index, mul(phi.series, psi.series)};
}

JacobiExpansion scale_by_form(const JacobiExpansion& phi, const FourierSeries& f, std::int64_t weight) {
    return {phi.weight + weight, phi.index, mul(phi.series, f)};
}

JacobiExpansion jacobi_add(const JacobiExpansion& phi, const JacobiExpansion& psi) {
    if (phi.weight != psi.weight || phi.index != psi.index) {
        raise(ErrorKind::InvalidArgument, "adding Jacobi expansions of different weight or index");
    }
    return {phi.weight, phi.index, add(phi.series, psi.series)};
}

JacobiExpansion jacobi_scale(const JacobiExpansion& phi, const Rational& c) {
    return {phi.weight, phi.index, scale(phi.series, c)};
}

namespace {

std::string at(std::int64_t n, std::int64_t r) {
    return "(" + std::to_string(n) + ", " + std::to_string(r) + ")";
}

std::optional<std::string> require_integral_lattice(const JacobiExpansion& phi) {
    if (phi.series.qlattice() != 1 || phi.series.zlattice() != 1) {
        return "expansion is not on integral lattices";
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> check_symmetry(const JacobiExpansion& phi) {
    if (auto bad = require_integral_lattice(phi)) return bad;
    for (const auto& [n, poly] : phi.series.terms()) {
        if (!poly.is_symmetric()) return "asymmetric row at q^" + std::to_string(n);
    }
    return std::nullopt;
}

std::optional<std::string> check_elliptic_shift(const JacobiExpansion& phi,
                                                std::span<const std::int64_t> lambdas) {
    if (auto bad = require_integral_lattice(phi)) return bad;
    const auto trunc = phi.series.qtrunc_scaled();
    const auto idx = phi.index;
    for (const auto& [n, poly] : phi.series.terms()) {
        for (const auto& [r, c] : poly.terms()) {
            for (const auto l : lambdas) {
                const auto n2 = n + r * l + idx * l * l;
                const auto r2 = r + 2 * idx * l;
                if (n2 >= trunc) continue;
                if (phi.coefficient(n2, r2) != c) {
                    return "elliptic shift fails between " + at(n, r) + " and " + at(n2, r2);
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_discriminant_dependence(const JacobiExpansion& phi) {
    if (auto bad = require_integral_lattice(phi)) return bad;
    const auto trunc = phi.series.qtrunc_scaled();
    const auto idx4 = 4 * phi.index;
    std::map<std::int64_t, std::pair<Rational, std::pair<std::int64_t, std::int64_t>>> seen;
    for (const auto& [n, poly] : phi.series.terms()) {
        for (const auto& [r, c] : poly.terms()) {
            const auto d = idx4 * n - r * r;
            const auto [it, inserted] = seen.try_emplace(d, c, std::make_pair(n, r));
            if (!inserted && it->second.first != c) {
                return "coefficients at " + at(n, r) + " and " +
                       at(it->second.second.first, it->second.second.second) + " differ";
            }
        }
    }
    // Unstored in-window positions sharing a nonzero discriminant.
    for (const auto& [d, entry] : seen) {
        for (std::int64_t r = 0;; ++r) {
            const auto num = d + r * r;
            if (num >= idx4 * trunc) break;
            if (num < 0 || num % idx4 != 0) continue;
            if (phi.coefficient(num / idx4, r) != entry.first) {
                return "missing coefficient at " + at(num / idx4, r) + " for 4Nn - r^2 = " + std::to_string(d);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_support_bound(const JacobiExpansion& phi) {
    if (auto bad = require_integral_lattice(phi)) return bad;
    const auto idx = phi.index;
    for (const auto& [n, poly] : phi.series.terms()) {
        for (const auto& [r, c] : poly.terms()) {
            if (r * r > 4 * idx * n + idx * idx) return "coefficient outside the weak support at " + at(n, r);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_integral(const JacobiExpansion& phi) {
    if (auto bad = require_integral_lattice(phi)) return bad;
    for (const auto& [n, poly] : phi.series.terms()) {
        for (const auto& [r, c] : poly.terms()) {
            if (!is_integral(c)) return "non-integral coefficient at " + at(n, r);
        }
    }
    return std::nullopt;
}

} // namespace singmod
