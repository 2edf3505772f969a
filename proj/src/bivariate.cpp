#include "singmod/bivariate.hpp"

#include "int_kernel.hpp"
#include "singmod/error.hpp"

#include <algorithm>
#include <vector>

namespace singmod {

using detail::gcd64;
using detail::lcm64;

ZetaPolynomial::ZetaPolynomial(Terms terms) : terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

Rational ZetaPolynomial::coefficient(std::int64_t r) const {
    const auto it = terms_.find(r);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool ZetaPolynomial::is_symmetric() const {
    for (const auto& [r, c] : terms_) {
        const auto it = terms_.find(-r);
        if (it == terms_.end() || it->second != c) return false;
    }
    return true;
}

TwoVariableSeries::TwoVariableSeries(Exponent qlattice, Exponent zlattice, Exponent qtrunc, Terms terms)
    : qlattice_(qlattice), zlattice_(zlattice), qtrunc_(qtrunc), terms_(std::move(terms)) {
    if (qlattice_ <= 0 || zlattice_ <= 0) raise(ErrorKind::InvalidArgument, "lattices must be positive");
    normalize();
}

void TwoVariableSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first >= qtrunc_ || it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    std::int64_t kq = gcd64(qlattice_, qtrunc_ < 0 ? -qtrunc_ : qtrunc_);
    std::int64_t kz = zlattice_;
    for (const auto& [n, poly] : terms_) {
        kq = gcd64(kq, n < 0 ? -n : n);
        for (const auto& [r, c] : poly.terms()) kz = gcd64(kz, r < 0 ? -r : r);
    }
    if (kq == 1 && kz == 1) return;
    Terms coarse;
    for (auto& [n, poly] : terms_) {
        ZetaPolynomial::Terms row;
        for (const auto& [r, c] : poly.terms()) row.emplace_hint(row.end(), r / kz, c);
        coarse.emplace_hint(coarse.end(), n / kq, ZetaPolynomial(std::move(row)));
    }
    terms_ = std::move(coarse);
    qlattice_ /= kq;
    qtrunc_ /= kq;
    zlattice_ /= kz;
}

TwoVariableSeries TwoVariableSeries::from_form(const FourierSeries& f) {
    Terms terms;
    for (const auto& [e, c] : f.terms()) {
        terms.emplace_hint(terms.end(), e, ZetaPolynomial({{0, c}}));
    }
    return TwoVariableSeries(f.lattice(), 1, f.trunc_scaled(), std::move(terms));
}

TwoVariableSeries::Exponent TwoVariableSeries::valuation_scaled() const noexcept {
    return terms_.empty() ? qtrunc_ : terms_.begin()->first;
}

Rational TwoVariableSeries::coefficient(const Rational& n, const Rational& r) const {
    if (n >= qtrunc()) {
        raise(ErrorKind::OutOfWindow, "coefficient at q^" + n.get_str() + " beyond window q^" + qtrunc().get_str());
    }
    const Rational ns = n * qlattice_;
    const Rational rs = r * zlattice_;
    if (!is_integral(ns) || !is_integral(rs)) return 0;
    const auto it = terms_.find(ns.get_num().get_si());
    if (it == terms_.end()) return 0;
    return it->second.coefficient(rs.get_num().get_si());
}

const ZetaPolynomial* TwoVariableSeries::row(Exponent n_scaled) const {
    const auto it = terms_.find(n_scaled);
    return it == terms_.end() ? nullptr : &it->second;
}

TwoVariableSeries TwoVariableSeries::truncated(const Rational& bound) const {
    if (bound > qtrunc()) raise(ErrorKind::OutOfWindow, "cannot extend a truncated series");
    const auto ql = lcm64(qlattice_, bound.get_den().get_si());
    const Rational scaled = bound * ql;
    TwoVariableSeries f = on_lattices(ql, zlattice_);
    return TwoVariableSeries(ql, zlattice_, scaled.get_num().get_si(), std::move(f.terms_));
}

TwoVariableSeries TwoVariableSeries::on_lattices(Exponent ql, Exponent zl) const {
    if (ql % qlattice_ != 0 || zl % zlattice_ != 0) {
        raise(ErrorKind::InvalidArgument, "target lattices must refine the current ones");
    }
    const auto kq = ql / qlattice_;
    const auto kz = zl / zlattice_;
    TwoVariableSeries out;
    out.qlattice_ = ql;
    out.zlattice_ = zl;
    out.qtrunc_ = qtrunc_ * kq;
    for (const auto& [n, poly] : terms_) {
        ZetaPolynomial::Terms row;
        for (const auto& [r, c] : poly.terms()) row.emplace_hint(row.end(), r * kz, c);
        out.terms_.emplace_hint(out.terms_.end(), n * kq, ZetaPolynomial(std::move(row)));
    }
    return out;
}

bool TwoVariableSeries::has_integral_coefficients() const {
    for (const auto& [n, poly] : terms_) {
        for (const auto& [r, c] : poly.terms()) {
            if (!is_integral(c)) return false;
        }
    }
    return true;
}

TwoVariableSeries TwoVariableSeries::operator-() const { return scale(*this, Rational(-1)); }

namespace {

std::pair<TwoVariableSeries, TwoVariableSeries> unify(const TwoVariableSeries& f, const TwoVariableSeries& g) {
    const auto ql = lcm64(f.qlattice(), g.qlattice());
    const auto zl = lcm64(f.zlattice(), g.zlattice());
    return {f.on_lattices(ql, zl), g.on_lattices(ql, zl)};
}

TwoVariableSeries combine(const TwoVariableSeries& f, const TwoVariableSeries& g, const Rational& sign) {
    auto [a, b] = unify(f, g);
    const auto trunc = std::min(a.qtrunc_scaled(), b.qtrunc_scaled());
    std::map<std::int64_t, ZetaPolynomial::Terms> rows;
    for (const auto& [n, poly] : a.terms()) {
        if (n < trunc) rows[n] = poly.terms();
    }
    for (const auto& [n, poly] : b.terms()) {
        if (n >= trunc) break;
        auto& row = rows[n];
        for (const auto& [r, c] : poly.terms()) row[r] += sign * c;
    }
    TwoVariableSeries::Terms terms;
    for (auto& [n, row] : rows) terms.emplace_hint(terms.end(), n, ZetaPolynomial(std::move(row)));
    return TwoVariableSeries(a.qlattice(), a.zlattice(), trunc, std::move(terms));
}

struct DenseRow {
    std::int64_t n = 0;
    std::int64_t rmin = 0;
    std::vector<Integer> values;
};

std::vector<DenseRow> dense_rows(const TwoVariableSeries& f, const Integer& den) {
    std::vector<DenseRow> rows;
    rows.reserve(f.terms().size());
    for (const auto& [n, poly] : f.terms()) {
        const auto& t = poly.terms();
        DenseRow row;
        row.n = n;
        row.rmin = t.begin()->first;
        row.values.resize(static_cast<std::size_t>(t.rbegin()->first - row.rmin + 1));
        for (const auto& [r, c] : t) {
            Integer& z = row.values[static_cast<std::size_t>(r - row.rmin)];
            z = c.get_num();
            if (c.get_den() != den) {
                z *= den;
                mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), c.get_den_mpz_t());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Integer common_denominator(const TwoVariableSeries& f) {
    Integer den = 1;
    for (const auto& [n, poly] : f.terms()) {
        for (const auto& [r, c] : poly.terms()) {
            if (c.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    return den;
}

} // namespace

TwoVariableSeries add(const TwoVariableSeries& f, const TwoVariableSeries& g) { return combine(f, g, 1); }

TwoVariableSeries sub(const TwoVariableSeries& f, const TwoVariableSeries& g) { return combine(f, g, -1); }

TwoVariableSeries scale(const TwoVariableSeries& f, const Rational& c) {
    TwoVariableSeries::Terms terms;
    if (sgn(c) != 0) {
        for (const auto& [n, poly] : f.terms()) {
            ZetaPolynomial::Terms row;
            for (const auto& [r, v] : poly.terms()) row.emplace_hint(row.end(), r, v * c);
            terms.emplace_hint(terms.end(), n, ZetaPolynomial(std::move(row)));
        }
    }
    return TwoVariableSeries(f.qlattice(), f.zlattice(), f.qtrunc_scaled(), std::move(terms));
}

TwoVariableSeries mul(const TwoVariableSeries& f, const TwoVariableSeries& g) {
    auto [a, b] = unify(f, g);
    const auto va = a.valuation_scaled();
    const auto vb = b.valuation_scaled();
    const auto trunc = std::min(va + b.qtrunc_scaled(), vb + a.qtrunc_scaled());
    if (a.is_zero() || b.is_zero() || va + vb >= trunc) {
        return TwoVariableSeries(a.qlattice(), a.zlattice(), trunc, {});
    }
    const Integer da = common_denominator(a);
    const Integer db = common_denominator(b);
    const auto ra = dense_rows(a, da);
    const auto rb = dense_rows(b, db);

    // Output row extents.
    std::map<std::int64_t, DenseRow> out;
    for (const auto& x : ra) {
        for (const auto& y : rb) {
            const auto n = x.n + y.n;
            if (n >= trunc) break;
            const auto lo = x.rmin + y.rmin;
            const auto hi = lo + static_cast<std::int64_t>(x.values.size() + y.values.size()) - 2;
            auto [it, inserted] = out.try_emplace(n);
            DenseRow& row = it->second;
            if (inserted) {
                row.n = n;
                row.rmin = lo;
                row.values.resize(static_cast<std::size_t>(hi - lo + 1));
            } else {
                const auto old_hi = row.rmin + static_cast<std::int64_t>(row.values.size()) - 1;
                const auto new_lo = std::min(row.rmin, lo);
                const auto new_hi = std::max(old_hi, hi);
                if (new_lo != row.rmin || new_hi != old_hi) {
                    std::vector<Integer> grown(static_cast<std::size_t>(new_hi - new_lo + 1));
                    row.rmin = new_lo;
                    row.values = std::move(grown);
                }
            }
        }
    }
    for (const auto& x : ra) {
        for (const auto& y : rb) {
            const auto n = x.n + y.n;
            if (n >= trunc) break;
            DenseRow& row = out[n];
            const auto offset = x.rmin + y.rmin - row.rmin;
            for (std::size_t i = 0; i < x.values.size(); ++i) {
                if (sgn(x.values[i]) == 0) continue;
                mpz_ptr base = row.values[static_cast<std::size_t>(offset) + i].get_mpz_t();
                for (std::size_t j = 0; j < y.values.size(); ++j) {
                    if (sgn(y.values[j]) == 0) continue;
                    mpz_addmul(base + j, x.values[i].get_mpz_t(), y.values[j].get_mpz_t());
                }
            }
        }
    }
    const Integer den = da * db;
    TwoVariableSeries::Terms terms;
    for (auto& [n, row] : out) {
        ZetaPolynomial::Terms poly;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            if (sgn(row.values[i]) == 0) continue;
            poly.emplace_hint(poly.end(), row.rmin + static_cast<std::int64_t>(i),
                              den == 1 ? Rational(row.values[i]) : make_rational(row.values[i], den));
        }
        terms.emplace_hint(terms.end(), n, ZetaPolynomial(std::move(poly)));
    }
    return TwoVariableSeries(a.qlattice(), a.zlattice(), trunc, std::move(terms));
}

TwoVariableSeries mul(const TwoVariableSeries& f, const FourierSeries& g) {
    return mul(f, TwoVariableSeries::from_form(g));
}

bool agree(const TwoVariableSeries& f, const TwoVariableSeries& g) {
    auto [a, b] = unify(f, g);
    const auto trunc = std::min(a.qtrunc_scaled(), b.qtrunc_scaled());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (true) {
        const bool ea = ia == a.terms().end() || ia->first >= trunc;
        const bool eb = ib == b.terms().end() || ib->first >= trunc;
        if (ea || eb) return ea && eb;
        if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        ++ia;
        ++ib;
    }
}

bool operator==(const TwoVariableSeries& f, const TwoVariableSeries& g) {
    return f.qlattice() == g.qlattice() && f.zlattice() == g.zlattice() &&
           f.qtrunc_scaled() == g.qtrunc_scaled() && f.terms() == g.terms();
}

} // namespace singmod
