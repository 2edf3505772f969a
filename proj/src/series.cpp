#include "singmod/series.hpp"

#include "int_kernel.hpp"
#include "singmod/error.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace singmod {

using detail::gcd64;
using detail::lcm64;

FourierSeries::FourierSeries(Exponent lattice, Exponent trunc, Terms terms)
    : lattice_(lattice), trunc_(trunc), terms_(std::move(terms)) {
    if (lattice_ <= 0) {
        raise(ErrorKind::InvalidArgument, "series lattice must be positive");
    }
    normalize();
}

FourierSeries FourierSeries::from_terms(std::initializer_list<std::pair<Exponent, Rational>> terms,
                                        Exponent trunc) {
    Terms map;
    for (const auto& [e, c] : terms) map[e] += c;
    return FourierSeries(1, trunc, std::move(map));
}

void FourierSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first >= trunc_ || sgn(it->second) == 0) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    // Coarsen to the smallest lattice that still represents every stored
    // exponent and the truncation bound exactly.
    std::int64_t k = gcd64(lattice_, trunc_ < 0 ? -trunc_ : trunc_);
    for (const auto& [e, c] : terms_) {
        if (k == 1) break;
        k = gcd64(k, e < 0 ? -e : e);
    }
    if (k > 1) {
        Terms coarse;
        for (auto& [e, c] : terms_) coarse.emplace_hint(coarse.end(), e / k, std::move(c));
        terms_ = std::move(coarse);
        lattice_ /= k;
        trunc_ /= k;
    }
}

FourierSeries::Exponent FourierSeries::valuation_scaled() const noexcept {
    return terms_.empty() ? trunc_ : terms_.begin()->first;
}

Rational FourierSeries::coefficient(const Rational& exponent) const {
    if (exponent >= trunc()) {
        raise(ErrorKind::OutOfWindow, "coefficient of q^" + exponent.get_str() +
                                          " requested but series is known only below q^" +
                                          trunc().get_str());
    }
    const Rational scaled = exponent * lattice_;
    if (!is_integral(scaled)) return 0;
    const auto it = terms_.find(scaled.get_num().get_si());
    return it == terms_.end() ? Rational(0) : it->second;
}

FourierSeries FourierSeries::truncated(const Rational& bound) const {
    if (bound > trunc()) {
        raise(ErrorKind::OutOfWindow, "cannot extend a truncated series");
    }
    const Exponent new_lattice = lcm64(lattice_, bound.get_den().get_si());
    const Rational scaled = bound * new_lattice;
    FourierSeries f = on_lattice(new_lattice);
    return FourierSeries(new_lattice, scaled.get_num().get_si(), std::move(f.terms_));
}

FourierSeries FourierSeries::on_lattice(Exponent new_lattice) const {
    if (new_lattice % lattice_ != 0) {
        raise(ErrorKind::InvalidArgument, "target lattice must be a multiple of the current one");
    }
    const Exponent k = new_lattice / lattice_;
    FourierSeries out;
    out.lattice_ = new_lattice;
    out.trunc_ = trunc_ * k;
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e * k, c);
    return out;
}

bool FourierSeries::has_integral_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return is_integral(kv.second); });
}

FourierSeries FourierSeries::operator-() const {
    FourierSeries out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

namespace {

std::pair<FourierSeries, FourierSeries> unify(const FourierSeries& f, const FourierSeries& g) {
    const auto l = lcm64(f.lattice(), g.lattice());
    return {f.on_lattice(l), g.on_lattice(l)};
}

FourierSeries combine(const FourierSeries& f, const FourierSeries& g, bool subtract) {
    auto [a, b] = unify(f, g);
    const auto trunc = std::min(a.trunc_scaled(), b.trunc_scaled());
    FourierSeries::Terms out;
    for (const auto& [e, c] : a.terms()) {
        if (e < trunc) out.emplace_hint(out.end(), e, c);
    }
    for (const auto& [e, c] : b.terms()) {
        if (e >= trunc) break;
        if (subtract) {
            out[e] -= c;
        } else {
            out[e] += c;
        }
    }
    return FourierSeries(a.lattice(), trunc, std::move(out));
}

} // namespace

FourierSeries add(const FourierSeries& f, const FourierSeries& g) { return combine(f, g, false); }

FourierSeries sub(const FourierSeries& f, const FourierSeries& g) { return combine(f, g, true); }

FourierSeries scale(const FourierSeries& f, const Rational& c) {
    FourierSeries::Terms out;
    if (sgn(c) != 0) {
        for (const auto& [e, v] : f.terms()) out.emplace_hint(out.end(), e, v * c);
    }
    return FourierSeries(f.lattice(), f.trunc_scaled(), std::move(out));
}

FourierSeries mul(const FourierSeries& f, const FourierSeries& g) {
    auto [a, b] = unify(f, g);
    const auto va = a.valuation_scaled();
    const auto vb = b.valuation_scaled();
    const auto trunc = std::min(va + b.trunc_scaled(), vb + a.trunc_scaled());
    if (a.is_zero() || b.is_zero() || va + vb >= trunc) {
        return FourierSeries(a.lattice(), trunc, {});
    }
    const Integer da = detail::common_denominator(a.terms());
    const Integer db = detail::common_denominator(b.terms());
    const auto xa = detail::scaled_integers(a.terms(), da);
    const auto xb = detail::scaled_integers(b.terms(), db);
    const auto base = va + vb;
    std::vector<Integer> acc(static_cast<std::size_t>(trunc - base));
    for (const auto& [ea, ca] : xa) {
        for (const auto& [eb, cb] : xb) {
            const auto e = ea + eb;
            if (e >= trunc) break;
            mpz_addmul(acc[static_cast<std::size_t>(e - base)].get_mpz_t(), ca.get_mpz_t(),
                       cb.get_mpz_t());
        }
    }
    const Integer den = da * db;
    FourierSeries::Terms out;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (sgn(acc[i]) == 0) continue;
        out.emplace_hint(out.end(), base + static_cast<std::int64_t>(i),
                         den == 1 ? Rational(acc[i]) : make_rational(acc[i], den));
    }
    return FourierSeries(a.lattice(), trunc, std::move(out));
}

FourierSeries inv(const FourierSeries& f) {
    if (f.is_zero()) {
        raise(ErrorKind::ZeroLeadingTerm, "cannot invert a series that vanishes in its window");
    }
    const auto v = f.valuation_scaled();
    const auto rel = f.trunc_scaled() - v; // relative precision, scaled
    const Rational lead = f.terms().begin()->second;
    // Unit part u = f / (lead q^v) = 1 + sum_{k>0} u_k q^(k/L).
    std::vector<std::pair<std::int64_t, Rational>> unit;
    bool integral = true;
    for (const auto& [e, c] : f.terms()) {
        if (e == v) continue;
        Rational u = c / lead;
        integral = integral && is_integral(u);
        unit.emplace_back(e - v, std::move(u));
    }
    FourierSeries::Terms out;
    const Rational lead_inv = 1 / lead;
    if (integral) {
        std::vector<std::pair<std::int64_t, Integer>> ui;
        ui.reserve(unit.size());
        for (auto& [k, c] : unit) ui.emplace_back(k, c.get_num());
        std::vector<Integer> h(static_cast<std::size_t>(rel));
        h[0] = 1;
        for (std::int64_t k = 1; k < rel; ++k) {
            Integer& hk = h[static_cast<std::size_t>(k)];
            for (const auto& [j, uj] : ui) {
                if (j > k) break;
                mpz_submul(hk.get_mpz_t(), uj.get_mpz_t(), h[static_cast<std::size_t>(k - j)].get_mpz_t());
            }
        }
        for (std::int64_t k = 0; k < rel; ++k) {
            if (sgn(h[static_cast<std::size_t>(k)]) != 0) {
                out.emplace_hint(out.end(), k - v, Rational(h[static_cast<std::size_t>(k)]) * lead_inv);
            }
        }
    } else {
        std::vector<Rational> h(static_cast<std::size_t>(rel));
        h[0] = 1;
        for (std::int64_t k = 1; k < rel; ++k) {
            Rational acc = 0;
            for (const auto& [j, uj] : unit) {
                if (j > k) break;
                acc -= uj * h[static_cast<std::size_t>(k - j)];
            }
            h[static_cast<std::size_t>(k)] = std::move(acc);
        }
        for (std::int64_t k = 0; k < rel; ++k) {
            if (sgn(h[static_cast<std::size_t>(k)]) != 0) {
                out.emplace_hint(out.end(), k - v, h[static_cast<std::size_t>(k)] * lead_inv);
            }
        }
    }
    return FourierSeries(f.lattice(), f.trunc_scaled() - 2 * v, std::move(out));
}

FourierSeries pow(const FourierSeries& f, std::int64_t e) {
    if (e < 0) return pow(inv(f), -e);
    if (e == 0) {
        return FourierSeries(f.lattice(), f.trunc_scaled() - f.valuation_scaled(), {{0, Rational(1)}});
    }
    FourierSeries base = f;
    FourierSeries result;
    bool have = false;
    while (e > 0) {
        if (e & 1) {
            result = have ? mul(result, base) : base;
            have = true;
        }
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

FourierSeries dilate(const FourierSeries& f, std::int64_t m) {
    if (m <= 0) raise(ErrorKind::InvalidArgument, "dilation factor must be positive");
    FourierSeries::Terms out;
    for (const auto& [e, c] : f.terms()) out.emplace_hint(out.end(), e * m, c);
    return FourierSeries(f.lattice(), f.trunc_scaled() * m, std::move(out));
}

FourierSeries shift(const FourierSeries& f, const Rational& e) {
    const auto l = lcm64(f.lattice(), e.get_den().get_si());
    const FourierSeries g = f.on_lattice(l);
    const Rational scaled = e * l;
    const std::int64_t s = scaled.get_num().get_si();
    FourierSeries::Terms out;
    for (const auto& [k, c] : g.terms()) out.emplace_hint(out.end(), k + s, c);
    return FourierSeries(l, g.trunc_scaled() + s, std::move(out));
}

bool agree(const FourierSeries& f, const FourierSeries& g) {
    auto [a, b] = unify(f, g);
    const auto trunc = std::min(a.trunc_scaled(), b.trunc_scaled());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (true) {
        const bool ea = ia == a.terms().end() || ia->first >= trunc;
        const bool eb = ib == b.terms().end() || ib->first >= trunc;
        if (ea || eb) return ea && eb;
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
}

bool operator==(const FourierSeries& f, const FourierSeries& g) {
    return f.lattice() == g.lattice() && f.trunc_scaled() == g.trunc_scaled() && f.terms() == g.terms();
}

} // namespace singmod
