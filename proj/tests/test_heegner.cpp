#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/heegner.hpp"
#include "singmod/phi.hpp"

#include <doctest.h>

#include <cmath>

using namespace singmod;

namespace {

double log2_distance(const Complex& a, const Complex& b) {
    const Complex diff = a - b;
    return diff.log2_abs_upper();
}

// Direct numerical sum of an exact q-expansion at tau.
Complex sum_series(const FourierSeries& f, const UpperHalfPoint& tau, mpfr_prec_t prec) {
    const Real pi2 = Real::pi(prec) * Real(prec, 2);
    const Real y = sqrt(Real(prec, tau.im_squared));
    const Real x(prec, tau.re);
    Complex total(prec);
    for (const auto& [e, c] : f.terms()) {
        const Real n(prec, make_rational(e, f.lattice()));
        const Complex qn = exp(Complex(-(pi2 * n * y), pi2 * n * x));
        total = total + Complex(qn.re * Real(prec, c), qn.im * Real(prec, c));
    }
    return total;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvariantViolation;
}

} // namespace

TEST_CASE("eta at i against the gamma closed form") {
    const auto e = eval_eta({0, 1});
    const mpfr_prec_t prec = 400;
    Real g(prec, 1);
    mpfr_set_ui(g.get(), 1, MPFR_RNDN);
    mpfr_div_ui(g.get(), g.get(), 4, MPFR_RNDN);
    mpfr_gamma(g.get(), g.get(), MPFR_RNDN);
    Real pi34(prec);
    mpfr_rootn_ui(pi34.get(), Real::pi(prec).get(), 4, MPFR_RNDN);
    pi34 = pi34 * pi34 * pi34;
    const Real closed = g / (Real(prec, 2) * pi34);
    CHECK(log2_distance(e.value, Complex(closed, Real(prec))) < -200);
    CHECK(e.log2_radius < -200);
}

TEST_CASE("eta picks up exp(i pi / 12) under translation") {
    const UpperHalfPoint tau{0, Rational(1, 4)};
    const auto a = eval_eta(tau);
    const auto b = eval_eta(tau.translated(1));
    const mpfr_prec_t prec = 400;
    const Real angle = Real::pi(prec) / Real(prec, 12);
    const Complex phase(cos(angle), sin(angle));
    CHECK(log2_distance(b.value, a.value * phase) < -200);
}

TEST_CASE("Delta from eta and from Eisenstein series agree") {
    for (const UpperHalfPoint& tau : {UpperHalfPoint{0, 1}, UpperHalfPoint{Rational(1, 3), Rational(5, 4)}}) {
        const auto eta = eval_eta(tau);
        Complex eta24 = eta.value;
        for (int i = 0; i < 23; ++i) eta24 = eta24 * eta.value;
        const auto e4 = eval_eisenstein(4, tau).value;
        const auto e6 = eval_eisenstein(6, tau).value;
        const Complex lhs = (e4 * e4 * e4 - e6 * e6) / Complex(Real(300, 1728), Real(300));
        CHECK(log2_distance(lhs, eta24) - eta24.log2_abs_lower() < -200);
    }
}

TEST_CASE("j at classical points") {
    CHECK(nearest_integer(eval_j({0, 1})) == 1728);
    const auto rho = eval_j({Rational(-1, 2), Rational(3, 4)});
    CHECK(rho.value.log2_abs_upper() < -200);
    CHECK(nearest_integer(eval_j({0, 2})) == 8000);
    CHECK(nearest_integer(eval_j({Rational(-1, 2), Rational(11, 4)})) == -32768);
    // Non-reduced input lands on the same value.
    CHECK(nearest_integer(eval_j({Rational(7, 1), Rational(1, 4)})) == 287496);
    CHECK(nearest_integer(eval_j({0, 4})) == 287496);
}

TEST_CASE("j agrees with its exact q-expansion") {
    const UpperHalfPoint tau{Rational(1, 5), Rational(9, 4)};
    const auto series = sum_series(j_series(120), tau, 400);
    const auto direct = eval_j(tau);
    CHECK(log2_distance(series, direct.value) < -180);
}

TEST_CASE("reduction to the fundamental domain") {
    const auto z = reduce_to_fundamental_domain({Rational(3, 7), Rational(1, 49)});
    CHECK(z.re >= Rational(-1, 2));
    CHECK(z.re < Rational(1, 2));
    CHECK(z.re * z.re + z.im_squared >= 1);
}

TEST_CASE("level-one traces") {
    CHECK(trace_oracle_level1(3) == -248);
    CHECK(trace_oracle_level1(7) == -4119);
    CHECK(trace_oracle_level1(11) == -33512);
    const auto g = TraceTableLevel1::build(101);
    for (std::int64_t d = 1; d <= 100; ++d) {
        if (!is_level1_discriminant(d)) continue;
        CAPTURE(d);
        CHECK(trace_oracle_level1(d) == trace_level1(d, g));
    }
}

TEST_CASE("Hauptmodul values at the explicit points") {
    CHECK(nearest_integer(eval_hauptmodul(2, {Rational(1, 2), Rational(1, 4)})) == -104);
    CHECK(nearest_integer(eval_hauptmodul(2, {0, Rational(1, 2)})) == 152);
    CHECK(nearest_integer(eval_hauptmodul(3, {Rational(-1, 2), Rational(1, 12)})) == -42);
    CHECK(nearest_integer(eval_hauptmodul(3, {Rational(1, 6), Rational(11, 36)})) == 22);
    // Gamma_0(2) invariance: a point and its translate agree.
    CHECK(nearest_integer(eval_hauptmodul(2, {Rational(-1, 2), Rational(1, 4)})) == -104);
}

TEST_CASE("Hauptmodul expansions") {
    for (const std::int64_t p : {2, 3, 5, 7, 13}) {
        CAPTURE(p);
        const auto f = hauptmodul_series(p, 40);
        CHECK(f.lattice() == 1);
        CHECK(f.valuation() == -1);
        CHECK(f.coefficient(-1) == 1);
        CHECK(f.coefficient(0) == 0);
        CHECK(f.has_integral_coefficients());
        // Exact series and product formula agree numerically.
        const UpperHalfPoint tau{Rational(1, 7), Rational(4, 1)};
        CHECK(log2_distance(sum_series(f, tau, 400), eval_hauptmodul(p, tau).value) < -100);
    }
    CHECK(hauptmodul_series(2, 3).coefficient(1) == 4372);
    CHECK(kind_of([] { hauptmodul_series(11, 5); }) == ErrorKind::UnsupportedLevel);
}

TEST_CASE("level-p traces") {
    CHECK(trace_oracle_star(2, 7) == -23);
    CHECK(trace_oracle_star(3, 11) == 22);
    CHECK(trace_oracle_star(5, 11) == -12);
    CHECK(trace_oracle_star(3, 3) == -14);
    CHECK(trace_oracle_star(2, 15) == -1);
    CHECK(trace_oracle_star(2, 23) == -94);
    CHECK(trace_oracle_star(5, 19) == 20);
    CHECK(kind_of([] { trace_oracle_star(11, 7); }) == ErrorKind::UnsupportedLevel);
    CHECK(kind_of([] { trace_oracle_star(2, 5); }) == ErrorKind::UnsupportedDiscriminant);
    CHECK(kind_of([] { trace_oracle_star(2, 4); }) == ErrorKind::UnsupportedDiscriminant);
}

TEST_CASE("root independence and agreement with the Jacobi coefficients") {
    for (const std::int64_t p : {2, 3, 5, 7, 13}) {
        const auto phi = construct_phi_p(p, window_for(p, 50));
        for (std::int64_t d = 1; d <= 50; ++d) {
            if (!is_square_class(p, d) || d % (p * p) == 0) continue;
            CAPTURE(p);
            CAPTURE(d);
            const auto roots = level_roots(p, d);
            REQUIRE_FALSE(roots.empty());
            const Integer expected = -extract_B(phi, d);
            for (const auto beta : roots) CHECK(trace_oracle_star(p, d, beta) == expected);
        }
    }
}

TEST_CASE("doubling the precision reproduces accepted traces") {
    const PrecisionContext wide{512, 32, 2'000'000};
    for (const std::int64_t d : {3, 23, 47, 100}) CHECK(trace_oracle_level1(d) == trace_oracle_level1(d, wide));
    for (const auto& [p, d] : std::vector<std::pair<int, int>>{{2, 47}, {3, 44}, {5, 39}, {7, 47}, {13, 43}}) {
        CAPTURE(p);
        CAPTURE(d);
        CHECK(trace_oracle_star(p, d) == trace_oracle_star(p, d, wide));
    }
}

TEST_CASE("acceptance rule") {
    Evaluation near{Complex(Real(128, Rational(7, 1)), Real(128)), -100};
    CHECK(nearest_integer(near) == 7);
    Evaluation off{Complex(Real(128, Rational(15, 2)), Real(128)), -100};
    CHECK(kind_of([&] { nearest_integer(off); }) == ErrorKind::NotNearInteger);
    Evaluation loose{Complex(Real(128, Rational(7, 1)), Real(128)), -10};
    CHECK(kind_of([&] { nearest_integer(loose); }) == ErrorKind::PrecisionExceeded);
}
