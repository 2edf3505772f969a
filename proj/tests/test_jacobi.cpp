#include "helpers.hpp"

#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/jacobi.hpp"

#include <doctest.h>

#include <array>
#include <random>

using namespace singmod;

namespace {

void check_row(const JacobiExpansion& phi, std::int64_t n, std::map<std::int64_t, int> expected) {
    const auto* row = phi.series.row(n);
    REQUIRE(row != nullptr);
    ZetaPolynomial::Terms want;
    for (auto [r, c] : expected) want[r] = c;
    CHECK(row->terms() == want);
}

} // namespace

TEST_CASE("gen_a low rows") {
    const auto a = gen_a(6);
    CHECK(a.weight == -2);
    CHECK(a.index == 1);
    check_row(a, 0, {{-1, 1}, {0, -2}, {1, 1}});
    check_row(a, 1, {{-2, -2}, {-1, 8}, {0, -12}, {1, 8}, {2, -2}});
    CHECK(a.coefficient(2, 3) == 1);
    CHECK(a.coefficient(2, 2) == -12);
    CHECK(a.coefficient(2, 1) == 39);
    CHECK(a.coefficient(2, 0) == -56);
    CHECK(a.coefficient(3, 1) == 152);
    CHECK(a.coefficient(3, 0) == -208);
    CHECK_THROWS_AS(a.coefficient(6, 0), Error);
}

TEST_CASE("gen_b low rows") {
    const auto b = gen_b(6);
    CHECK(b.weight == 0);
    CHECK(b.index == 1);
    check_row(b, 0, {{-1, 1}, {0, 10}, {1, 1}});
    check_row(b, 1, {{-2, 10}, {-1, -64}, {0, 108}, {1, -64}, {2, 10}});
    CHECK(b.coefficient(2, 3) == 1);
    CHECK(b.coefficient(2, 2) == 108);
    CHECK(b.coefficient(2, 1) == -513);
    CHECK(b.coefficient(2, 0) == 808);
    CHECK(b.coefficient(3, 3) == -64);
    CHECK(b.coefficient(3, 2) == 808);
    CHECK(b.coefficient(3, 1) == -2752);
    CHECK(b.coefficient(3, 0) == 4016);
}

TEST_CASE("generator invariants") {
    const std::array<std::int64_t, 4> lambdas{-2, -1, 1, 2};
    for (const auto& phi : {gen_a(25), gen_b(25)}) {
        CHECK_FALSE(check_integral(phi));
        CHECK_FALSE(check_symmetry(phi));
        CHECK_FALSE(check_elliptic_shift(phi, lambdas));
        CHECK_FALSE(check_discriminant_dependence(phi));
        CHECK_FALSE(check_support_bound(phi));
    }
}

TEST_CASE("gen_a agrees with a direct product oracle") {
    // Multiply out the factors one at a time on TwoVariableSeries.
    const std::int64_t qmax = 8;
    TwoVariableSeries acc(1, 1, qmax, {{0, ZetaPolynomial(ZetaPolynomial::Terms{{-1, 1}, {0, -2}, {1, 1}})}});
    for (std::int64_t n = 1; n < qmax; ++n) {
        const TwoVariableSeries up(1, 1, qmax, {{0, ZetaPolynomial(ZetaPolynomial::Terms{{0, 1}})}, {n, ZetaPolynomial(ZetaPolynomial::Terms{{1, -1}})}});
        const TwoVariableSeries down(1, 1, qmax, {{0, ZetaPolynomial(ZetaPolynomial::Terms{{0, 1}})}, {n, ZetaPolynomial(ZetaPolynomial::Terms{{-1, -1}})}});
        acc = mul(mul(mul(mul(acc, up), up), down), down);
        const auto geometric = inv(FourierSeries::from_terms({{0, 1}, {n, -1}}, qmax));
        acc = mul(acc, pow(geometric, 4));
    }
    CHECK(agree(acc, gen_a(qmax).series));
}

TEST_CASE("jacobi_mul and scale_by_form") {
    const auto a = gen_a(5);
    const auto b = gen_b(5);
    const auto ab = jacobi_mul(a, b);
    CHECK(ab.weight == -2);
    CHECK(ab.index == 2);
    const auto a2 = jacobi_mul(a, a);
    check_row(a2, 0, {{-2, 1}, {-1, -4}, {0, 6}, {1, -4}, {2, 1}});
    const JacobiExpansion one{0, 0, TwoVariableSeries::from_form(FourierSeries::one(5))};
    CHECK(jacobi_mul(a, one).series == a.series);
    const auto e4a = scale_by_form(a, eisenstein_e4(5), 4);
    CHECK(e4a.weight == 2);
    CHECK(e4a.index == 1);
    check_row(e4a, 0, {{-1, 1}, {0, -2}, {1, 1}});
    CHECK(scale_by_form(a, FourierSeries::zero(5), 4).series.is_zero());
}

TEST_CASE("two-variable series ring axioms on random inputs") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> start(-2, 2);
    std::uniform_int_distribution<int> width(0, 3);
    auto random_series = [&] {
        const std::int64_t v = start(rng);
        TwoVariableSeries::Terms rows;
        for (std::int64_t n = v; n < v + 6; ++n) {
            ZetaPolynomial::Terms poly;
            const int w = width(rng);
            for (std::int64_t r = -w; r <= w; ++r) poly[r] = testing::random_rational(rng, 5);
            rows.emplace(n, ZetaPolynomial(poly));
        }
        return TwoVariableSeries(1, 1, v + 6, std::move(rows));
    };
    for (int trial = 0; trial < 60; ++trial) {
        const auto f = random_series();
        const auto g = random_series();
        const auto h = random_series();
        CHECK(agree(add(f, g), add(g, f)));
        CHECK(agree(add(add(f, g), h), add(f, add(g, h))));
        CHECK(agree(mul(f, g), mul(g, f)));
        CHECK(agree(mul(mul(f, g), h), mul(f, mul(g, h))));
        CHECK(agree(mul(f, add(g, h)), add(mul(f, g), mul(f, h))));
        CHECK(sub(f, f).is_zero());
        CHECK(agree(add(f, -g), sub(f, g)));
    }
}
