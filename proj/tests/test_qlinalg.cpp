#include "helpers.hpp"

#include "singmod/error.hpp"
#include "singmod/qlinalg.hpp"

#include <doctest.h>

#include <random>

using namespace singmod;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, int span) {
    RationalMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = testing::random_rational(rng, span);
    }
    return a;
}

void check_solution(const RationalMatrix& a, const std::vector<Rational>& rhs, const AffineSolution& s) {
    CHECK(a.multiply(s.particular) == rhs);
    for (const auto& k : s.kernel_basis) {
        for (const auto& v : a.multiply(k)) CHECK(sgn(v) == 0);
    }
}

} // namespace

TEST_CASE("identity system") {
    const auto a = RationalMatrix::identity(2);
    const std::vector<Rational> rhs{1, -2};
    const auto s = solve_affine(a, rhs);
    CHECK(s.particular == rhs);
    CHECK(s.kernel_basis.empty());
}

TEST_CASE("underdetermined system has a one-dimensional kernel") {
    RationalMatrix a(1, 2);
    a(0, 0) = 1;
    a(0, 1) = 1;
    const std::vector<Rational> rhs{0};
    const auto s = solve_affine(a, rhs);
    CHECK(s.kernel_basis.size() == 1);
    check_solution(a, rhs, s);
}

TEST_CASE("inconsistent system throws") {
    RationalMatrix a(2, 1);
    a(0, 0) = 1;
    a(1, 0) = 2;
    const std::vector<Rational> rhs{1, 3};
    for (auto strategy : {SolveStrategy::Fraction, SolveStrategy::Multimodular}) {
        try {
            solve_affine(a, rhs, strategy);
            FAIL("expected Inconsistent");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Inconsistent);
        }
    }
}

TEST_CASE("property: randomized 20x20 systems round-trip") {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(rng, 20, 20, 9);
        std::vector<Rational> x(20);
        for (auto& v : x) v = testing::random_rational(rng, 20);
        const auto rhs = a.multiply(x);
        const auto s = solve_affine(a, rhs, SolveStrategy::Fraction);
        check_solution(a, rhs, s);
        if (s.kernel_basis.empty()) CHECK(s.particular == x);
    }
}

TEST_CASE("property: multimodular and fraction paths agree on overdetermined systems") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 30 + 5 * static_cast<std::size_t>(trial);
        RationalMatrix a(n + 4, n);
        std::uniform_int_distribution<int> big(-1000000, 1000000);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = big(rng);
        }
        std::vector<Rational> x(n);
        for (auto& v : x) v = testing::random_rational(rng, 1000);
        const auto rhs = a.multiply(x);
        const auto fr = solve_affine(a, rhs, SolveStrategy::Fraction);
        const auto mm = solve_affine(a, rhs, SolveStrategy::Multimodular);
        CHECK(fr.kernel_basis.empty());
        CHECK(mm.kernel_basis.empty());
        CHECK(fr.particular == x);
        CHECK(mm.particular == x);
    }
}

TEST_CASE("multimodular path falls back for rank-deficient systems") {
    std::mt19937_64 rng(5);
    auto a = random_matrix(rng, 12, 10, 5);
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, 9) = a(i, 0) + a(i, 1);
    std::vector<Rational> x(10, Rational(1));
    const auto rhs = a.multiply(x);
    const auto s = solve_affine(a, rhs, SolveStrategy::Multimodular);
    CHECK(s.kernel_basis.size() == 1);
    check_solution(a, rhs, s);
}

TEST_CASE("rational reconstruction and primality helpers") {
    CHECK(detail::is_prime_u64(2));
    CHECK(detail::is_prime_u64(4611686018427387847ULL)); // largest prime below 2^62
    CHECK_FALSE(detail::is_prime_u64(4611686018427387849ULL));
    CHECK_FALSE(detail::is_prime_u64(1));
    const Integer m("1000000007");
    Rational out;
    // 3/7 mod m
    Integer u;
    const Integer seven = 7;
    mpz_invert(u.get_mpz_t(), seven.get_mpz_t(), m.get_mpz_t());
    u = (u * 3) % m;
    REQUIRE(detail::rational_reconstruct(u, m, out));
    CHECK(out == Rational(3, 7));
}
