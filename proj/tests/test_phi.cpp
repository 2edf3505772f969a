#include "helpers.hpp"

#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/phi.hpp"
#include "singmod/qlinalg.hpp"

#include <doctest.h>

#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

using namespace singmod;

namespace {

const PhiP& phi(std::int64_t p) {
    static std::map<std::int64_t, PhiP> built;
    auto it = built.find(p);
    if (it == built.end()) it = built.emplace(p, construct_phi_p(p, p == 2 ? 30 : 12)).first;
    return it->second;
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

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("singmod_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("singular classes") {
    using Classes = std::vector<std::pair<std::int64_t, std::int64_t>>;
    CHECK(singular_classes(2) == Classes{{0, 0}, {0, 1}, {0, 2}});
    CHECK(singular_classes(5) == Classes{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 5}});
    CHECK(singular_classes(13).size() == 24);
    for (const auto p : kGenusZeroPrimes) {
        std::size_t expected = 1;
        for (std::int64_t r = 1; r <= p; ++r) expected += static_cast<std::size_t>((r * r + 4 * p - 1) / (4 * p));
        CHECK(singular_classes(p).size() == expected);
    }
    CHECK(kind_of([] { singular_classes(4); }) == ErrorKind::UnsupportedLevel);
}

TEST_CASE("the index-two system from its two monomials") {
    const auto a = gen_a(3);
    const auto b = gen_b(3);
    const auto col1 = scale_by_form(jacobi_mul(a, b), eisenstein_e4(3), 4);
    const auto col2 = scale_by_form(jacobi_mul(a, a), eisenstein_e6(3), 6);
    RationalMatrix m(3, 2);
    const auto classes = singular_classes(2);
    std::vector<Rational> rhs{-2, 1, 0};
    for (std::size_t i = 0; i < 3; ++i) {
        m(i, 0) = col1.coefficient(classes[i].first, classes[i].second);
        m(i, 1) = col2.coefficient(classes[i].first, classes[i].second);
    }
    const auto sol = solve_affine(m, rhs);
    CHECK(sol.kernel_basis.empty());
    CHECK(sol.particular == std::vector<Rational>{Rational(1, 12), Rational(-1, 12)});
}

TEST_CASE("phi_2 equals (E4 a b - E6 a^2) / 12") {
    const auto& f = phi(2);
    const auto a = gen_a(30);
    const auto b = gen_b(30);
    const auto oracle = jacobi_scale(jacobi_add(scale_by_form(jacobi_mul(a, b), eisenstein_e4(30), 4),
                                                jacobi_scale(scale_by_form(jacobi_mul(a, a), eisenstein_e6(30), 6), -1)),
                                     Rational(1, 12));
    CHECK(f.expansion.weight == 2);
    CHECK(f.expansion.index == 2);
    CHECK(f.expansion.series == oracle.series);
    CHECK(f.expansion.coefficient(0, 1) == 1);
    CHECK(f.expansion.coefficient(0, 0) == -2);
    CHECK(f.expansion.coefficient(0, 2) == 0);
}

TEST_CASE("phi_2 coefficients") {
    const auto& f = phi(2);
    CHECK(extract_B(f, -1) == 1);
    CHECK(extract_B(f, 0) == -2);
    CHECK(extract_B(f, 7) == 23);
    CHECK(f.expansion.coefficient(26, 1) == -113643);
    CHECK(f.expansion.coefficient(29, 5) == -113643);
    CHECK(extract_B(f, 207) == -113643);
    CHECK(trace_star(f, 207) == 113643);
    CHECK(trace_star(f, 207) % 3 == 0);
    CHECK(trace_star(f, -1) == -1);
    CHECK(trace_star(f, -9) == 0);
    CHECK(kind_of([&] { extract_B(f, 5); }) == ErrorKind::UnsupportedDiscriminant);
}

TEST_CASE("traces for p = 2, 3, 5 against the published table") {
    const std::map<std::int64_t, std::map<std::int64_t, int>> table{
        {2, {{4, -52}, {7, -23}, {8, 152}, {12, -496}, {15, -1}, {16, 1036}, {20, -2256}, {23, -94}, {24, 4400}, {28, -8192}}},
        {3, {{3, -14}, {8, -34}, {11, 22}, {12, 52}, {15, -138}, {20, -116}, {23, 115}, {24, 348}, {27, -482}}},
        {5, {{4, -8}, {11, -12}, {15, -38}, {16, -6}, {19, 20}, {20, 12}, {24, -44}}},
    };
    for (const auto& [p, column] : table) {
        const auto& f = phi(p);
        for (std::int64_t d = 3; d <= 28; ++d) {
            if (!is_level1_discriminant(d)) continue;
            const auto it = column.find(d);
            CAPTURE(p);
            CAPTURE(d);
            if (it == column.end()) {
                CHECK_FALSE(is_square_class(p, d));
            } else {
                REQUIRE(is_square_class(p, d));
                CHECK(trace_star(f, d) == it->second);
                CHECK(f.table.at(d) == -it->second);
            }
        }
    }
}

TEST_CASE("table window") {
    const auto& f = phi(3);
    const auto qtrunc = f.expansion.qtrunc();
    CHECK(f.table.dmax() == table_bound(3, qtrunc));
    const std::int64_t beyond = f.table.dmax() + 1;
    REQUIRE(is_square_class(3, beyond));
    CHECK(kind_of([&] { f.table.at(beyond); }) == ErrorKind::OutOfWindow);
    CHECK(kind_of([&] { extract_B(f, beyond); }) == ErrorKind::OutOfWindow);
    for (std::int64_t d = -1; d <= f.table.dmax(); ++d) {
        CHECK(f.table.values().contains(d) == is_square_class(3, d));
    }
    for (const auto p : {2, 3, 5, 13}) {
        for (const std::int64_t dmax : {1, 30, 207, 1000}) {
            const auto w = window_for(p, dmax);
            CHECK(table_bound(p, w) >= dmax);
            if (w > (p + 3) / 4 + 2) CHECK(table_bound(p, w - 1) < dmax);
        }
    }
}

TEST_CASE("constructed forms satisfy the Jacobi invariants") {
    const std::array<std::int64_t, 4> lambdas{-2, -1, 1, 2};
    for (const auto p : {2, 3, 5, 7, 11, 13}) {
        const auto& f = phi(p);
        CAPTURE(p);
        CHECK_FALSE(check_symmetry(f.expansion));
        CHECK_FALSE(check_elliptic_shift(f.expansion, lambdas));
        CHECK_FALSE(check_discriminant_dependence(f.expansion));
        CHECK_FALSE(check_support_bound(f.expansion));
        CHECK(f.audit.negative_conditions + 1 == singular_classes(p).size());
        CHECK(f.table.at(-1) == 1);
        CHECK(f.table.at(0) == -2);
    }
}

TEST_CASE("random in-window pairs obey the discriminant law") {
    std::mt19937_64 rng(20261017);
    for (const auto p : {5, 7, 13}) {
        const auto& f = phi(p);
        const auto trunc = f.expansion.qtrunc();
        std::uniform_int_distribution<std::int64_t> pick_n(0, trunc - 1);
        for (int trial = 0; trial < 200; ++trial) {
            const auto n = pick_n(rng);
            const auto bound = static_cast<std::int64_t>(std::sqrt(4.0 * p * n + p * p)) + 2;
            const auto r = std::uniform_int_distribution<std::int64_t>(-bound, bound)(rng);
            const auto d = 4 * p * n - r * r;
            const Rational c = f.expansion.coefficient(n, r);
            if (d < -1) {
                CHECK(c == 0);
            } else if (d <= f.table.dmax()) {
                CHECK(c == Rational(f.table.at(d)));
            } else {
                CHECK(c == Rational(extract_B(f, d)));
            }
        }
    }
}

TEST_CASE("construction preconditions") {
    CHECK(kind_of([] { construct_phi_p(4, 10); }) == ErrorKind::UnsupportedLevel);
    CHECK(kind_of([] { construct_phi_p(13, 5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("parallel construction is identical") {
    const auto serial = construct_phi_p(11, 10, 1);
    const auto threaded = construct_phi_p(11, 10, 4);
    CHECK(serial.expansion.series == threaded.expansion.series);
    CHECK(phi_to_json(serial) == phi_to_json(threaded));
}

TEST_CASE("expansion cache round trip and revalidation") {
    const auto dir = scratch_dir("cache");
    const auto& f = phi(5);
    save_phi(f, phi_cache_path(dir, 5));
    const auto back = load_phi(phi_cache_path(dir, 5));
    CHECK(back.expansion.series == f.expansion.series);
    CHECK(back.table.values() == f.table.values());
    CHECK(back.audit.unknowns == f.audit.unknowns);

    // Flip one stored coefficient: revalidation must reject the file.
    auto text = phi_to_json(f);
    const auto pos = text.find("\"-12\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "\"-13\"");
    CHECK(kind_of([&] { phi_from_json(text); }) == ErrorKind::CacheInvalid);
    CHECK(kind_of([] { phi_from_json("{\"version\": 7}"); }) == ErrorKind::CacheInvalid);
    CHECK(kind_of([] { phi_from_json("not json"); }) == ErrorKind::CacheInvalid);

    // obtain_phi prefers a valid cache and rebuilds over a corrupt one.
    const auto loaded = obtain_phi(5, 8, dir, 1);
    CHECK(loaded.expansion.qtrunc() == f.expansion.qtrunc());
    {
        std::ofstream out(phi_cache_path(dir, 5));
        out << text;
    }
    const auto rebuilt = obtain_phi(5, 11, dir, 1);
    CHECK(rebuilt.expansion.qtrunc() == 11);
    CHECK(load_phi(phi_cache_path(dir, 5)).expansion.qtrunc() == 11);
    std::filesystem::remove_all(dir);
}
