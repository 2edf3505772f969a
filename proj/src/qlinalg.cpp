#include "singmod/qlinalg.hpp"

#include "singmod/error.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace singmod {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Rational> RationalMatrix::multiply(std::span<const Rational> x) const {
    if (x.size() != cols_) raise(ErrorKind::InvalidArgument, "dimension mismatch in matrix product");
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) acc += (*this)(i, j) * x[j];
        }
        y[i] = std::move(acc);
    }
    return y;
}

namespace {

std::size_t bit_size(const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

AffineSolution solve_fraction(const RationalMatrix& a, std::span<const Rational> rhs) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    RationalMatrix aug(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = rhs[i];
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::optional<std::size_t> best;
        for (std::size_t i = rank; i < m; ++i) {
            if (sgn(aug(i, c)) == 0) continue;
            if (!best || bit_size(aug(i, c)) < bit_size(aug(*best, c))) best = i;
        }
        if (!best) continue;
        if (*best != rank) {
            for (std::size_t j = 0; j <= n; ++j) std::swap(aug(rank, j), aug(*best, j));
        }
        const Rational pivot_inv = 1 / aug(rank, c);
        for (std::size_t j = c; j <= n; ++j) {
            if (sgn(aug(rank, j)) != 0) aug(rank, j) *= pivot_inv;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || sgn(aug(i, c)) == 0) continue;
            const Rational f = aug(i, c);
            for (std::size_t j = c; j <= n; ++j) {
                if (sgn(aug(rank, j)) != 0) aug(i, j) -= f * aug(rank, j);
            }
        }
        pivot_cols.push_back(c);
        ++rank;
    }
    for (std::size_t i = rank; i < m; ++i) {
        if (sgn(aug(i, n)) != 0) {
            raise(ErrorKind::Inconsistent, "linear system has no solution (row " + std::to_string(i) + ")");
        }
    }
    AffineSolution sol;
    sol.particular.assign(n, Rational(0));
    for (std::size_t k = 0; k < rank; ++k) sol.particular[pivot_cols[k]] = aug(k, n);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < rank; ++k) v[pivot_cols[k]] = -aug(k, f);
        sol.kernel_basis.push_back(std::move(v));
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Multimodular path.

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Shoup multiplication by a fixed operand w: precomputed floor(w 2^64 / p).
struct ShoupFactor {
    u64 w;
    u64 wp;
    ShoupFactor(u64 w_, u64 p) : w(w_), wp(static_cast<u64>((static_cast<u128>(w_) << 64) / p)) {}
    u64 mul(u64 y, u64 p) const {
        const u64 q = static_cast<u64>((static_cast<u128>(wp) * y) >> 64);
        u64 r = w * y - q * p;
        return r >= p ? r - p : r;
    }
};

struct ModularResult {
    bool full_rank = false;
    bool consistent = true;
    std::vector<u64> x;
};

// RREF of the augmented matrix modulo p.
ModularResult solve_mod(std::vector<u64> aug, std::size_t m, std::size_t n, u64 p) {
    const std::size_t w = n + 1;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t piv = m;
        for (std::size_t i = rank; i < m; ++i) {
            if (aug[i * w + c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == m) continue;
        if (piv != rank) {
            std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(piv * w),
                             aug.begin() + static_cast<std::ptrdiff_t>(piv * w + w),
                             aug.begin() + static_cast<std::ptrdiff_t>(rank * w));
        }
        u64* prow = aug.data() + rank * w;
        const ShoupFactor scale(invmod(prow[c], p), p);
        for (std::size_t j = c; j < w; ++j) prow[j] = scale.mul(prow[j], p);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank) continue;
            u64* row = aug.data() + i * w;
            const u64 f = row[c];
            if (f == 0) continue;
            const ShoupFactor neg(p - f, p);
            for (std::size_t j = c; j < w; ++j) {
                if (prow[j] == 0) continue;
                u64 v = row[j] + neg.mul(prow[j], p);
                row[j] = v >= p ? v - p : v;
            }
        }
        pivot_cols.push_back(c);
        ++rank;
    }
    ModularResult res;
    res.full_rank = rank == n;
    for (std::size_t i = rank; i < m; ++i) {
        if (aug[i * w + n] != 0) res.consistent = false;
    }
    if (res.full_rank && res.consistent) {
        res.x.assign(n, 0);
        for (std::size_t k = 0; k < rank; ++k) res.x[pivot_cols[k]] = aug[k * w + n];
    }
    return res;
}

std::optional<AffineSolution> solve_multimodular(const RationalMatrix& a, std::span<const Rational> rhs) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t w = n + 1;
    // Integer rows: scale each equation by the lcm of its denominators.
    std::vector<Integer> rows(m * w);
    for (std::size_t i = 0; i < m; ++i) {
        Integer den = rhs[i].get_den();
        for (std::size_t j = 0; j < n; ++j) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a(i, j).get_den_mpz_t());
        }
        for (std::size_t j = 0; j <= n; ++j) {
            const Rational& v = j < n ? a(i, j) : rhs[i];
            Integer z = v.get_num() * den;
            mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), v.get_den_mpz_t());
            rows[i * w + j] = std::move(z);
        }
    }

    std::vector<Integer> residues(n, Integer(0));
    Integer modulus = 1;
    std::size_t good = 0;
    std::size_t bad = 0;
    std::size_t next_attempt = 1;
    std::vector<u64> reduced(m * w);
    u64 p = (u64{1} << 62);
    while (true) {
        do {
            --p;
        } while (!detail::is_prime_u64(p));
        for (std::size_t k = 0; k < m * w; ++k) {
            reduced[k] = mpz_fdiv_ui(rows[k].get_mpz_t(), p);
        }
        ModularResult res = solve_mod(reduced, m, n, p);
        if (!res.full_rank || !res.consistent) {
            // Either a genuine kernel / inconsistency or an unlucky prime.
            if (++bad >= 3 && good == 0) return std::nullopt;
            if (bad > 64) return std::nullopt;
            continue;
        }
        // CRT update x <- x + M * ((r - x) M^-1 mod p).
        const u64 minv = invmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
        for (std::size_t j = 0; j < n; ++j) {
            const u64 cur = mpz_fdiv_ui(residues[j].get_mpz_t(), p);
            const u64 diff = res.x[j] >= cur ? res.x[j] - cur : res.x[j] + p - cur;
            const u64 t = mulmod(diff, minv, p);
            Integer step = modulus;
            step *= static_cast<unsigned long>(t);
            residues[j] += step;
        }
        modulus *= static_cast<unsigned long>(p);
        ++good;
        if (good < next_attempt) continue;
        next_attempt = good + std::max<std::size_t>(1, good / 2);

        // Reconstruct with a running common denominator.
        std::vector<Rational> x(n);
        Integer running = 1;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            Integer u = residues[j] * running;
            mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
            Rational r;
            ok = detail::rational_reconstruct(u, modulus, r);
            if (!ok) break;
            x[j] = r / running;
            running *= r.get_den();
        }
        if (!ok) continue;

        // Exact verification certifies the candidate.
        Integer den = 1;
        for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
        std::vector<Integer> y(n);
        for (std::size_t j = 0; j < n; ++j) {
            y[j] = x[j].get_num() * den;
            mpz_divexact(y[j].get_mpz_t(), y[j].get_mpz_t(), x[j].get_den_mpz_t());
        }
        bool verified = true;
        Integer acc;
        for (std::size_t i = 0; i < m && verified; ++i) {
            acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                mpz_addmul(acc.get_mpz_t(), rows[i * w + j].get_mpz_t(), y[j].get_mpz_t());
            }
            verified = acc == rows[i * w + n] * den;
        }
        if (verified) {
            // Full column rank modulo a prime implies full rank over Q.
            return AffineSolution{std::move(x), {}};
        }
    }
}

} // namespace

AffineSolution solve_affine(const RationalMatrix& a, std::span<const Rational> rhs, SolveStrategy strategy) {
    if (rhs.size() != a.rows()) raise(ErrorKind::InvalidArgument, "rhs length does not match matrix rows");
    if (a.cols() == 0) {
        for (const auto& r : rhs) {
            if (sgn(r) != 0) raise(ErrorKind::Inconsistent, "nonzero rhs with no unknowns");
        }
        return {};
    }
    if (strategy == SolveStrategy::Automatic) {
        strategy = a.cols() > 48 ? SolveStrategy::Multimodular : SolveStrategy::Fraction;
    }
    if (strategy == SolveStrategy::Multimodular) {
        if (auto sol = solve_multimodular(a, rhs)) return std::move(*sol);
    }
    return solve_fraction(a, rhs);
}

namespace detail {

bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out) {
    // Half-extended Euclid on (m, u) stopping once the remainder drops below the bound.
    Integer bound;
    mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    Integer r0 = m, r1 = u;
    mpz_fdiv_r(r1.get_mpz_t(), r1.get_mpz_t(), m.get_mpz_t());
    Integer t0 = 0, t1 = 1;
    Integer q, tmp;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (sgn(t1) == 0 || abs(t1) > bound) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return false;
    out = make_rational(r1, t1);
    return true;
}

} // namespace detail

} // namespace singmod
