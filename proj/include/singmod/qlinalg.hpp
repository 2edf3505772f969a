#pragma once

// Exact linear algebra over Q.

#include "singmod/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace singmod {

class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> multiply(std::span<const Rational> x) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct AffineSolution {
    std::vector<Rational> particular;
    /// Basis of {x : A x = 0}; empty exactly when the solution is unique.
    std::vector<std::vector<Rational>> kernel_basis;
};

enum class SolveStrategy {
    /// Fraction-preserving elimination for small systems, multimodular above.
    Automatic,
    /// Gauss-Jordan over Q, pivoting on the entry of smallest bit length.
    Fraction,
    /// Solutions mod word-size primes, CRT and rational reconstruction, then
    /// exact verification. Falls back to Fraction when the system is rank
    /// deficient or inconsistent.
    Multimodular,
};

/// Solves A x = rhs exactly. Throws Error(Inconsistent) when no solution exists.
AffineSolution solve_affine(const RationalMatrix& a, std::span<const Rational> rhs,
                            SolveStrategy strategy = SolveStrategy::Automatic);

namespace detail {

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n) noexcept;

/// Rational reconstruction of u mod m with |num|, den <= sqrt(m/2).
bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out);

} // namespace detail

} // namespace singmod
