#pragma once

// The weight 2, index p weak Jacobi forms phi_p whose coefficients
// c(n, r) = B(4pn - r^2) encode the level-p traces t^(p)(d) = -B(d).

#include "singmod/jacobi.hpp"
#include "singmod/rational.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace singmod {

/// The fifteen primes p for which Gamma_0(p)* has genus zero.
inline constexpr std::array<std::int64_t, 15> kGenusZeroPrimes{2,  3,  5,  7,  11, 13, 17, 19,
                                                               23, 29, 31, 41, 47, 59, 71};

bool is_genus_zero_prime(std::int64_t p) noexcept;

/// True when -d is a square modulo 4p.
bool is_square_class(std::int64_t p, std::int64_t d) noexcept;

/// (0, 0) followed by every (n, r) with n >= 0, 1 <= r <= p and 4pn - r^2 < 0,
/// ordered by r then n.
std::vector<std::pair<std::int64_t, std::int64_t>> singular_classes(std::int64_t p);

/// B(d) for -1 <= d <= dmax with -d a square mod 4p.
class CoefficientTable {
  public:
    CoefficientTable() = default;
    CoefficientTable(std::int64_t p, std::int64_t dmax, std::map<std::int64_t, Integer> values)
        : p_(p), dmax_(dmax), values_(std::move(values)) {}

    std::int64_t p() const noexcept { return p_; }
    std::int64_t dmax() const noexcept { return dmax_; }
    const std::map<std::int64_t, Integer>& values() const noexcept { return values_; }

    /// B(d); zero for d < -1 and for absent keys. Throws UnsupportedDiscriminant or OutOfWindow.
    Integer at(std::int64_t d) const;

  private:
    std::int64_t p_ = 0;
    std::int64_t dmax_ = -2;
    std::map<std::int64_t, Integer> values_;
};

struct PhiAudit {
    std::size_t unknowns = 0;
    /// Conditions with 4pn - r^2 < 0.
    std::size_t negative_conditions = 0;
    /// Largest n among the imposed conditions.
    std::int64_t solve_window = 0;
};

struct PhiP {
    std::int64_t p = 0;
    JacobiExpansion expansion;
    CoefficientTable table;
    PhiAudit audit;
};

/// Solves for phi_p in sum_{i=1}^{p} M_{2+2i} a^i b^(p-i) and expands it for
/// q-exponents below qmax. Throws NoSolution or NonTrivialKernel if the
/// singular-part conditions do not pin down a unique form.
PhiP construct_phi_p(std::int64_t p, std::int64_t qmax, unsigned jobs = 1);

/// Validates an expansion of phi_p (integrality, symmetry, elliptic shift,
/// discriminant dependence, singular part) and derives its table.
/// Throws InvariantViolation.
PhiP phi_from_expansion(std::int64_t p, JacobiExpansion expansion);

/// Largest d such that every valid d' <= d has a representation in the window.
std::int64_t table_bound(std::int64_t p, std::int64_t qtrunc) noexcept;

/// c(n, r) over all in-window (n, r) with 4pn - r^2 = d, cross-checked.
Integer extract_B(const JacobiExpansion& phi, std::int64_t p, std::int64_t d);
inline Integer extract_B(const PhiP& phi, std::int64_t d) { return extract_B(phi.expansion, phi.p, d); }

/// t^(p)(d) = -B(d); zero for d < -1.
Integer trace_star(const PhiP& phi, std::int64_t d);

/// Smallest exclusive q-window that makes B(d) extractable for all valid d <= dmax.
std::int64_t window_for(std::int64_t p, std::int64_t dmax) noexcept;

/// Default window for requests up to dmax: ceil((dmax + p^2) / 4p) + 4, never below window_for.
std::int64_t auto_window(std::int64_t p, std::int64_t dmax) noexcept;

// Versioned JSON cache of the expansion.
inline constexpr const char* kPhiGenerator = "weak-jacobi-ab/v1";
inline constexpr int kPhiCacheVersion = 1;

std::string phi_to_json(const PhiP& phi);
/// Parses and revalidates; throws CacheInvalid.
PhiP phi_from_json(const std::string& text);

void save_phi(const PhiP& phi, const std::filesystem::path& file);
PhiP load_phi(const std::filesystem::path& file);

/// Conventional cache file name inside a cache directory.
std::filesystem::path phi_cache_path(const std::filesystem::path& dir, std::int64_t p);

/// Loads phi_p from dir if a valid cache with window >= qmax exists, otherwise
/// constructs it and (when dir is non-empty) writes the cache.
PhiP obtain_phi(std::int64_t p, std::int64_t qmax, const std::filesystem::path& dir, unsigned jobs);

} // namespace singmod
