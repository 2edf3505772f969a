#pragma once

// Exact q-expansions of the level-one objects: eta quotients, theta,
// Eisenstein series, the discriminant, j, and the weight 3/2 generating
// function g(z) whose coefficients are the level-one traces t(d).

#include "singmod/rational.hpp"
#include "singmod/series.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace singmod {

/// prod eta(m z)^e over the listed (m, e) factors.
struct EtaQuotientSpec {
    std::vector<std::pair<std::int64_t, std::int64_t>> factors;

    /// Exponent of the q-power prefactor, sum of m*e/24.
    Rational prefactor() const;
};

/// prod_{n>=1} (1 - q^n) + O(q^qmax), from Euler's pentagonal expansion.
FourierSeries euler_product(std::int64_t qmax);

/// Expansion of the eta quotient known for all exponents below qmax.
FourierSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t qmax);

/// 1 + 2 sum_{n>=1} (-1)^n q^(n^2).
FourierSeries theta_series(std::int64_t qmax);

/// sigma_k(n) by divisor enumeration.
Integer divisor_sigma(unsigned k, std::int64_t n);

FourierSeries eisenstein_e4(std::int64_t qmax);
FourierSeries eisenstein_e6(std::int64_t qmax);

/// (E4^3 - E6^2) / 1728.
FourierSeries delta(std::int64_t qmax);
FourierSeries delta_inv(std::int64_t qmax);

/// E4^3 / Delta.
FourierSeries j_series(std::int64_t qmax);

/// g(z) = -theta_1(z) E4(4z) / eta(4z)^6 = -q^-1 + 2 + sum t(d) q^d.
FourierSeries zagier_g(std::int64_t qmax);

/// Level-one traces t(d) read off g(z), for 0 < d < bound with d = 0,3 mod 4.
class TraceTableLevel1 {
  public:
    TraceTableLevel1() = default;

    /// Extracts and audits the table from an expansion of g: the principal
    /// part must be -q^-1 + 2, every coefficient must be an integer, and the
    /// coefficients at exponents = 1,2 mod 4 must vanish.
    static TraceTableLevel1 from_series(const FourierSeries& g);

    static TraceTableLevel1 build(std::int64_t qmax) { return from_series(zagier_g(qmax)); }

    /// Valid for d < bound().
    std::int64_t bound() const noexcept { return bound_; }
    const std::map<std::int64_t, Integer>& values() const noexcept { return values_; }

  private:
    std::int64_t bound_ = 0;
    std::map<std::int64_t, Integer> values_;
};

/// True when d > 0 and d = 0 or 3 mod 4.
bool is_level1_discriminant(std::int64_t d) noexcept;

/// t(d) from the table.
Integer trace_level1(std::int64_t d, const TraceTableLevel1& table);

} // namespace singmod
