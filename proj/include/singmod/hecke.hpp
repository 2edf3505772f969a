#pragma once

// Hecke operators T(l^2) on coefficient tables of weight k + 1/2 plus-space
// forms, and the congruence sweeps t(l^2 d) = 0 mod l for split l.

#include "singmod/classical.hpp"
#include "singmod/phi.hpp"
#include "singmod/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singmod {

/// Kronecker symbol (a | n).
int kronecker(const Integer& a, const Integer& n);
inline int kronecker(std::int64_t a, std::int64_t n) { return kronecker(Integer(a), Integer(n)); }

bool is_odd_prime(std::int64_t n);

/// (-d | l) = 1.
bool is_split(std::int64_t l, std::int64_t d);

class PlusSpaceTable {
  public:
    PlusSpaceTable() = default;
    /// Coefficients a(n) for n <= bound; keys must satisfy (-1)^k n = 0, 1 mod 4.
    PlusSpaceTable(int k, std::int64_t level, std::int64_t bound, std::map<std::int64_t, Integer> coefficients);

    /// q^-1 + sum B(d) q^d at weight 3/2, level 4p.
    static PlusSpaceTable from_coefficients(const CoefficientTable& table);
    /// -q^-1 + 2 + sum t(d) q^d at weight 3/2, level 4.
    static PlusSpaceTable from_level1(const TraceTableLevel1& table);

    int k() const noexcept { return k_; }
    std::int64_t level() const noexcept { return level_; }
    std::int64_t bound() const noexcept { return bound_; }
    const std::map<std::int64_t, Integer>& coefficients() const noexcept { return coefficients_; }

    bool on_support(std::int64_t n) const noexcept;
    /// a(n); zero off the support or below the principal part; OutOfWindow past bound.
    Integer at(std::int64_t n) const;

  private:
    int k_ = 1;
    std::int64_t level_ = 4;
    std::int64_t bound_ = 0;
    std::map<std::int64_t, Integer> coefficients_;
};

/// Image under T(l^2): a(l^2 n) + ((-1)^k n | l) l^(k-1) a(n) + l^(2k-1) a(n / l^2).
PlusSpaceTable hecke(const PlusSpaceTable& t, std::int64_t l);

/// B(l^2 d) + (-d | l) B(d) + l B(d / l^2).
Integer b_ell(const CoefficientTable& table, std::int64_t l, std::int64_t d);

enum class Verdict { Pass, Skip, Fail };
std::string to_string(Verdict v);

struct ReportEntry {
    std::int64_t d = 0;
    bool split = false;
    Integer trace;
    std::int64_t residue = 0;
    Verdict verdict = Verdict::Skip;
    /// p^2 | d: outside the lift bijection, kept and asserted like any other d.
    bool flagged = false;

    friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct CongruenceReport {
    /// Empty for level one.
    std::optional<std::int64_t> p;
    std::int64_t l = 0;
    std::int64_t dmax = 0;
    std::vector<ReportEntry> entries;

    std::size_t count(Verdict v) const;
    std::size_t fails() const { return count(Verdict::Fail); }

    friend bool operator==(const CongruenceReport&, const CongruenceReport&) = default;
};

/// Checks t(l^2 d) = 0 mod l for every split d <= dmax.
CongruenceReport verify_level1(std::int64_t l, std::int64_t dmax, const TraceTableLevel1& g, unsigned jobs = 1);

/// Checks t^(p)(l^2 d) = 0 mod l for every valid split d <= dmax.
/// Throws InvalidArgument unless l is an odd prime different from p.
CongruenceReport verify_star(std::int64_t p, std::int64_t l, std::int64_t dmax, const PhiP& phi,
                             unsigned jobs = 1);

std::string report_to_json(const CongruenceReport& r);
CongruenceReport report_from_json(const std::string& text);
std::string report_to_csv(const CongruenceReport& r);

} // namespace singmod
