#include "singmod/phi.hpp"

#include "int_kernel.hpp"
#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/parallel.hpp"
#include "singmod/qlinalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace singmod {

using detail::ceil_div;

bool is_genus_zero_prime(std::int64_t p) noexcept {
    return std::find(kGenusZeroPrimes.begin(), kGenusZeroPrimes.end(), p) != kGenusZeroPrimes.end();
}

bool is_square_class(std::int64_t p, std::int64_t d) noexcept {
    const std::int64_t m = 4 * p;
    const std::int64_t target = mod_floor(-d, m);
    for (std::int64_t r = 0; r <= p; ++r) {
        if (r * r % m == target) return true;
    }
    return false;
}

std::vector<std::pair<std::int64_t, std::int64_t>> singular_classes(std::int64_t p) {
    if (!is_genus_zero_prime(p)) raise(ErrorKind::UnsupportedLevel, "p = " + std::to_string(p) + " is not in the genus-zero set");
    std::vector<std::pair<std::int64_t, std::int64_t>> out{{0, 0}};
    for (std::int64_t r = 1; r <= p; ++r) {
        for (std::int64_t n = 0; 4 * p * n - r * r < 0; ++n) out.emplace_back(n, r);
    }
    return out;
}

Integer CoefficientTable::at(std::int64_t d) const {
    if (d < -1) return 0;
    if (!is_square_class(p_, d)) {
        raise(ErrorKind::UnsupportedDiscriminant,
              "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p_));
    }
    if (d > dmax_) {
        raise(ErrorKind::OutOfWindow, "B(" + std::to_string(d) + ") needs a wider window (table valid to " +
                                          std::to_string(dmax_) + ")");
    }
    const auto it = values_.find(d);
    return it == values_.end() ? Integer(0) : it->second;
}

std::int64_t table_bound(std::int64_t p, std::int64_t qtrunc) noexcept { return 4 * p * qtrunc - p * p - 1; }

std::int64_t window_for(std::int64_t p, std::int64_t dmax) noexcept {
    return std::max(ceil_div(dmax + p * p + 1, 4 * p), ceil_div(p, 4) + 2);
}

std::int64_t auto_window(std::int64_t p, std::int64_t dmax) noexcept {
    return std::max(ceil_div(dmax + p * p, 4 * p) + 4, window_for(p, dmax));
}

Integer extract_B(const JacobiExpansion& phi, std::int64_t p, std::int64_t d) {
    if (!is_square_class(p, d)) {
        raise(ErrorKind::UnsupportedDiscriminant,
              "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p));
    }
    const std::int64_t trunc = phi.qtrunc();
    std::optional<Rational> value;
    std::int64_t first_n = 0;
    std::int64_t first_r = 0;
    for (std::int64_t r = 0;; ++r) {
        const std::int64_t num = d + r * r;
        if (num >= 4 * p * trunc) break;
        if (num < 0 || num % (4 * p) != 0) continue;
        const Rational c = phi.coefficient(num / (4 * p), r);
        if (!value) {
            value = c;
            first_n = num / (4 * p);
            first_r = r;
        } else if (*value != c) {
            raise(ErrorKind::InconsistentRepresentations,
                  "B(" + std::to_string(d) + ") differs between (" + std::to_string(first_n) + ", " +
                      std::to_string(first_r) + ") and (" + std::to_string(num / (4 * p)) + ", " +
                      std::to_string(r) + ")");
        }
    }
    if (!value) raise(ErrorKind::OutOfWindow, "no representation of " + std::to_string(d) + " inside the window");
    if (!is_integral(*value)) raise(ErrorKind::NonIntegralResult, "B(" + std::to_string(d) + ") is not an integer");
    return value->get_num();
}

Integer trace_star(const PhiP& phi, std::int64_t d) {
    if (d < -1) return 0;
    return -extract_B(phi, d);
}

namespace {

// Delta^j E4^alpha E6^beta with alpha <= 2: one monomial per j, and the
// valuations j make the family a basis of M_k.
struct Monomial {
    std::int64_t j;
    std::int64_t alpha;
    std::int64_t beta;
};

std::vector<Monomial> modular_basis(std::int64_t k) {
    std::vector<Monomial> out;
    for (std::int64_t j = 0; 12 * j <= k; ++j) {
        const std::int64_t w = k - 12 * j;
        if (w == 2) continue;
        for (std::int64_t alpha = 0; alpha <= 2; ++alpha) {
            const std::int64_t rest = w - 4 * alpha;
            if (rest >= 0 && rest % 6 == 0) {
                out.push_back({j, alpha, rest / 6});
                break;
            }
        }
    }
    return out;
}

class FormCache {
  public:
    explicit FormCache(std::int64_t qmax)
        : qmax_(qmax), e4_(eisenstein_e4(qmax)), e6_(eisenstein_e6(qmax)), delta_(delta(qmax)) {}

    FourierSeries monomial(const Monomial& m) {
        return mul(mul(power(delta_, delta_pow_, m.j), power(e4_, e4_pow_, m.alpha)),
                   power(e6_, e6_pow_, m.beta));
    }

  private:
    const FourierSeries& power(const FourierSeries& base, std::vector<FourierSeries>& memo, std::int64_t e) {
        if (memo.empty()) memo.push_back(FourierSeries::one(qmax_));
        while (static_cast<std::int64_t>(memo.size()) <= e) memo.push_back(mul(memo.back(), base));
        return memo[static_cast<std::size_t>(e)];
    }

    std::int64_t qmax_;
    FourierSeries e4_, e6_, delta_;
    std::vector<FourierSeries> delta_pow_, e4_pow_, e6_pow_;
};

void require_prime(std::int64_t p) {
    if (!is_genus_zero_prime(p)) {
        raise(ErrorKind::UnsupportedLevel, "p = " + std::to_string(p) + " is not in the genus-zero set");
    }
}

void audit_singular_part(const PhiP& phi) {
    const auto p = phi.p;
    for (const auto& [n, r] : singular_classes(p)) {
        const Rational c = phi.expansion.coefficient(n, r);
        const std::int64_t d = 4 * p * n - r * r;
        const Rational want = d == -1 ? 1 : (d == 0 ? -2 : 0);
        if (c != want) {
            raise(ErrorKind::InvariantViolation, "singular coefficient c(" + std::to_string(n) + ", " +
                                                     std::to_string(r) + ") = " + c.get_str() +
                                                     ", expected " + want.get_str());
        }
    }
    // Rows below n = 0 must be empty, and no stored term may have D < -1.
    for (const auto& [n, poly] : phi.expansion.series.terms()) {
        if (n < 0) raise(ErrorKind::InvariantViolation, "pole in q at exponent " + std::to_string(n));
        for (const auto& [r, c] : poly.terms()) {
            if (4 * p * n - r * r < -1) {
                raise(ErrorKind::InvariantViolation, "nonzero coefficient at (" + std::to_string(n) + ", " +
                                                         std::to_string(r) + ") below the singular bound");
            }
        }
    }
}

} // namespace

PhiP phi_from_expansion(std::int64_t p, JacobiExpansion expansion) {
    require_prime(p);
    if (expansion.weight != 2 || expansion.index != p) {
        raise(ErrorKind::InvariantViolation, "expansion is not of weight 2 and index p");
    }
    static constexpr std::array<std::int64_t, 4> lambdas{-2, -1, 1, 2};
    for (const auto& bad : {check_integral(expansion), check_symmetry(expansion),
                            check_elliptic_shift(expansion, lambdas), check_discriminant_dependence(expansion),
                            check_support_bound(expansion)}) {
        if (bad) raise(ErrorKind::InvariantViolation, *bad);
    }
    PhiP phi;
    phi.p = p;
    phi.expansion = std::move(expansion);
    audit_singular_part(phi);
    const std::int64_t dmax = table_bound(p, phi.expansion.qtrunc());
    std::map<std::int64_t, Integer> values;
    for (std::int64_t d = -1; d <= dmax; ++d) {
        if (is_square_class(p, d)) values.emplace_hint(values.end(), d, extract_B(phi.expansion, p, d));
    }
    phi.table = CoefficientTable(p, dmax, std::move(values));
    for (std::int64_t i = 1; i <= p; ++i) phi.audit.unknowns += modular_basis(2 + 2 * i).size();
    for (const auto& [n, r] : singular_classes(p)) {
        if (4 * p * n - r * r < 0) ++phi.audit.negative_conditions;
        phi.audit.solve_window = std::max(phi.audit.solve_window, n);
    }
    return phi;
}

PhiP construct_phi_p(std::int64_t p, std::int64_t qmax, unsigned jobs) {
    require_prime(p);
    const std::int64_t min_window = ceil_div(p, 4) + 2;
    if (qmax < min_window) {
        raise(ErrorKind::InvalidArgument, "qmax must be at least " + std::to_string(min_window) + " for p = " +
                                              std::to_string(p));
    }
    const auto conditions = singular_classes(p);

    // Products P_i = a^i b^(p-i), i = 1..p.
    const JacobiExpansion a = gen_a(qmax);
    const JacobiExpansion b = gen_b(qmax);
    std::vector<JacobiExpansion> apow(static_cast<std::size_t>(p + 1));
    std::vector<JacobiExpansion> bpow(static_cast<std::size_t>(p));
    parallel_for(2, jobs, [&](std::size_t which) {
        if (which == 0) {
            apow[1] = a;
            for (std::int64_t i = 2; i <= p; ++i) apow[static_cast<std::size_t>(i)] = jacobi_mul(apow[static_cast<std::size_t>(i - 1)], a);
        } else {
            bpow[0] = {0, 0, TwoVariableSeries::from_form(FourierSeries::one(qmax))};
            for (std::int64_t j = 1; j < p; ++j) bpow[static_cast<std::size_t>(j)] = jacobi_mul(bpow[static_cast<std::size_t>(j - 1)], b);
        }
    });
    std::vector<JacobiExpansion> products(static_cast<std::size_t>(p + 1));
    parallel_for(static_cast<std::size_t>(p), jobs, [&](std::size_t k) {
        const auto i = static_cast<std::int64_t>(k) + 1;
        products[static_cast<std::size_t>(i)] =
            i == p ? apow[static_cast<std::size_t>(p)]
                   : jacobi_mul(apow[static_cast<std::size_t>(i)], bpow[static_cast<std::size_t>(p - i)]);
    });
    apow.clear();
    bpow.clear();

    // Unknowns: coefficients of each basis monomial of M_{2+2i} against P_i.
    FormCache forms(qmax);
    struct Column {
        std::int64_t i;
        FourierSeries form;
    };
    std::vector<Column> columns;
    for (std::int64_t i = 1; i <= p; ++i) {
        for (const auto& m : modular_basis(2 + 2 * i)) columns.push_back({i, forms.monomial(m)});
    }

    RationalMatrix matrix(conditions.size(), columns.size());
    std::vector<Rational> rhs(conditions.size());
    parallel_for(columns.size(), jobs, [&](std::size_t col) {
        const auto& column = columns[col];
        const auto& prod = products[static_cast<std::size_t>(column.i)];
        for (std::size_t row = 0; row < conditions.size(); ++row) {
            const auto [n, r] = conditions[row];
            Rational sum = 0;
            for (const auto& [e, f] : column.form.terms()) {
                if (e > n) break;
                sum += f * prod.coefficient(n - e, r);
            }
            matrix(row, col) = sum;
        }
    });
    for (std::size_t row = 0; row < conditions.size(); ++row) {
        const auto [n, r] = conditions[row];
        const std::int64_t d = 4 * p * n - r * r;
        rhs[row] = d == -1 ? 1 : (d == 0 ? -2 : 0);
    }

    AffineSolution solution;
    try {
        solution = solve_affine(matrix, rhs);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Inconsistent) {
            raise(ErrorKind::NoSolution, "no weak Jacobi form of weight 2 and index " + std::to_string(p) +
                                             " has the required singular part");
        }
        throw;
    }
    if (!solution.kernel_basis.empty()) {
        raise(ErrorKind::NonTrivialKernel, "singular part leaves " + std::to_string(solution.kernel_basis.size()) +
                                               " degrees of freedom at index " + std::to_string(p));
    }

    // Re-expand at the full window.
    std::vector<FourierSeries> multipliers(static_cast<std::size_t>(p + 1), FourierSeries::zero(qmax));
    for (std::size_t col = 0; col < columns.size(); ++col) {
        const auto& x = solution.particular[col];
        if (sgn(x) == 0) continue;
        auto& m = multipliers[static_cast<std::size_t>(columns[col].i)];
        m = add(m, scale(columns[col].form, x));
    }
    std::vector<TwoVariableSeries> parts(static_cast<std::size_t>(p + 1));
    parallel_for(static_cast<std::size_t>(p), jobs, [&](std::size_t k) {
        const auto i = k + 1;
        parts[i] = mul(products[i].series, multipliers[i]);
    });
    TwoVariableSeries total = parts[1];
    for (std::int64_t i = 2; i <= p; ++i) total = add(total, parts[static_cast<std::size_t>(i)]);

    return phi_from_expansion(p, {2, p, std::move(total)});
}

std::string phi_to_json(const PhiP& phi) {
    nlohmann::ordered_json doc;
    doc["version"] = kPhiCacheVersion;
    doc["p"] = phi.p;
    doc["weight"] = phi.expansion.weight;
    doc["index"] = phi.expansion.index;
    doc["qmax"] = phi.expansion.qtrunc();
    doc["generator"] = kPhiGenerator;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [n, poly] : phi.expansion.series.terms()) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& [r, c] : poly.terms()) row.push_back({r, to_decimal(c.get_num())});
        terms.push_back({n, std::move(row)});
    }
    doc["terms"] = std::move(terms);
    return doc.dump();
}

PhiP phi_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        if (doc.at("version").get<int>() != kPhiCacheVersion) raise(ErrorKind::CacheInvalid, "unsupported cache version");
        if (doc.at("generator").get<std::string>() != kPhiGenerator) raise(ErrorKind::CacheInvalid, "unknown generator id");
        const auto p = doc.at("p").get<std::int64_t>();
        const auto qmax = doc.at("qmax").get<std::int64_t>();
        JacobiExpansion e;
        e.weight = doc.at("weight").get<std::int64_t>();
        e.index = doc.at("index").get<std::int64_t>();
        TwoVariableSeries::Terms terms;
        for (const auto& row : doc.at("terms")) {
            ZetaPolynomial::Terms poly;
            for (const auto& entry : row.at(1)) {
                poly[entry.at(0).get<std::int64_t>()] = Rational(parse_integer(entry.at(1).get<std::string>()));
            }
            terms[row.at(0).get<std::int64_t>()] = ZetaPolynomial(std::move(poly));
        }
        e.series = TwoVariableSeries(1, 1, qmax, std::move(terms));
        if (e.qtrunc() != qmax) raise(ErrorKind::CacheInvalid, "window mismatch");
        return phi_from_expansion(p, std::move(e));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::CacheInvalid) throw;
        raise(ErrorKind::CacheInvalid, std::string("cache rejected: ") + e.what());
    } catch (const std::exception& e) {
        raise(ErrorKind::CacheInvalid, std::string("malformed cache: ") + e.what());
    }
}

void save_phi(const PhiP& phi, const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << phi_to_json(phi) << '\n';
        if (!out) raise(ErrorKind::InvalidArgument, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

PhiP load_phi(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) raise(ErrorKind::CacheInvalid, "cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return phi_from_json(buf.str());
}

std::filesystem::path phi_cache_path(const std::filesystem::path& dir, std::int64_t p) {
    return dir / ("phi_" + std::to_string(p) + ".json");
}

PhiP obtain_phi(std::int64_t p, std::int64_t qmax, const std::filesystem::path& dir, unsigned jobs) {
    require_prime(p);
    if (!dir.empty()) {
        const auto file = phi_cache_path(dir, p);
        if (std::filesystem::exists(file)) {
            try {
                PhiP cached = load_phi(file);
                if (cached.p == p && cached.expansion.qtrunc() >= qmax) return cached;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::CacheInvalid) throw;
            }
        }
    }
    PhiP phi = construct_phi_p(p, qmax, jobs);
    if (!dir.empty()) save_phi(phi, phi_cache_path(dir, p));
    return phi;
}

} // namespace singmod
