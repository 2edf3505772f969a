#include "singmod/hecke.hpp"

#include "int_kernel.hpp"
#include "singmod/error.hpp"
#include "singmod/parallel.hpp"
#include "singmod/quadratic.hpp"

#include <json.hpp>

#include <sstream>

namespace singmod {

int kronecker(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

bool is_odd_prime(std::int64_t n) {
    if (n < 3 || n % 2 == 0) return false;
    return mpz_probab_prime_p(Integer(n).get_mpz_t(), 30) != 0;
}

bool is_split(std::int64_t l, std::int64_t d) { return kronecker(-d, l) == 1; }

PlusSpaceTable::PlusSpaceTable(int k, std::int64_t level, std::int64_t bound,
                               std::map<std::int64_t, Integer> coefficients)
    : k_(k), level_(level), bound_(bound), coefficients_(std::move(coefficients)) {
    if (k_ < 1) raise(ErrorKind::InvalidArgument, "plus-space tables need k >= 1");
    if (level_ <= 0 || level_ % 4 != 0) raise(ErrorKind::InvalidArgument, "level must be a positive multiple of 4");
    std::erase_if(coefficients_, [](const auto& kv) { return sgn(kv.second) == 0; });
    for (const auto& [n, a] : coefficients_) {
        if (!on_support(n)) raise(ErrorKind::InvariantViolation, "coefficient off the plus-space support at " + std::to_string(n));
        if (n > bound_) raise(ErrorKind::InvalidArgument, "coefficient stored past the table bound");
    }
}

PlusSpaceTable PlusSpaceTable::from_coefficients(const CoefficientTable& table) {
    return PlusSpaceTable(1, 4 * table.p(), table.dmax(), table.values());
}

PlusSpaceTable PlusSpaceTable::from_level1(const TraceTableLevel1& table) {
    auto coefficients = table.values();
    coefficients[-1] = -1;
    coefficients[0] = 2;
    return PlusSpaceTable(1, 4, table.bound() - 1, std::move(coefficients));
}

bool PlusSpaceTable::on_support(std::int64_t n) const noexcept {
    const std::int64_t m = mod_floor(k_ % 2 == 0 ? n : -n, 4);
    return m == 0 || m == 1;
}

Integer PlusSpaceTable::at(std::int64_t n) const {
    if (n > bound_) {
        raise(ErrorKind::OutOfWindow, "a(" + std::to_string(n) + ") requested past the table bound " + std::to_string(bound_));
    }
    const auto it = coefficients_.find(n);
    return it == coefficients_.end() ? Integer(0) : it->second;
}

PlusSpaceTable hecke(const PlusSpaceTable& t, std::int64_t l) {
    if (!is_odd_prime(l)) raise(ErrorKind::InvalidArgument, "l must be an odd prime");
    if ((t.level() / 4) % l == 0) raise(ErrorKind::InvalidArgument, "l divides the level");
    const std::int64_t l2 = l * l;
    const std::int64_t bound = detail::floor_div(t.bound(), l2);
    const std::int64_t lowest = t.coefficients().empty() ? 0 : std::min<std::int64_t>(0, t.coefficients().begin()->first);
    Integer lk1;
    Integer l2k1;
    mpz_ui_pow_ui(lk1.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(t.k() - 1));
    mpz_ui_pow_ui(l2k1.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(2 * t.k() - 1));
    const int sign = t.k() % 2 == 0 ? 1 : -1;
    std::map<std::int64_t, Integer> out;
    for (std::int64_t n = l2 * lowest; n <= bound; ++n) {
        if (!t.on_support(n)) continue;
        Integer v = t.at(l2 * n);
        v += kronecker(sign * n, l) * lk1 * t.at(n);
        if (n % l2 == 0) v += l2k1 * t.at(n / l2);
        if (sgn(v) != 0) out.emplace_hint(out.end(), n, std::move(v));
    }
    return PlusSpaceTable(t.k(), t.level(), bound, std::move(out));
}

Integer b_ell(const CoefficientTable& table, std::int64_t l, std::int64_t d) {
    const std::int64_t l2 = l * l;
    Integer v = table.at(l2 * d) + kronecker(-d, l) * table.at(d);
    if (d % l2 == 0) v += l * table.at(d / l2);
    return v;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "PASS";
    case Verdict::Skip:
        return "SKIP";
    case Verdict::Fail:
        return "FAIL";
    }
    return "?";
}

std::size_t CongruenceReport::count(Verdict v) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.verdict == v ? 1 : 0;
    return n;
}

namespace {

ReportEntry make_entry(std::int64_t d, std::int64_t l, Integer trace) {
    ReportEntry e;
    e.d = d;
    e.split = is_split(l, d);
    e.residue = mod_floor(trace, l);
    e.trace = std::move(trace);
    e.verdict = !e.split ? Verdict::Skip : (e.residue == 0 ? Verdict::Pass : Verdict::Fail);
    return e;
}

void require_sweep_prime(std::int64_t l) {
    if (!is_odd_prime(l)) raise(ErrorKind::InvalidArgument, "l = " + std::to_string(l) + " is not an odd prime");
}

} // namespace

CongruenceReport verify_level1(std::int64_t l, std::int64_t dmax, const TraceTableLevel1& g, unsigned jobs) {
    require_sweep_prime(l);
    if (l * l * dmax >= g.bound()) {
        raise(ErrorKind::OutOfWindow, "trace table must reach l^2 * dmax = " + std::to_string(l * l * dmax));
    }
    CongruenceReport r;
    r.l = l;
    r.dmax = dmax;
    std::vector<std::int64_t> ds;
    for (std::int64_t d = 1; d <= dmax; ++d) {
        if (is_level1_discriminant(d)) ds.push_back(d);
    }
    r.entries.resize(ds.size());
    parallel_for(ds.size(), jobs, [&](std::size_t i) { r.entries[i] = make_entry(ds[i], l, trace_level1(l * l * ds[i], g)); });
    return r;
}

CongruenceReport verify_star(std::int64_t p, std::int64_t l, std::int64_t dmax, const PhiP& phi, unsigned jobs) {
    require_sweep_prime(l);
    if (l == p) raise(ErrorKind::InvalidArgument, "l must differ from p");
    if (phi.p != p) raise(ErrorKind::InvalidArgument, "expansion belongs to a different level");
    CongruenceReport r;
    r.p = p;
    r.l = l;
    r.dmax = dmax;
    const auto ds = valid_discriminants(p, dmax);
    r.entries.resize(ds.size());
    parallel_for(ds.size(), jobs, [&](std::size_t i) {
        r.entries[i] = make_entry(ds[i], l, trace_star(phi, l * l * ds[i]));
        r.entries[i].flagged = ds[i] % (p * p) == 0;
    });
    return r;
}

std::string report_to_json(const CongruenceReport& r) {
    nlohmann::ordered_json doc;
    doc["level"] = r.p ? "p" : "1";
    if (r.p) doc["p"] = *r.p;
    doc["l"] = r.l;
    doc["dmax"] = r.dmax;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) {
        nlohmann::ordered_json row;
        row["d"] = e.d;
        row["split"] = e.split;
        row["trace"] = to_decimal(e.trace);
        row["residue"] = e.residue;
        row["verdict"] = to_string(e.verdict);
        row["flagged"] = e.flagged;
        entries.push_back(std::move(row));
    }
    doc["entries"] = std::move(entries);
    doc["fails"] = r.fails();
    doc["passes"] = r.count(Verdict::Pass);
    doc["skips"] = r.count(Verdict::Skip);
    return doc.dump(2);
}

CongruenceReport report_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        CongruenceReport r;
        if (doc.at("level").get<std::string>() == "p") r.p = doc.at("p").get<std::int64_t>();
        r.l = doc.at("l").get<std::int64_t>();
        r.dmax = doc.at("dmax").get<std::int64_t>();
        for (const auto& row : doc.at("entries")) {
            ReportEntry e;
            e.d = row.at("d").get<std::int64_t>();
            e.split = row.at("split").get<bool>();
            e.trace = parse_integer(row.at("trace").get<std::string>());
            e.residue = row.at("residue").get<std::int64_t>();
            const auto v = row.at("verdict").get<std::string>();
            e.verdict = v == "PASS" ? Verdict::Pass : v == "FAIL" ? Verdict::Fail : Verdict::Skip;
            e.flagged = row.value("flagged", false);
            r.entries.push_back(std::move(e));
        }
        if (doc.at("fails").get<std::size_t>() != r.fails()) raise(ErrorKind::InvalidArgument, "fail count mismatch");
        return r;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        raise(ErrorKind::InvalidArgument, std::string("malformed report: ") + e.what());
    }
}

std::string report_to_csv(const CongruenceReport& r) {
    std::ostringstream out;
    out << "d,split,trace,residue,verdict,flagged\n";
    for (const auto& e : r.entries) {
        out << e.d << ',' << (e.split ? "true" : "false") << ',' << to_decimal(e.trace) << ',' << e.residue << ','
            << to_string(e.verdict) << ',' << (e.flagged ? "true" : "false") << '\n';
    }
    return out.str();
}

} // namespace singmod
