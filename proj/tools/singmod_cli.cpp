// singmod: traces, tables, expansion dumps, congruence sweeps and oracle
// comparisons. Exit codes: 0 ok, 1 verification failure, 2 usage or
// precondition, 3 internal consistency violation.

#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/hecke.hpp"
#include "singmod/heegner.hpp"
#include "singmod/parallel.hpp"
#include "singmod/phi.hpp"
#include "singmod/quadratic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace singmod;

namespace {

enum class Format { Plain, Json, Csv };

struct CliConfig {
    std::optional<std::int64_t> qprec;
    unsigned bits = 256;
    Format format = Format::Plain;
    std::string cache_dir;
    bool no_cache = false;
    unsigned jobs = 1;
};

PhiP load_or_build(const CliConfig& cfg, std::int64_t p, std::int64_t dmax) {
    if (!is_genus_zero_prime(p)) raise(ErrorKind::UnsupportedLevel, "p = " + std::to_string(p) + " is not in the genus-zero set");
    const std::int64_t qmax = cfg.qprec.value_or(auto_window(p, dmax));
    const std::filesystem::path dir = cfg.no_cache ? std::filesystem::path() : std::filesystem::path(cfg.cache_dir);
    return obtain_phi(p, qmax, dir, cfg.jobs);
}

TraceTableLevel1 level1_table(const CliConfig& cfg, std::int64_t dmax) {
    return TraceTableLevel1::build(cfg.qprec.value_or(dmax + 1));
}

void require_level1_d(std::int64_t d) {
    if (!is_level1_discriminant(d)) {
        raise(ErrorKind::UnsupportedDiscriminant, "-" + std::to_string(d) + " is not a negative discriminant");
    }
}

void require_level_p_d(std::int64_t p, std::int64_t d) {
    if (d <= 0 || !is_square_class(p, d)) {
        raise(ErrorKind::UnsupportedDiscriminant,
              "-" + std::to_string(d) + " is not congruent to a square modulo " + std::to_string(4 * p));
    }
}

// "1" or a prime.
std::int64_t parse_level(const std::string& level) {
    try {
        std::size_t used = 0;
        const auto v = std::stoll(level, &used);
        if (used == level.size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    raise(ErrorKind::InvalidArgument, "level must be 1 or a prime, got '" + level + "'");
}

int cmd_trace(const CliConfig& cfg, const std::string& level_text, std::int64_t d) {
    const std::int64_t level = parse_level(level_text);
    Integer t;
    if (level == 1) {
        require_level1_d(d);
        t = trace_level1(d, level1_table(cfg, d));
    } else {
        if (!is_genus_zero_prime(level)) raise(ErrorKind::UnsupportedLevel, "p = " + level_text + " is not in the genus-zero set");
        require_level_p_d(level, d);
        t = trace_star(load_or_build(cfg, level, d), d);
    }
    switch (cfg.format) {
    case Format::Plain:
        std::cout << t << '\n';
        break;
    case Format::Csv:
        std::cout << "level,d,trace\n" << level << ',' << d << ',' << t << '\n';
        break;
    case Format::Json: {
        nlohmann::ordered_json doc;
        doc["level"] = level == 1 ? "1" : "p";
        if (level != 1) doc["p"] = level;
        doc["d"] = d;
        doc["trace"] = t.get_str();
        std::cout << doc.dump(2) << '\n';
        break;
    }
    }
    return 0;
}

int cmd_table(const CliConfig& cfg, std::int64_t p, std::int64_t dmax) {
    const PhiP phi = load_or_build(cfg, p, dmax);
    const auto ds = valid_discriminants(p, dmax);
    if (cfg.format == Format::Json) {
        nlohmann::ordered_json doc;
        doc["p"] = p;
        doc["dmax"] = dmax;
        auto entries = nlohmann::ordered_json::array();
        for (const auto d : ds) entries.push_back({{"d", d}, {"trace", trace_star(phi, d).get_str()}});
        doc["entries"] = std::move(entries);
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    if (cfg.format == Format::Csv) std::cout << "d,trace\n";
    for (const auto d : ds) {
        std::cout << d << (cfg.format == Format::Csv ? "," : " ") << trace_star(phi, d) << '\n';
    }
    return 0;
}

void print_report(const CliConfig& cfg, const CongruenceReport& r) {
    switch (cfg.format) {
    case Format::Json:
        std::cout << report_to_json(r) << '\n';
        return;
    case Format::Csv:
        std::cout << report_to_csv(r);
        return;
    case Format::Plain:
        break;
    }
    for (const auto& e : r.entries) {
        std::cout << "d=" << e.d << " split=" << (e.split ? "yes" : "no") << " t=" << e.trace
                  << " residue=" << e.residue << ' ' << to_string(e.verdict) << (e.flagged ? " (p^2 | d)" : "")
                  << '\n';
    }
    std::cout << r.count(Verdict::Pass) << " PASS, " << r.count(Verdict::Skip) << " SKIP, " << r.fails()
              << " FAIL\n";
}

void require_sweep_prime(std::int64_t l, std::optional<std::int64_t> p) {
    if (!is_odd_prime(l)) raise(ErrorKind::InvalidArgument, "l = " + std::to_string(l) + " is not an odd prime");
    if (p && *p == l) raise(ErrorKind::InvalidArgument, "l must differ from p");
}

int cmd_verify(const CliConfig& cfg, const std::string& kind, std::optional<std::int64_t> p, std::int64_t l,
               std::int64_t dmax) {
    CongruenceReport r;
    if (kind == "ao" || kind == "level1") {
        if (p) raise(ErrorKind::InvalidArgument, "verify ao takes no --p");
        require_sweep_prime(l, std::nullopt);
        r = verify_level1(l, dmax, level1_table(cfg, l * l * dmax), cfg.jobs);
    } else {
        if (!p) raise(ErrorKind::InvalidArgument, "level-p verification needs --p");
        require_sweep_prime(l, p);
        r = verify_star(*p, l, dmax, load_or_build(cfg, *p, l * l * dmax), cfg.jobs);
    }
    print_report(cfg, r);
    return r.fails() == 0 ? 0 : 1;
}

int cmd_phi(const CliConfig& cfg, std::int64_t p, std::int64_t qmax, const std::string& out) {
    if (!is_genus_zero_prime(p)) raise(ErrorKind::UnsupportedLevel, "p = " + std::to_string(p) + " is not in the genus-zero set");
    const PhiP phi = construct_phi_p(p, qmax, cfg.jobs);
    std::filesystem::path file = out;
    if (file.empty()) {
        if (cfg.cache_dir.empty()) raise(ErrorKind::InvalidArgument, "no --out and no cache directory");
        std::filesystem::create_directories(cfg.cache_dir);
        file = phi_cache_path(cfg.cache_dir, p);
    }
    save_phi(phi, file);
    // Reload so the printed audit describes the file, not the in-memory object.
    const PhiP back = load_phi(file);
    const Integer bm1 = back.table.at(-1);
    const Integer b0 = back.table.at(0);
    if (cfg.format == Format::Json) {
        nlohmann::ordered_json doc;
        doc["p"] = p;
        doc["qmax"] = back.expansion.qtrunc();
        doc["file"] = file.string();
        doc["unknowns"] = back.audit.unknowns;
        doc["negative_conditions"] = back.audit.negative_conditions;
        doc["B(-1)"] = bm1.get_str();
        doc["B(0)"] = b0.get_str();
        doc["table_dmax"] = back.table.dmax();
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << "wrote " << file.string() << '\n'
                  << "p=" << p << " qmax=" << back.expansion.qtrunc() << " unknowns=" << back.audit.unknowns
                  << " negative-D conditions=" << back.audit.negative_conditions << '\n'
                  << "B(-1)=" << bm1 << " B(0)=" << b0 << " table valid to d=" << back.table.dmax() << '\n';
    }
    return 0;
}

struct CompareRow {
    std::int64_t d = 0;
    Integer series;
    Integer oracle;
};

int cmd_compare(const CliConfig& cfg, std::int64_t level, std::int64_t dmax) {
    PrecisionContext ctx;
    ctx.bits = cfg.bits;
    std::vector<std::int64_t> ds;
    std::vector<CompareRow> rows;
    if (level == 1) {
        for (std::int64_t d = 1; d <= dmax; ++d) {
            if (is_level1_discriminant(d)) ds.push_back(d);
        }
        const auto g = level1_table(cfg, dmax);
        rows.resize(ds.size());
        parallel_for(ds.size(), cfg.jobs, [&](std::size_t i) {
            rows[i] = {ds[i], trace_level1(ds[i], g), trace_oracle_level1(ds[i], ctx)};
        });
    } else {
        if (!has_hauptmodul(level)) {
            raise(ErrorKind::UnsupportedLevel, "no numerical oracle at p = " + std::to_string(level));
        }
        for (const auto d : valid_discriminants(level, dmax)) {
            if (d % (level * level) != 0) ds.push_back(d);
        }
        const PhiP phi = load_or_build(cfg, level, dmax);
        rows.resize(ds.size());
        parallel_for(ds.size(), cfg.jobs, [&](std::size_t i) {
            rows[i] = {ds[i], trace_star(phi, ds[i]), trace_oracle_star(level, ds[i], ctx)};
        });
    }
    std::size_t mismatches = 0;
    for (const auto& r : rows) mismatches += r.series == r.oracle ? 0 : 1;
    switch (cfg.format) {
    case Format::Json: {
        nlohmann::ordered_json doc;
        doc["level"] = level == 1 ? "1" : "p";
        if (level != 1) doc["p"] = level;
        doc["dmax"] = dmax;
        doc["bits"] = cfg.bits;
        auto entries = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            entries.push_back({{"d", r.d}, {"series", r.series.get_str()}, {"oracle", r.oracle.get_str()},
                               {"equal", r.series == r.oracle}});
        }
        doc["entries"] = std::move(entries);
        doc["mismatches"] = mismatches;
        std::cout << doc.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        std::cout << "d,series,oracle,equal\n";
        for (const auto& r : rows) {
            std::cout << r.d << ',' << r.series << ',' << r.oracle << ',' << (r.series == r.oracle ? "true" : "false") << '\n';
        }
        break;
    case Format::Plain:
        for (const auto& r : rows) {
            std::cout << "d=" << r.d << " series=" << r.series << " oracle=" << r.oracle
                      << (r.series == r.oracle ? "" : "  MISMATCH") << '\n';
        }
        std::cout << rows.size() - mismatches << " equal, " << mismatches << " mismatched\n";
        break;
    }
    return mismatches == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traces of singular moduli: exact series, congruence sweeps and numerical oracles", "singmod"};
    app.require_subcommand(1);
    CliConfig cfg;
    if (const char* env = std::getenv("SINGMOD_CACHE_DIR")) cfg.cache_dir = env;

    std::string format = "plain";
    std::int64_t qprec = 0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "json", "csv"}));
    app.add_option("--qprec", qprec, "q-precision override (exclusive exponent bound)")->check(CLI::PositiveNumber);
    app.add_option("--bits", cfg.bits, "Target bits for numerical oracles")->check(CLI::Range(32u, 1u << 20));
    app.add_option("--cache-dir", cfg.cache_dir, "Expansion cache directory (default $SINGMOD_CACHE_DIR)");
    app.add_flag("--no-cache", cfg.no_cache, "Ignore and do not write the expansion cache");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string level;
    std::int64_t d = 0;
    auto* trace = app.add_subcommand("trace", "Print t(d) or t^(p)(d)")->fallthrough();
    trace->add_option("--level", level, "1 or a genus-zero prime p")->required();
    trace->add_option("--d", d, "Discriminant d (for -d)")->required();

    std::int64_t p = 0;
    std::int64_t dmax = 0;
    auto* table = app.add_subcommand("table", "Tabulate t^(p)(d) for valid d <= dmax")->fallthrough();
    table->add_option("--p", p, "Genus-zero prime")->required();
    table->add_option("--dmax", dmax, "Largest d")->required()->check(CLI::NonNegativeNumber);

    std::string kind;
    std::optional<std::int64_t> vp;
    std::int64_t l = 0;
    auto* verify = app.add_subcommand("verify", "Check t(l^2 d) = 0 mod l for split d")->fallthrough();
    verify->add_option("kind", kind, "level1 (alias ao) or levelp (alias osburn)")
        ->required()
        ->check(CLI::IsMember({"level1", "levelp", "ao", "osburn"}));
    verify->add_option("--p", vp, "Genus-zero prime (levelp)");
    verify->add_option("--l", l, "Odd prime l")->required();
    verify->add_option("--dmax", dmax, "Largest d")->required()->check(CLI::NonNegativeNumber);

    std::int64_t qmax = 0;
    std::string out;
    auto* phi = app.add_subcommand("phi", "Build phi_p and write the expansion cache")->fallthrough();
    phi->add_option("--p", p, "Genus-zero prime")->required();
    phi->add_option("--qmax", qmax, "Exclusive q-window")->required();
    phi->add_option("--out", out, "Output file (default: cache directory)");

    std::optional<std::int64_t> cp;
    std::string clevel;
    auto* compare = app.add_subcommand("compare", "Compare series traces with the numerical oracle")->fallthrough();
    compare->add_option("--level", clevel, "1 or p");
    compare->add_option("--p", cp, "Prime with a Hauptmodul oracle");
    compare->add_option("--dmax", dmax, "Largest d")->required()->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (qprec > 0) cfg.qprec = qprec;
    cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Plain;

    try {
        if (*trace) return cmd_trace(cfg, level, d);
        if (*table) return cmd_table(cfg, p, dmax);
        if (*verify) return cmd_verify(cfg, kind, vp, l, dmax);
        if (*phi) return cmd_phi(cfg, p, qmax, out);
        if (*compare) {
            if (cp && !clevel.empty()) raise(ErrorKind::InvalidArgument, "give either --level or --p");
            if (!cp && clevel.empty()) raise(ErrorKind::InvalidArgument, "compare needs --level or --p");
            return cmd_compare(cfg, cp ? *cp : parse_level(clevel), dmax);
        }
    } catch (const Error& e) {
        std::cerr << "singmod: " << e.what() << '\n';
        return e.is_precondition() ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "singmod: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
