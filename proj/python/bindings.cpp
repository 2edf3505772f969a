#include "singmod/classical.hpp"
#include "singmod/error.hpp"
#include "singmod/hecke.hpp"
#include "singmod/heegner.hpp"
#include "singmod/phi.hpp"
#include "singmod/quadratic.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

namespace py = pybind11;
using namespace singmod;

namespace {

py::int_ to_py(const Integer& z) { return py::int_(py::str(z.get_str())); }

py::object to_py(const Rational& q) {
    static const py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(Integer(q.get_num())), to_py(Integer(q.get_den())));
}

py::dict series_dict(const FourierSeries& f) {
    py::dict out;
    for (const auto& [e, c] : f.terms()) {
        const Rational exponent = make_rational(e, f.lattice());
        if (exponent.get_den() == 1) {
            out[py::int_(exponent.get_num().get_si())] = to_py(c);
        } else {
            out[to_py(exponent)] = to_py(c);
        }
    }
    return out;
}

py::dict table_dict(const CoefficientTable& t) {
    py::dict out;
    for (const auto& [d, b] : t.values()) out[py::int_(d)] = to_py(b);
    return out;
}

py::object report_obj(const CongruenceReport& r) {
    return py::module_::import("json").attr("loads")(report_to_json(r));
}

PhiP get_phi(std::int64_t p, std::optional<std::int64_t> qmax, std::int64_t dmax, const std::string& cache_dir,
             unsigned jobs) {
    const std::int64_t q = qmax.value_or(auto_window(p, dmax));
    py::gil_scoped_release release;
    return obtain_phi(p, q, cache_dir, jobs);
}

PrecisionContext context(unsigned bits) {
    PrecisionContext ctx;
    ctx.bits = bits;
    return ctx;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact q-series, weak Jacobi forms and traces of singular moduli";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    (void)error;

    m.def("zagier_g", [](std::int64_t qmax) { return series_dict(zagier_g(qmax)); }, py::arg("qmax"),
          "Coefficients of -q^-1 + 2 + sum t(d) q^d below q^qmax.");
    m.def("j_series", [](std::int64_t qmax) { return series_dict(j_series(qmax)); }, py::arg("qmax"));

    m.def(
        "trace_level1",
        [](std::int64_t d) {
            if (!is_level1_discriminant(d)) raise(ErrorKind::UnsupportedDiscriminant, "-d is not a negative discriminant");
            return to_py(trace_level1(d, TraceTableLevel1::build(d + 1)));
        },
        py::arg("d"));

    m.def(
        "trace_star",
        [](std::int64_t p, std::int64_t d, std::optional<std::int64_t> qmax, const std::string& cache_dir) {
            return to_py(trace_star(get_phi(p, qmax, d, cache_dir, 1), d));
        },
        py::arg("p"), py::arg("d"), py::arg("qmax") = py::none(), py::arg("cache_dir") = "");

    m.def(
        "phi_table",
        [](std::int64_t p, std::int64_t qmax, unsigned jobs) {
            PhiP phi;
            {
                py::gil_scoped_release release;
                phi = construct_phi_p(p, qmax, jobs);
            }
            return table_dict(phi.table);
        },
        py::arg("p"), py::arg("qmax"), py::arg("jobs") = 1, "B(d) for every valid d in the window of phi_p.");

    m.def(
        "phi_coefficient",
        [](std::int64_t p, std::int64_t qmax, std::int64_t n, std::int64_t r) {
            return to_py(get_phi(p, qmax, 0, "", 1).expansion.coefficient(n, r));
        },
        py::arg("p"), py::arg("qmax"), py::arg("n"), py::arg("r"));

    m.def("kronecker", [](std::int64_t a, std::int64_t n) { return kronecker(a, n); }, py::arg("a"), py::arg("n"));

    m.def(
        "verify_level1",
        [](std::int64_t l, std::int64_t dmax, unsigned jobs) {
            CongruenceReport r;
            {
                py::gil_scoped_release release;
                r = verify_level1(l, dmax, TraceTableLevel1::build(l * l * dmax + 1), jobs);
            }
            return report_obj(r);
        },
        py::arg("l"), py::arg("dmax"), py::arg("jobs") = 1);

    m.def(
        "verify_star",
        [](std::int64_t p, std::int64_t l, std::int64_t dmax, std::optional<std::int64_t> qmax,
           const std::string& cache_dir, unsigned jobs) {
            if (!is_odd_prime(l) || l == p) raise(ErrorKind::InvalidArgument, "l must be an odd prime different from p");
            const PhiP phi = get_phi(p, qmax, l * l * dmax, cache_dir, jobs);
            CongruenceReport r;
            {
                py::gil_scoped_release release;
                r = verify_star(p, l, dmax, phi, jobs);
            }
            return report_obj(r);
        },
        py::arg("p"), py::arg("l"), py::arg("dmax"), py::arg("qmax") = py::none(), py::arg("cache_dir") = "",
        py::arg("jobs") = 1);

    m.def(
        "class_representatives",
        [](std::int64_t d) {
            std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
            for (const auto& q : class_representatives(d)) out.emplace_back(q.a, q.b, q.c);
            return out;
        },
        py::arg("d"));
    m.def("hurwitz_sum", [](std::int64_t d) { return to_py(hurwitz_sum(d)); }, py::arg("d"));
    m.def("valid_discriminants", &valid_discriminants, py::arg("p"), py::arg("dmax"));

    m.def(
        "oracle_level1", [](std::int64_t d, unsigned bits) { return to_py(trace_oracle_level1(d, context(bits))); },
        py::arg("d"), py::arg("bits") = 256, "t(d) from numerical values of j at Heegner points.");
    m.def(
        "oracle_star",
        [](std::int64_t p, std::int64_t d, unsigned bits) { return to_py(trace_oracle_star(p, d, context(bits))); },
        py::arg("p"), py::arg("d"), py::arg("bits") = 256);

    m.attr("GENUS_ZERO_PRIMES") = std::vector<std::int64_t>(kGenusZeroPrimes.begin(), kGenusZeroPrimes.end());
}
