#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmr/certificate.hpp"
#include "qmr/enumerate.hpp"
#include "qmr/errors.hpp"

namespace py = pybind11;

// JSON crosses the boundary as text; the Python package decodes it.

PYBIND11_MODULE(_core, m)
{
    m.doc() = "q-matroid representation checks (native core)";

    static py::exception<qmr::BudgetExceeded> budget(m, "BudgetExceeded", PyExc_RuntimeError);
    static py::exception<qmr::InvariantViolation> invariant(m, "InvariantViolation", PyExc_AssertionError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const qmr::InvalidInput& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const qmr::BudgetExceeded& e) {
            py::set_error(budget, e.what());
        } catch (const qmr::InvariantViolation& e) {
            py::set_error(invariant, e.what());
        }
    });

    m.def(
        "run_job",
        [](const std::string& command, const std::string& inputs, unsigned workers) {
            qmr::JobOptions opts;
            opts.workers = workers;
            const qmr::Json in = qmr::Json::parse(inputs);
            qmr::Json result;
            {
                py::gil_scoped_release release;
                result = qmr::run_job(command, in, opts);
            }
            return result.dump();
        },
        py::arg("command"), py::arg("inputs"), py::arg("workers") = 1);

    m.def(
        "make_certificate",
        [](const std::string& command, const std::string& inputs, const std::string& result) {
            return qmr::make_certificate(command, qmr::Json::parse(inputs), qmr::Json::parse(result),
                                         {"python", command}, 0.0)
                .dump();
        },
        py::arg("command"), py::arg("inputs"), py::arg("result"));

    m.def(
        "verify_certificate",
        [](const std::string& cert, unsigned workers) {
            qmr::JobOptions opts;
            opts.workers = workers;
            const qmr::Json c = qmr::Json::parse(cert);
            qmr::CertificateCheck check;
            {
                py::gil_scoped_release release;
                check = qmr::verify_certificate(c, opts);
            }
            return py::make_tuple(check.pass, check.messages);
        },
        py::arg("certificate"), py::arg("workers") = 1);

    m.def("reproduce_names", &qmr::reproduce_names);
    m.def("resolve_reproduce_name", &qmr::resolve_reproduce_name);
    m.def(
        "gaussian_binomial",
        [](std::uint64_t q, std::size_t n, std::size_t d) {
            return py::int_(py::str(qmr::to_string(qmr::gaussian_binomial(q, n, d))));
        },
        py::arg("q"), py::arg("n"), py::arg("d"));
}
