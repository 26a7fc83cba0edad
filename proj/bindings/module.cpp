#include "maxrank/binomial.hpp"
#include "maxrank/numset.hpp"
#include "maxrank/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace maxrank;

PYBIND11_MODULE(_maxrank, m) {
    m.doc() = "maximal-rank certificates for unions of space curves";

    py::class_<NumericalSet>(m, "NumericalSet")
        .def(py::init<>())
        .def_readwrite("n", &NumericalSet::n)
        .def_readwrite("pairs", &NumericalSet::pairs)
        .def("admissible", &NumericalSet::admissible)
        .def("admissible_generalized", &NumericalSet::admissible_generalized)
        .def("__str__", &NumericalSet::to_text)
        .def("__repr__", &NumericalSet::to_text);

    m.def("parse", &parse_numset, py::arg("text"));
    m.def("binom", &binom);
    m.def("wk", &wk, py::arg("eps"), py::arg("k"));
    m.def(
        "critical_value",
        [](const NumericalSet& eps) { return critical_value(eps).k; },
        py::arg("eps"));
    m.def(
        "rq",
        [](long long mm) {
            RQPair p = rq(mm);
            return py::make_tuple(p.r, p.q);
        },
        py::arg("m"));
    m.def(
        "expected_hilbert",
        [](const NumericalSet& eps, long long t) {
            Expected e = expected_hilbert(eps, t);
            return py::make_tuple(e.h0, e.h1);
        },
        py::arg("eps"), py::arg("t"));
    m.def(
        "exceptional_lookup",
        [](const NumericalSet& eps, long long t) -> py::object {
            auto e = exceptional_lookup(eps, t);
            if (!e) return py::none();
            return py::make_tuple(e->h0, e->h1, e->source);
        },
        py::arg("eps"), py::arg("t"));
    m.def(
        "verify",
        [](const NumericalSet& eps, long long t, int64_t p, int trials, uint64_t seed) {
            VerdictOptions opts;
            opts.p = p;
            opts.trials = trials;
            opts.seed = seed;
            Verdict v = verdict(eps, t, opts);
            return verdict_to_json(v).dump();
        },
        py::arg("eps"), py::arg("t"), py::arg("p") = kDefaultPrime, py::arg("trials") = 3,
        py::arg("seed") = kDefaultSeed);
    m.def("enumerate_admissible", &enumerate_admissible, py::arg("n"), py::arg("k_target"),
          py::arg("s_max"), py::arg("d_max"));
}
