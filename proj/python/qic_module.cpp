#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qic/dimacs.hpp"
#include "qic/enumeration.hpp"
#include "qic/error.hpp"
#include "qic/error_correction.hpp"
#include "qic/interference.hpp"
#include "qic/report.hpp"

namespace py = pybind11;
using namespace qic;

namespace {

InterferenceConfig make_config(double epsilon, int passes, double collapse_tol) {
    InterferenceConfig cfg{.leakage = epsilon, .passes = passes, .collapse_tol = collapse_tol};
    cfg.validate();
    return cfg;
}

py::array_t<Amplitude> amplitudes(const StateVector& psi) {
    auto amps = psi.amplitudes();
    return py::array_t<Amplitude>(static_cast<py::ssize_t>(amps.size()), amps.data());
}

std::vector<std::string> bitstrings(const std::vector<BasisIndex>& indices, unsigned qubits) {
    std::vector<std::string> out;
    out.reserve(indices.size());
    for (BasisIndex i : indices) out.push_back(to_bitstring(i, qubits));
    return out;
}

}  // namespace

PYBIND11_MODULE(qic, m) {
    m.doc() = "Quantum interference computer simulator";

    auto base = py::register_exception<Error>(m, "QicError", PyExc_RuntimeError);
    py::register_exception<NormCollapse>(m, "NormCollapse", base.ptr());
    py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());
    py::register_exception<RegisterMismatch>(m, "RegisterMismatch", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<UnboundVariable>(m, "UnboundVariable", base.ptr());
    py::register_exception<SchemeInvalid>(m, "SchemeInvalid", base.ptr());

    py::class_<Register>(m, "Register")
        .def(py::init<unsigned, unsigned>(), py::arg("data_qubits"), py::arg("checksum_qubits") = 0)
        .def_property_readonly("data_qubits", &Register::data_qubits)
        .def_property_readonly("checksum_qubits", &Register::checksum_qubits)
        .def_property_readonly("total", &Register::total)
        .def_property_readonly("dimension", &Register::dimension)
        .def("__eq__", [](const Register& a, const Register& b) { return a == b; })
        .def("__repr__", [](const Register& r) {
            return "Register(" + std::to_string(r.data_qubits()) + ", " + std::to_string(r.checksum_qubits()) + ")";
        });

    py::class_<StateVector>(m, "StateVector")
        .def(py::init([](const Register& reg, std::vector<Amplitude> amps) { return StateVector(reg, std::move(amps)); }),
             py::arg("register"), py::arg("amplitudes"))
        .def_static("basis", &StateVector::basis, py::arg("register"), py::arg("index"))
        .def_property_readonly("register", &StateVector::reg)
        .def_property_readonly("qubits", &StateVector::qubits)
        .def_property_readonly("normalized", &StateVector::normalized)
        .def_property_readonly("amplitudes", &amplitudes)
        .def("probabilities", [](const StateVector& psi) {
            std::vector<double> out(psi.size());
            for (BasisIndex i = 0; i < psi.size(); ++i) out[i] = probability(psi, i);
            return out;
        })
        .def("__len__", &StateVector::size)
        .def("__getitem__", &StateVector::at);

    py::class_<Predicate>(m, "Predicate")
        .def_static("from_expr", &Predicate::from_expr, py::arg("text"), py::arg("register"))
        .def_static("from_indices", &Predicate::from_indices, py::arg("valid"), py::arg("register"))
        .def_static(
            "from_dimacs",
            [](std::string_view text, std::optional<unsigned> qubits) {
                CnfFormula cnf = parse_dimacs(text);
                unsigned width = qubits ? *qubits : std::max(cnf.variable_count, 1U);
                return Predicate(std::move(cnf), Register(width));
            },
            py::arg("text"), py::arg("qubits") = py::none())
        .def_property_readonly("register", &Predicate::reg)
        .def("evaluate", &Predicate::evaluate, py::arg("index"))
        .def("valid_indices", [](const Predicate& p) { return p.compile_mask().valid_indices(); })
        .def("with_exclusions",
             [](const Predicate& p, const std::vector<BasisIndex>& ex) { return p.with_exclusions(ex); })
        .def("__repr__", &Predicate::describe);

    m.def("uniform_superposition", &uniform_superposition, py::arg("register"));
    m.def("norm_squared", &norm_squared, py::arg("state"));
    m.def("normalize", &normalize, py::arg("state"), py::arg("collapse_tol") = kDefaultCollapseTolerance);
    m.def("probability", &probability, py::arg("state"), py::arg("index"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("apply_partial_bit_flip", &apply_partial_bit_flip, py::arg("state"), py::arg("qubit"), py::arg("theta"));
    m.def("mark_invalid", &mark_invalid, py::arg("state"), py::arg("predicate"));
    m.def(
        "interfere",
        [](const StateVector& psi, const Predicate& pred, double epsilon, int passes, double collapse_tol) {
            return interfere_repeated(psi, pred, make_config(epsilon, passes, collapse_tol));
        },
        py::arg("state"), py::arg("predicate"), py::arg("epsilon") = 0.0, py::arg("passes") = 1,
        py::arg("collapse_tol") = kDefaultCollapseTolerance);
    m.def("to_bitstring", &to_bitstring, py::arg("index"), py::arg("qubits"));

    py::class_<EnumerationReport>(m, "EnumerationReport")
        .def_property_readonly("found", [](const EnumerationReport& r) { return r.found; })
        .def_property_readonly("found_bitstrings",
                               [](const EnumerationReport& r) { return bitstrings(r.found, r.qubits); })
        .def_property_readonly("termination",
                               [](const EnumerationReport& r) { return std::string(to_string(r.termination)); })
        .def_property_readonly("total_runs", [](const EnumerationReport& r) { return r.runs.size(); })
        .def_property_readonly("productive_runs", &EnumerationReport::productive_runs)
        .def_property_readonly("max_runs", [](const EnumerationReport& r) { return r.max_runs; })
        .def("to_json", [](const EnumerationReport& r) {
            return report::dump(report::envelope("solve", report::config_json(r), report::results_json(r)));
        });

    m.def(
        "enumerate_solutions",
        [](const Predicate& pred, std::uint64_t seed, double epsilon, int passes, double collapse_tol,
           std::uint64_t max_runs) {
            RunConfig cfg{.seed = seed, .interference = make_config(epsilon, passes, collapse_tol), .max_runs = max_runs};
            return enumerate_solutions(pred, pred.reg(), cfg);
        },
        py::arg("predicate"), py::arg("seed") = 0, py::arg("epsilon") = 0.0, py::arg("passes") = 1,
        py::arg("collapse_tol") = kDefaultCollapseTolerance, py::arg("max_runs") = 0);

    py::class_<EccReport>(m, "EccReport")
        .def_property_readonly("status", [](const EccReport& r) { return std::string(to_string(r.status)); })
        .def_readonly("valid_mass_before", &EccReport::valid_mass_before)
        .def_readonly("fidelity_before", &EccReport::fidelity_before)
        .def_readonly("valid_mass_after", &EccReport::valid_mass_after)
        .def_readonly("fidelity_after", &EccReport::fidelity_after)
        .def_property_readonly("event_qubits",
                               [](const EccReport& r) {
                                   std::vector<unsigned> q;
                                   for (const auto& e : r.events) q.push_back(e.qubit);
                                   return q;
                               })
        .def("to_json", [](const EccReport& r) {
            return report::dump(report::envelope("ecc", report::config_json(r), report::results_json(r)));
        });

    m.def(
        "ecc_experiment",
        [](unsigned data_qubits, const std::string& parity, unsigned events, double theta, std::uint64_t seed,
           std::optional<std::string> data_state, double epsilon, int passes) {
            auto scheme = ChecksumScheme::parse(parity, data_qubits);
            std::optional<BasisIndex> basis;
            if (data_state) basis = parse_bitstring(*data_state);
            return ecc_experiment(scheme, NoiseModel{.events = events, .theta = theta},
                                  make_config(epsilon, passes, kDefaultCollapseTolerance), seed, basis);
        },
        py::arg("data_qubits") = 3, py::arg("parity") = "global", py::arg("events") = 1, py::arg("theta") = 0.5,
        py::arg("seed") = 0, py::arg("data_state") = py::none(), py::arg("epsilon") = 0.0, py::arg("passes") = 1);
}
