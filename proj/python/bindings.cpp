#include "zetadyn/cli/app.hpp"
#include "zetadyn/dynamics.hpp"
#include "zetadyn/energy.hpp"
#include "zetadyn/errors.hpp"
#include "zetadyn/geometry.hpp"
#include "zetadyn/maps.hpp"
#include "zetadyn/quantum.hpp"
#include "zetadyn/spectral.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace zetadyn;

namespace {

PotentialSpec make_potential(const std::string& kind, double A, double C, double alpha, double mass, double c,
                             bool allow_complex)
{
    if (kind == "zero") {
        return potential::Zero{};
    }
    if (kind == "montgomery") {
        return potential::MontgomeryApprox{A, C};
    }
    if (kind == "appendix") {
        return potential::MontgomeryAppendix{alpha, mass};
    }
    if (kind == "yitang") {
        return potential::Yitang{c, mass, alpha, allow_complex};
    }
    throw InvalidInput("potential: must be zero, montgomery, appendix or yitang");
}

EigenMethod make_method(const std::string& name)
{
    if (name == "dense") {
        return EigenMethod::Dense;
    }
    if (name == "arnoldi") {
        return EigenMethod::Arnoldi;
    }
    if (name == "auto") {
        return EigenMethod::Auto;
    }
    throw InvalidInput("method: must be auto, dense or arnoldi");
}

} // namespace

PYBIND11_MODULE(_zetadyn, m)
{
    m.doc() = "Iterated circuit maps, spectra and Hamiltonian eigenproblems";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SingularState>(m, "SingularState", base.ptr());
    py::register_exception<Overflow>(m, "Overflow", base.ptr());
    py::register_exception<TooShort>(m, "TooShort", PyExc_ValueError);
    py::register_exception<OrbitAborted>(m, "OrbitAborted", base.ptr());
    py::register_exception<DegenerateDerivative>(m, "DegenerateDerivative", base.ptr());
    py::register_exception<EvanescentRegime>(m, "EvanescentRegime", PyExc_ValueError);
    py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<ElectricalParams>(m, "ElectricalParams")
        .def(py::init([](double r, double R, double L, double C) { return ElectricalParams{r, R, L, C}; }),
             py::arg("r") = 0.7, py::arg("R") = 0.000025, py::arg("L") = 0.00045, py::arg("C") = 0.73)
        .def_readwrite("r", &ElectricalParams::r)
        .def_readwrite("R", &ElectricalParams::R)
        .def_readwrite("L", &ElectricalParams::L)
        .def_readwrite("C", &ElectricalParams::C)
        .def("__repr__", [](const ElectricalParams& p) {
            std::ostringstream s;
            s.precision(17);
            s << "ElectricalParams(r=" << p.r << ", R=" << p.R << ", L=" << p.L << ", C=" << p.C << ")";
            return s.str();
        });

    py::class_<AppendixParams>(m, "AppendixParams")
        .def(py::init([](double alpha) { return AppendixParams{alpha}; }), py::arg("alpha"))
        .def_readwrite("alpha", &AppendixParams::alpha);

    m.def(
        "eval_map",
        [](double x, const MapSpec& spec) {
            const auto e = eval_map(x, spec);
            return py::make_tuple(e.value, e.derivative);
        },
        py::arg("x"), py::arg("params"), "Map value and derivative at x.");

    py::class_<Orbit>(m, "Orbit")
        .def_readonly("x0", &Orbit::x0)
        .def_readonly("n", &Orbit::n)
        .def_readonly("transient", &Orbit::transient)
        .def_readonly("samples", &Orbit::samples)
        .def_property_readonly("status", [](const Orbit& o) { return std::string(status_name(o.status)); })
        .def_property_readonly("completed", &Orbit::completed);

    m.def("generate_orbit", &generate_orbit, py::arg("params"), py::arg("x0"), py::arg("n"), py::arg("transient"));

    py::class_<FixedPointRecord>(m, "FixedPoint")
        .def_readonly("control", &FixedPointRecord::control)
        .def_readonly("x_star", &FixedPointRecord::x_star)
        .def_readonly("multiplier", &FixedPointRecord::multiplier)
        .def_readonly("residual", &FixedPointRecord::residual)
        .def_property_readonly("stability",
                               [](const FixedPointRecord& r) { return std::string(stability_name(r.stability)); });

    m.def(
        "find_fixed_points",
        [](const MapSpec& spec, double lo, double hi, std::size_t seeds) { return find_fixed_points(spec, {lo, hi}, seeds); },
        py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("seeds") = 64);

    m.def("lyapunov_exponent", py::overload_cast<const MapSpec&, double, std::size_t, std::size_t>(&lyapunov_exponent),
          py::arg("params"), py::arg("x0"), py::arg("n"), py::arg("transient"));

    m.def(
        "parameter_scan",
        [](const MapSpec& spec, double lo, double hi, std::size_t steps, double x0, std::size_t n, std::size_t transient,
           std::size_t retain, unsigned workers) {
            ScanSettings s{{lo, hi}, steps, x0, n, transient, retain, workers};
            const auto scan = parameter_scan(spec, s);
            py::dict out;
            out["grid"] = scan.parameter_grid;
            out["retained"] = scan.retained_points;
            out["lyapunov"] = scan.lyapunov;
            std::vector<std::string> status;
            for (const auto& st : scan.status) {
                status.emplace_back(status_name(st));
            }
            out["status"] = status;
            return out;
        },
        py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("steps"), py::arg("x0") = 1.2, py::arg("n") = 2000,
        py::arg("transient") = 1000, py::arg("retain") = 1, py::arg("workers") = 1);

    m.def(
        "attractor_embedding",
        [](const Orbit& orbit) {
            std::vector<std::tuple<double, double, double>> pts;
            for (const auto& p : attractor_embedding(orbit).points) {
                pts.emplace_back(p.x, p.y, p.z);
            }
            return pts;
        },
        py::arg("orbit"));

    m.def(
        "power_spectrum",
        [](const std::vector<double>& samples, bool remove_mean, bool hann) {
            const auto s = power_spectrum(samples, SpectrumOptions{remove_mean, hann});
            return py::make_tuple(s.frequencies, s.power);
        },
        py::arg("samples"), py::arg("remove_mean") = false, py::arg("hann") = false);

    m.def(
        "energy_series",
        [](const Orbit& orbit, const ElectricalParams& p) {
            const auto e = energy_series(orbit, p);
            py::dict out;
            out["e_inductor"] = e.e_inductor;
            out["e_capacitor"] = e.e_capacitor;
            out["transfer_rate"] = e.transfer_rate;
            return out;
        },
        py::arg("orbit"), py::arg("params"));

    m.def(
        "eigensolve",
        [](const std::string& potential, double x_min, double x_max, std::size_t n_points, std::size_t k,
           const std::string& method, double mass, double A, double C, double alpha, double c, bool allow_complex) {
            const auto h = build_hamiltonian(make_potential(potential, A, C, alpha, mass, c, allow_complex),
                                             GridSpec{x_min, x_max, n_points}, mass);
            const auto r = eigensolve(h, k, make_method(method));
            py::dict out;
            out["eigenvalues"] = r.eigenvalues;
            out["residual_norms"] = r.residual_norms;
            out["method"] = std::string(method_name(r));
            return out;
        },
        py::arg("potential") = "montgomery", py::arg("x_min") = 0.1, py::arg("x_max") = 20.0,
        py::arg("n_points") = 1000, py::arg("k") = 5, py::arg("method") = "auto", py::arg("mass") = 1.0,
        py::arg("A") = 0.06, py::arg("C") = 0.73, py::arg("alpha") = 0.0, py::arg("c") = 1.0,
        py::arg("allow_complex") = false);

    m.def("von_mangoldt", &von_mangoldt, py::arg("n"));
    m.def("pair_correlation_g", &pair_correlation_g, py::arg("u"), py::arg("delta") = py::none());
    m.def("pair_correlation_R2", &pair_correlation_R2, py::arg("delta"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::parse_and_dispatch(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
