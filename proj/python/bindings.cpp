#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nonrecip/commands.hpp"
#include "nonrecip/config.hpp"
#include "nonrecip/design.hpp"
#include "nonrecip/error.hpp"
#include "nonrecip/model.hpp"
#include "nonrecip/noise.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/stability.hpp"

namespace py = pybind11;
using namespace nonrecip;

namespace {

template <typename T>
py::array_t<T> to_numpy(const Matrix<T>& m) {
    py::array_t<T> out({m.rows(), m.cols()});
    auto view = out.template mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
    return out;
}

py::dict scattering_dict(const ScatteringResult& r) {
    py::dict d;
    d["omega"] = r.omega;
    d["s"] = to_numpy(r.s);
    d["t"] = to_numpy(r.t);
    d["t_db"] = to_numpy(r.t_db);
    if (r.l) d["l"] = to_numpy(*r.l);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonreciprocal optomechanical amplifier and isolator simulator";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<>())
        .def_static("symmetric", &DeviceParams::symmetric, py::arg("kappa"), py::arg("gamma1"), py::arg("gamma2"),
                    py::arg("g_mo1"), py::arg("g_mo2"), py::arg("phi"))
        .def_readwrite("kappa1", &DeviceParams::kappa1)
        .def_readwrite("kappa2", &DeviceParams::kappa2)
        .def_readwrite("gamma1", &DeviceParams::gamma1)
        .def_readwrite("gamma2", &DeviceParams::gamma2)
        .def_readwrite("g11", &DeviceParams::g11)
        .def_readwrite("g12", &DeviceParams::g12)
        .def_readwrite("g21", &DeviceParams::g21)
        .def_readwrite("g22", &DeviceParams::g22)
        .def_readwrite("phi", &DeviceParams::phi)
        .def_readwrite("nm1", &DeviceParams::nm1)
        .def_readwrite("nm2", &DeviceParams::nm2)
        .def("validate", &DeviceParams::validate)
        .def("__repr__", [](const DeviceParams& p) {
            return "DeviceParams(gamma1=" + std::to_string(p.gamma1) + ", gamma2=" + std::to_string(p.gamma2) +
                   ", g11=" + std::to_string(p.g11) + ", g12=" + std::to_string(p.g12) +
                   ", phi=" + std::to_string(p.phi) + ")";
        });

    m.def("drift_full", [](const DeviceParams& p) { return to_numpy(drift_full(p)); });
    m.def("drift_reduced", [](const DeviceParams& p) {
        const ReducedDrift r = drift_reduced(p);
        return py::make_tuple(to_numpy(r.mprime), r.lambda_diag);
    });

    m.def("smatrix_full", [](const DeviceParams& p, double omega) { return scattering_dict(smatrix_full(p, omega)); });
    m.def("smatrix_reduced",
          [](const DeviceParams& p, double omega) { return scattering_dict(smatrix_reduced(p, omega)); });

    py::class_<AnalyticTransmission>(m, "AnalyticTransmission")
        .def_readonly("s12", &AnalyticTransmission::s12)
        .def_readonly("s21", &AnalyticTransmission::s21)
        .def_readonly("d", &AnalyticTransmission::d)
        .def_readonly("numerator12", &AnalyticTransmission::numerator12)
        .def_readonly("numerator21", &AnalyticTransmission::numerator21);
    m.def("analytic_transmission", &analytic_transmission);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("margin", &StabilityReport::margin)
        .def_readonly("eigenvalues", &StabilityReport::eigenvalues)
        .def_readonly("printed_values", &StabilityReport::printed_values)
        .def_readonly("printed_conditions", &StabilityReport::printed_conditions)
        .def_readonly("discrepancy", &StabilityReport::discrepancy)
        .def_property_readonly("verdict", [](const StabilityReport& r) { return std::string(to_string(r.verdict)); });
    m.def("stability_report", &stability_report);

    py::class_<NoiseResult>(m, "NoiseResult")
        .def_readonly("omega", &NoiseResult::omega)
        .def_readonly("s_out", &NoiseResult::s_out)
        .def_readonly("gain", &NoiseResult::gain)
        .def_readonly("added", &NoiseResult::added);
    m.def("output_spectrum_cavity2", &output_spectrum_cavity2);

    py::class_<IsolationSolution>(m, "IsolationSolution")
        .def_readonly("phi", &IsolationSolution::phi)
        .def_readonly("omega", &IsolationSolution::omega)
        .def_readonly("residual", &IsolationSolution::residual)
        .def_readonly("feasible", &IsolationSolution::feasible);
    m.def("solve_isolation", [](const DeviceParams& p) {
        const auto s = solve_isolation(p);
        return std::vector<IsolationSolution>(s.begin(), s.end());
    });

    py::class_<WorkingPoint>(m, "WorkingPoint")
        .def_readonly("omega", &WorkingPoint::omega)
        .def_readonly("gain_db", &WorkingPoint::gain_db)
        .def_readonly("reverse_db", &WorkingPoint::reverse_db)
        .def_readonly("plateau_halfwidth", &WorkingPoint::plateau_halfwidth)
        .def_readonly("stable_margin", &WorkingPoint::stable_margin)
        .def_property_readonly("rule", [](const WorkingPoint& w) {
            return w.rule == PointRule::lossless_reverse ? "lossless_reverse" : "peak_gain";
        });
    m.def(
        "find_amplifier_point",
        [](const DeviceParams& p, double lo, double hi, int n_scan) {
            return find_amplifier_point(p, Interval{lo, hi}, n_scan);
        },
        py::arg("params"), py::arg("omega_min"), py::arg("omega_max"), py::arg("n_scan") = 2001);

    m.def(
        "optimize_gain",
        [](const DeviceParams& base, const std::map<std::string, std::pair<double, double>>& bounds,
           double epsilon_margin, double lo, double hi, int workers) {
            std::vector<ParamBound> b;
            for (const auto& [name, range] : bounds) b.push_back({name, Interval{range.first, range.second}});
            OptimizeOptions options;
            options.workers = workers;
            const OptimizeResult r = optimize_gain(base, b, epsilon_margin, Interval{lo, hi}, options);
            return py::make_tuple(r.params, r.point);
        },
        py::arg("base"), py::arg("bounds"), py::arg("epsilon_margin"), py::arg("omega_min"), py::arg("omega_max"),
        py::arg("workers") = 1);

    m.def(
        "run_command",
        [](const std::string& command, const std::string& config_json, int workers) {
            return run_command(command, parse_config(config_json), workers);
        },
        py::arg("command"), py::arg("config_json"), py::arg("workers") = 1);
}
