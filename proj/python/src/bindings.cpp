// Python bindings for the solver toolkit: orbital conversions, the two
// fixed-point engines, the closed-loop simulator and archive persistence.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "orbitraise/archive.hpp"
#include "orbitraise/csv.hpp"
#include "orbitraise/feedback.hpp"

namespace py = pybind11;
using namespace orbitraise;

namespace {

struct PySolution {
    std::string config_json;
    std::vector<double> values;
    std::vector<std::uint32_t> policy;
    ConvergenceReport report;
};

struct PySimulation {
    py::array_t<double> times;     // (n,)
    py::array_t<double> states;    // (n, 4): rho, theta, v_rho, v_theta
    py::array_t<double> controls;  // (n, 2): u_bar, phi
    py::array_t<double> elements;  // (n, 4): a, e, omega, theta_star
    bool exited_crown = false;
    TransferMetrics metrics;
};

PySolution solve_config(const std::string& config_json) {
    const ProblemConfig cfg = parse_config(config_json);
    const BellmanOperator op(cfg.make_grid(), cfg.make_problem(), cfg.make_solver());
    SolveResult result;
    {
        py::gil_scoped_release release;
        result = cfg.engine == Engine::policy_iteration ? policy_iteration(op)
                                                        : value_iteration(op);
    }
    PySolution sol;
    sol.config_json = canonical_config(cfg);
    sol.values = std::move(result.values);
    sol.policy = std::move(result.policy);
    sol.report = ConvergenceReport{to_string(cfg.engine), result.iterations, result.residual,
                                   result.wall_seconds, result.converged};
    return sol;
}

PySimulation simulate_solution(const PySolution& sol, std::optional<bool> apply_drag) {
    const ProblemConfig cfg = parse_config(sol.config_json);
    const BellmanOperator op(cfg.make_grid(), cfg.make_problem(), cfg.make_solver());
    Trajectory traj;
    {
        py::gil_scoped_release release;
        traj = simulate(op, sol.values, cfg.initial, cfg.make_plant(apply_drag));
    }

    const auto n = static_cast<py::ssize_t>(traj.times.size());
    PySimulation out;
    out.times = py::array_t<double>(n);
    out.states = py::array_t<double>({n, static_cast<py::ssize_t>(4)});
    out.controls = py::array_t<double>({n, static_cast<py::ssize_t>(2)});
    out.elements = py::array_t<double>({n, static_cast<py::ssize_t>(4)});
    auto t = out.times.mutable_unchecked<1>();
    auto s = out.states.mutable_unchecked<2>();
    auto c = out.controls.mutable_unchecked<2>();
    auto e = out.elements.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        t(i) = traj.times[k];
        s(i, 0) = traj.states[k].rho;
        s(i, 1) = traj.states[k].theta;
        s(i, 2) = traj.states[k].v_rho;
        s(i, 3) = traj.states[k].v_theta;
        c(i, 0) = traj.controls[k].u_bar;
        c(i, 1) = traj.controls[k].phi;
        e(i, 0) = traj.elements[k].a;
        e(i, 1) = traj.elements[k].e;
        e(i, 2) = traj.elements[k].omega;
        e(i, 3) = traj.elements[k].theta_star;
    }
    out.exited_crown = traj.exited_crown;
    out.metrics = transfer_metrics(traj, cfg.target, cfg.band, cfg.mu);
    return out;
}

void save_py(const PySolution& sol, const std::string& path) {
    SolutionArchive archive;
    archive.config = parse_config(sol.config_json);
    archive.values = sol.values;
    archive.policy = sol.policy;
    archive.report = sol.report;
    save_solution(archive, path);
}

PySolution load_py(const std::string& path) {
    SolutionArchive archive = load_solution(path);
    PySolution sol;
    sol.config_json = canonical_config(archive.config);
    sol.values = std::move(archive.values);
    sol.policy = std::move(archive.policy);
    sol.report = archive.report;
    return sol;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "HJB solver and feedback simulator for planar low-thrust orbit raising";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ArchiveError>(m, "ArchiveError", PyExc_ValueError);

    py::class_<PolarState>(m, "PolarState")
        .def(py::init<double, double, double, double>(), py::arg("rho"), py::arg("theta"),
             py::arg("v_rho"), py::arg("v_theta"))
        .def_readwrite("rho", &PolarState::rho)
        .def_readwrite("theta", &PolarState::theta)
        .def_readwrite("v_rho", &PolarState::v_rho)
        .def_readwrite("v_theta", &PolarState::v_theta)
        .def("__repr__", [](const PolarState& s) {
            return "PolarState(rho=" + std::to_string(s.rho) + ", theta=" + std::to_string(s.theta) +
                   ", v_rho=" + std::to_string(s.v_rho) + ", v_theta=" + std::to_string(s.v_theta) + ")";
        });

    py::class_<CartesianState>(m, "CartesianState")
        .def(py::init<double, double, double, double>(), py::arg("y1"), py::arg("y2"),
             py::arg("v1"), py::arg("v2"))
        .def_readwrite("y1", &CartesianState::y1)
        .def_readwrite("y2", &CartesianState::y2)
        .def_readwrite("v1", &CartesianState::v1)
        .def_readwrite("v2", &CartesianState::v2);

    py::class_<OrbitalElements>(m, "OrbitalElements")
        .def_readonly("a", &OrbitalElements::a)
        .def_readonly("e", &OrbitalElements::e)
        .def_readonly("omega", &OrbitalElements::omega)
        .def_readonly("theta_star", &OrbitalElements::theta_star)
        .def_readonly("energy", &OrbitalElements::energy)
        .def_readonly("h", &OrbitalElements::h)
        .def_readonly("p", &OrbitalElements::p);

    py::class_<Control>(m, "Control")
        .def_readonly("u_bar", &Control::u_bar)
        .def_readonly("phi", &Control::phi)
        .def("is_null", &Control::is_null)
        .def_static("off", &Control::off)
        .def_static("thrust", &Control::thrust, py::arg("u_max"), py::arg("phi"));

    py::class_<DragParams>(m, "DragParams")
        .def(py::init<double, double, double, double>(), py::arg("c_d"), py::arg("s_area"),
             py::arg("mass"), py::arg("rho_d"))
        .def_readwrite("c_d", &DragParams::c_d)
        .def_readwrite("s_area", &DragParams::s_area)
        .def_readwrite("mass", &DragParams::mass)
        .def_readwrite("rho_d", &DragParams::rho_d)
        .def("accel_coeff", &DragParams::accel_coeff);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("engine", &ConvergenceReport::engine)
        .def_readonly("iterations", &ConvergenceReport::iterations)
        .def_readonly("residual", &ConvergenceReport::residual)
        .def_readonly("wall_seconds", &ConvergenceReport::wall_seconds)
        .def_readonly("converged", &ConvergenceReport::converged);

    py::class_<TransferMetrics>(m, "TransferMetrics")
        .def_readonly("band_entry_time", &TransferMetrics::band_entry_time)
        .def_readonly("switch_off_time", &TransferMetrics::switch_off_time)
        .def_readonly("final_radius_error", &TransferMetrics::final_radius_error)
        .def_readonly("fuel_used", &TransferMetrics::fuel_used)
        .def_readonly("reactivations", &TransferMetrics::reactivations);

    py::class_<PySolution>(m, "Solution")
        .def_readonly("config_json", &PySolution::config_json)
        .def_property_readonly("values",
                               [](const PySolution& s) {
                                   return py::array_t<double>(
                                       static_cast<py::ssize_t>(s.values.size()), s.values.data());
                               })
        .def_property_readonly("policy",
                               [](const PySolution& s) {
                                   return py::array_t<std::uint32_t>(
                                       static_cast<py::ssize_t>(s.policy.size()), s.policy.data());
                               })
        .def_readonly("report", &PySolution::report);

    py::class_<PySimulation>(m, "Simulation")
        .def_readonly("times", &PySimulation::times)
        .def_readonly("states", &PySimulation::states)
        .def_readonly("controls", &PySimulation::controls)
        .def_readonly("elements", &PySimulation::elements)
        .def_readonly("exited_crown", &PySimulation::exited_crown)
        .def_readonly("metrics", &PySimulation::metrics);

    m.def("default_config", [] { return canonical_config(default_config()); },
          "Example-1 configuration as canonical JSON");
    m.def("parse_config", [](const std::string& text) { return canonical_config(parse_config(text)); },
          py::arg("text"), "Validate a JSON config and return its canonical echo");
    m.def("solve", &solve_config, py::arg("config_json"),
          "Run the configured engine and return the solution");
    m.def("simulate", &simulate_solution, py::arg("solution"),
          py::arg("apply_drag") = std::nullopt,
          "Closed-loop run from the config's initial state; apply_drag overrides the config");
    m.def("save", &save_py, py::arg("solution"), py::arg("path"));
    m.def("load", &load_py, py::arg("path"));

    m.def("elements", &elements, py::arg("state"), py::arg("mu") = kEarthMu);
    m.def("to_cartesian", &to_cartesian, py::arg("state"));
    m.def("to_polar", &to_polar, py::arg("state"));
    m.def("circular_velocity", &circular_velocity, py::arg("rho"), py::arg("mu") = kEarthMu);
    m.def("control_set",
          [](double u_max, double angle_step_deg) {
              return control_set(u_max, angle_step_deg * kPi / 180.0);
          },
          py::arg("u_max"), py::arg("angle_step_deg") = 5.0);
    m.def("rk2_step", &rk2_step, py::arg("state"), py::arg("control"), py::arg("dt"),
          py::arg("mu") = kEarthMu);
    m.def("rk4_step", &rk4_step, py::arg("state"), py::arg("control"), py::arg("dt"),
          py::arg("mu") = kEarthMu, py::arg("drag") = std::nullopt);

    m.attr("EARTH_MU") = kEarthMu;
    m.attr("__version__") = "0.1.0";
}
