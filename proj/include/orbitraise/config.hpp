// Problem configuration: parsing, validation, defaults (the Example-1
// scenario) and the canonical echo embedded in solution archives.
#pragma once

#include <cstdint>
#include <string>

#include "orbitraise/feedback.hpp"
#include "orbitraise/grid.hpp"
#include "orbitraise/hjb.hpp"

namespace orbitraise {

enum class Engine { policy_iteration, value_iteration };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& name);

struct GridSpec {
    double rho_min = 6930.0;
    double rho_max = 7070.0;
    int n_rho = 110;
    int n_theta = 30;  // theta always spans [0, 2*pi), periodic
    double v_rho_min = -0.01;
    double v_rho_max = 0.01;
    int n_v_rho = 30;
    double v_theta_min = 7.526;
    double v_theta_max = 7.566;
    int n_v_theta = 30;

    std::int64_t size() const {
        return static_cast<std::int64_t>(n_rho) * n_theta * n_v_rho * n_v_theta;
    }
    CrownGrid build() const;
};

struct PlantSettings {
    double step = 1.0;     // plant integrator substep [s]
    double tau = 10.0;     // feedback update interval [s]
    double horizon = 8e5;  // [s]
    bool apply_drag = false;
};

/**
 * Full problem description. Every default reproduces the Example-1 setup, so
 * an empty config document solves and simulates that scenario; the drag
 * block defaults to the Example-2 parameters and is applied to the plant
 * only on request.
 *
 * Units are km/s/kg throughout except the drag inputs (m^2, kg/m^3), which
 * convert internally. The tabulation step is carried in degrees exactly as
 * configured; the radian value used by the solver is derived in
 * make_solver() so a config echo round-trips bit-exactly.
 */
struct ProblemConfig {
    double mu = kEarthMu;
    Engine engine = Engine::policy_iteration;
    GridSpec grid;
    TargetOrbit target{7000.0, 0.001, 0.0};
    CostWeights weights{2.04e-8, 2.31e-2, 1.5, 1e-3};
    double u_max = 5e-7;          // [km/s^2]
    double angle_step_deg = 5.0;  // control tabulation step [deg]
    double dt = 10.0;             // scheme pseudo-time step [s]
    double tol = 1e-7;
    int max_iters = 20000;
    double penalty = 0.0;  // 0: derived (see SolverConfig)
    bool refine = false;
    double linear_tol = 1e-9;
    int max_linear_restarts = 4;
    PlantSettings plant;
    DragParams drag{2.2, 2.25, 350.0, 8.09e-14};
    PolarState initial{6978.0, 0.0, 0.0, 0.0};  // v_theta resolved to circular
    double band = 1.0;  // target band half-width on |a - a_bar| [km]

    CrownGrid make_grid() const { return grid.build(); }
    HjbProblem make_problem() const { return HjbProblem{mu, u_max, target, weights}; }
    SolverConfig make_solver() const;
    /// Plant for the closed loop; apply_drag overrides the config switch.
    PlantConfig make_plant(std::optional<bool> apply_drag = std::nullopt) const;
};

/// Example-1 configuration with the initial state resolved.
ProblemConfig default_config();

/// Parse and validate a JSON config document. Unknown keys, type mismatches
/// and cross-field violations throw ConfigError with the field path.
ProblemConfig parse_config(const std::string& text);

/// Canonical JSON echo: fixed structure, sorted keys, shortest round-trip
/// numbers. parse_config(canonical_config(c)) reproduces c bit-exactly.
std::string canonical_config(const ProblemConfig& cfg);

}  // namespace orbitraise
