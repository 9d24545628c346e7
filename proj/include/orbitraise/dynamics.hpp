// Controlled polar dynamics with optional aerodynamic drag, the bang-off
// thrust tabulation, and the RK integrators used by the scheme and the plant.
#pragma once

#include <optional>
#include <vector>

#include "orbitraise/types.hpp"

namespace orbitraise {

/**
 * Thrust command. The engine is bang-off: u_bar is either 0 or the maximum
 * thrust acceleration T/m, and phi is the orientation measured from the
 * outward radius. The null control normalizes phi to 0.
 */
struct Control {
    Control() = default;
    Control(double u_bar_, double phi_);

    static Control off() { return Control{}; }
    static Control thrust(double u_max, double phi) { return Control(u_max, phi); }

    bool is_null() const { return u_bar == 0.0; }

    double u_bar = 0.0;  // thrust acceleration magnitude [km/s^2]
    double phi = 0.0;    // orientation w.r.t. the radius [rad], in [0, 2*pi)

    // cached thrust components: radial u_bar*cos(phi), tangential u_bar*sin(phi)
    double a_radial = 0.0;
    double a_tangential = 0.0;
};

/**
 * Constant-density drag model applied to the plant.
 * The acceleration coefficient C = c_d*s_area*rho_d/(2*mass) is carried in
 * 1/km (factor 1e3 from 1/m), so C*v^2 with v in km/s gives km/s^2.
 */
struct DragParams {
    double c_d = 0.0;      // drag coefficient
    double s_area = 0.0;   // reference area [m^2]
    double mass = 0.0;     // satellite mass [kg]
    double rho_d = 0.0;    // atmospheric density [kg/m^3]

    double accel_coeff() const { return 1e3 * c_d * s_area * rho_d / (2.0 * mass); }
};

struct StateDerivative {
    double d_rho = 0.0;      // [km/s]
    double d_v_rho = 0.0;    // [km/s^2]
    double d_theta = 0.0;    // [rad/s]
    double d_v_theta = 0.0;  // [km/s^2]
};

/**
 * Thrust tabulation: 2*pi/angle_step full-thrust orientations plus the null
 * control, which is always element 0 so that index order breaks ties in
 * favour of coasting. The default 5 degree step gives 73 controls.
 * Throws InvalidStep when angle_step does not divide 2*pi.
 */
std::vector<Control> control_set(double u_max, double angle_step);

/**
 * Right-hand side of the controlled polar system:
 *   rho'     = v_rho
 *   v_rho'   = v_theta^2/rho - mu/rho^2 + u_bar*cos(phi)
 *   theta'   = v_theta/rho
 *   v_theta' = -v_rho*v_theta/rho + u_bar*sin(phi)
 * Drag, when supplied, adds -C*v_i*|v_i| per velocity component so it always
 * opposes motion. Throws OriginSingularity for rho <= 0.
 */
StateDerivative polar_rhs(const PolarState& s, const Control& c,
                          const std::optional<DragParams>& drag = std::nullopt,
                          double mu = kEarthMu);

/// One Heun (explicit trapezoid) step with the control held constant.
/// theta is wrapped to [0, 2*pi) after the step.
PolarState rk2_step(const PolarState& s, const Control& c, double dt,
                    double mu = kEarthMu);

/// One classical fourth-order Runge-Kutta step; used by the plant.
PolarState rk4_step(const PolarState& s, const Control& c, double dt,
                    double mu = kEarthMu,
                    const std::optional<DragParams>& drag = std::nullopt);

}  // namespace orbitraise
