#include "orbitraise/dynamics.hpp"

#include <cmath>

namespace orbitraise {

Control::Control(double u_bar_, double phi_) : u_bar(u_bar_) {
    if (u_bar == 0.0) return;
    phi = wrap_angle(phi_);
    a_radial = u_bar * std::cos(phi);
    a_tangential = u_bar * std::sin(phi);
}

std::vector<Control> control_set(double u_max, double angle_step) {
    if (!(angle_step > 0.0)) {
        throw InvalidStep("control tabulation step must be positive");
    }
    const double count = kTwoPi / angle_step;
    const auto n = static_cast<long>(std::llround(count));
    if (n < 1 || std::abs(count - static_cast<double>(n)) > 1e-9 * count) {
        throw InvalidStep("control tabulation step must divide 2*pi");
    }
    std::vector<Control> controls;
    controls.reserve(static_cast<std::size_t>(n) + 1);
    controls.push_back(Control::off());
    for (long k = 0; k < n; ++k) {
        controls.push_back(Control::thrust(u_max, static_cast<double>(k) * angle_step));
    }
    return controls;
}

StateDerivative polar_rhs(const PolarState& s, const Control& c,
                          const std::optional<DragParams>& drag, double mu) {
    if (s.rho <= 0.0) {
        throw OriginSingularity("polar dynamics undefined for rho <= 0");
    }
    StateDerivative d;
    d.d_rho = s.v_rho;
    d.d_v_rho = s.v_theta * s.v_theta / s.rho - mu / (s.rho * s.rho) + c.a_radial;
    d.d_theta = s.v_theta / s.rho;
    d.d_v_theta = -s.v_rho * s.v_theta / s.rho + c.a_tangential;
    if (drag) {
        const double coeff = drag->accel_coeff();
        d.d_v_rho -= coeff * s.v_rho * std::abs(s.v_rho);
        d.d_v_theta -= coeff * s.v_theta * std::abs(s.v_theta);
    }
    return d;
}

namespace {

inline PolarState advanced(const PolarState& s, const StateDerivative& d, double dt) {
    return PolarState{
        s.rho + dt * d.d_rho,
        s.theta + dt * d.d_theta,
        s.v_rho + dt * d.d_v_rho,
        s.v_theta + dt * d.d_v_theta,
    };
}

}  // namespace

PolarState rk2_step(const PolarState& s, const Control& c, double dt, double mu) {
    const StateDerivative k1 = polar_rhs(s, c, std::nullopt, mu);
    const StateDerivative k2 = polar_rhs(advanced(s, k1, dt), c, std::nullopt, mu);
    PolarState out{
        s.rho + 0.5 * dt * (k1.d_rho + k2.d_rho),
        s.theta + 0.5 * dt * (k1.d_theta + k2.d_theta),
        s.v_rho + 0.5 * dt * (k1.d_v_rho + k2.d_v_rho),
        s.v_theta + 0.5 * dt * (k1.d_v_theta + k2.d_v_theta),
    };
    out.theta = wrap_angle(out.theta);
    return out;
}

PolarState rk4_step(const PolarState& s, const Control& c, double dt, double mu,
                    const std::optional<DragParams>& drag) {
    const StateDerivative k1 = polar_rhs(s, c, drag, mu);
    const StateDerivative k2 = polar_rhs(advanced(s, k1, 0.5 * dt), c, drag, mu);
    const StateDerivative k3 = polar_rhs(advanced(s, k2, 0.5 * dt), c, drag, mu);
    const StateDerivative k4 = polar_rhs(advanced(s, k3, dt), c, drag, mu);
    const double w = dt / 6.0;
    PolarState out{
        s.rho + w * (k1.d_rho + 2.0 * k2.d_rho + 2.0 * k3.d_rho + k4.d_rho),
        s.theta + w * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta),
        s.v_rho + w * (k1.d_v_rho + 2.0 * k2.d_v_rho + 2.0 * k3.d_v_rho + k4.d_v_rho),
        s.v_theta + w * (k1.d_v_theta + 2.0 * k2.d_v_theta + 2.0 * k3.d_v_theta + k4.d_v_theta),
    };
    out.theta = wrap_angle(out.theta);
    return out;
}

}  // namespace orbitraise
