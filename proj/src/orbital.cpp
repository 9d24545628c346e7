#include "orbitraise/orbital.hpp"

#include <algorithm>
#include <cmath>

namespace orbitraise {

namespace {
// Elements are reported as undefined below these scales.
constexpr double kParabolicTol = 1e-12;   // on |E| relative to mu/rho
constexpr double kDegenerateTol = 1e-9;   // on p [km]
constexpr double kCircularE = 1e-12;      // e below this: theta* := 0
}  // namespace

double orbital_energy(const PolarState& s, double mu) {
    const double v2 = s.v_rho * s.v_rho + s.v_theta * s.v_theta;
    return -mu / s.rho + 0.5 * v2;
}

double angular_momentum(const PolarState& s) { return s.rho * s.v_theta; }

double semi_major_axis(const PolarState& s, double mu) {
    const double energy = orbital_energy(s, mu);
    if (std::abs(energy) <= kParabolicTol * (mu / s.rho)) {
        throw ParabolicState("semi-major axis undefined: state is parabolic within tolerance");
    }
    return -mu / (2.0 * energy);
}

double eccentricity(const PolarState& s, double mu) {
    const double energy = orbital_energy(s, mu);
    const double h = angular_momentum(s);
    const double arg = 1.0 + 2.0 * energy * h * h / (mu * mu);
    return std::sqrt(std::max(0.0, arg));
}

double true_anomaly(const PolarState& s, double a, double e, double p, double mu) {
    if (p <= kDegenerateTol) {
        throw DegenerateConic("true anomaly undefined: semilatus rectum is not positive");
    }
    if (e < kCircularE) return 0.0;

    const double e_sin = s.v_rho * std::sqrt(p / mu);  // e*sin(theta*)
    if (e_sin == 0.0) {
        // Exactly radial-velocity-free: perigee side gives 0, apogee side pi.
        // The margin keeps near-circular states (rho - a below roundoff) on
        // the perigee convention instead of flipping on noise.
        return (s.rho < a * (1.0 + 1e-9)) ? 0.0 : kPi;
    }
    const double e_cos = p / s.rho - 1.0;  // e*cos(theta*), conic equation
    double ts = std::atan2(e_sin, e_cos);
    if (ts == -kPi) ts = kPi;
    return ts;
}

OrbitalElements elements(const PolarState& s, double mu) {
    OrbitalElements el;
    el.energy = orbital_energy(s, mu);
    el.h = angular_momentum(s);
    el.a = semi_major_axis(s, mu);
    el.e = eccentricity(s, mu);
    el.p = el.a * (1.0 - el.e * el.e);
    el.theta_star = true_anomaly(s, el.a, el.e, el.p, mu);
    el.omega = wrap_angle(s.theta - el.theta_star);
    return el;
}

double circular_velocity(double rho, double mu) { return std::sqrt(mu / rho); }

CartesianState to_cartesian(const PolarState& s) {
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    return CartesianState{
        s.rho * c,
        s.rho * sn,
        s.v_rho * c - s.v_theta * sn,
        s.v_rho * sn + s.v_theta * c,
    };
}

PolarState to_polar(const CartesianState& c) {
    const double rho = std::hypot(c.y1, c.y2);
    if (rho == 0.0) {
        throw OriginSingularity("polar state undefined at the origin");
    }
    PolarState s;
    s.rho = rho;
    s.theta = wrap_angle(std::atan2(c.y2, c.y1));
    s.v_rho = (c.y1 * c.v1 + c.y2 * c.v2) / rho;
    s.v_theta = (c.y1 * c.v2 - c.y2 * c.v1) / rho;
    return s;
}

}  // namespace orbitraise
