// Test-only oracles, independent of the library's element-extraction path:
// cartesian vector-based element recovery, Kepler-geometry state synthesis,
// and a fine reference integrator for Richardson tests.
#pragma once

#include <cmath>
#include <random>

#include "orbitraise/dynamics.hpp"
#include "orbitraise/orbital.hpp"

namespace oracle {

using orbitraise::CartesianState;
using orbitraise::PolarState;

struct Elements {
    double a, e, omega, theta_star, energy, h, p;
};

/// Element recovery from cartesian position/velocity vectors via the
/// eccentricity vector e = ((v^2 - mu/r) r - (r.v) v) / mu; the true anomaly
/// comes from the position angle relative to the eccentricity vector.
inline Elements elements_from_cartesian(const CartesianState& c, double mu) {
    const double r = std::hypot(c.y1, c.y2);
    const double v2 = c.v1 * c.v1 + c.v2 * c.v2;
    const double rv = c.y1 * c.v1 + c.y2 * c.v2;
    const double hz = c.y1 * c.v2 - c.y2 * c.v1;

    Elements el{};
    el.energy = 0.5 * v2 - mu / r;
    el.h = hz;
    el.a = -mu / (2.0 * el.energy);
    const double ex = ((v2 - mu / r) * c.y1 - rv * c.v1) / mu;
    const double ey = ((v2 - mu / r) * c.y2 - rv * c.v2) / mu;
    el.e = std::hypot(ex, ey);
    el.p = hz * hz / mu;
    el.omega = orbitraise::wrap_angle(std::atan2(ey, ex));
    el.theta_star = orbitraise::wrap_symmetric(std::atan2(c.y2, c.y1) - el.omega);
    return el;
}

inline Elements elements_from_polar(const PolarState& s, double mu) {
    return elements_from_cartesian(orbitraise::to_cartesian(s), mu);
}

/// Polar state on the orbit (a, e, omega) at true anomaly theta_star, from
/// conic geometry: rho = p/(1 + e cos v), v_rho = sqrt(mu/p) e sin v,
/// v_theta = sqrt(mu/p) (1 + e cos v).
inline PolarState state_from_elements(double a, double e, double omega, double theta_star,
                                      double mu) {
    const double p = a * (1.0 - e * e);
    const double k = std::sqrt(mu / p);
    const double cv = std::cos(theta_star);
    PolarState s;
    s.rho = p / (1.0 + e * cv);
    s.theta = orbitraise::wrap_angle(omega + theta_star);
    s.v_rho = k * e * std::sin(theta_star);
    s.v_theta = k * (1.0 + e * cv);
    return s;
}

/// Reference propagation over dt with n fine RK4 substeps.
inline PolarState reference_step(const PolarState& s, const orbitraise::Control& c,
                                 double dt, int n, double mu) {
    PolarState out = s;
    for (int i = 0; i < n; ++i) out = orbitraise::rk4_step(out, c, dt / n, mu);
    return out;
}

/// Uniform random state inside the Example-1 crown.
template <typename Rng>
PolarState random_crown_state(Rng& rng) {
    std::uniform_real_distribution<double> rho(6930.0, 7070.0);
    std::uniform_real_distribution<double> theta(0.0, orbitraise::kTwoPi);
    std::uniform_real_distribution<double> v_rho(-0.01, 0.01);
    std::uniform_real_distribution<double> v_theta(7.526, 7.566);
    return PolarState{rho(rng), theta(rng), v_rho(rng), v_theta(rng)};
}

}  // namespace oracle
