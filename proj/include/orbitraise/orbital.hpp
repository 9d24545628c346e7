// Two-body orbital element extraction from polar states, plus the
// polar/cartesian conversions used by the cost model, tests and exporters.
#pragma once

#include "orbitraise/types.hpp"

namespace orbitraise {

/**
 * Planar Keplerian elements of the osculating orbit.
 *
 * a           semi-major axis [km] (positive for bound orbits)
 * e           scalar eccentricity
 * omega       argument of perigee [rad], in [0, 2*pi)
 * theta_star  true anomaly [rad], in (-pi, pi] (pi at apogee by convention)
 * energy      specific orbital energy [km^2/s^2]
 * h           specific angular momentum [km^2/s]
 * p           semilatus rectum [km], p = a*(1 - e^2)
 */
struct OrbitalElements {
    double a = 0.0;
    double e = 0.0;
    double omega = 0.0;
    double theta_star = 0.0;
    double energy = 0.0;
    double h = 0.0;
    double p = 0.0;
};

/// Specific orbital energy E = -mu/rho + v^2/2; negative for bound orbits.
double orbital_energy(const PolarState& s, double mu = kEarthMu);

/// Specific angular momentum h = rho * v_theta.
double angular_momentum(const PolarState& s);

/// Semi-major axis a = -mu/(2E). Throws ParabolicState when |E| is below
/// tolerance and the axis is undefined.
double semi_major_axis(const PolarState& s, double mu = kEarthMu);

/// Scalar eccentricity e = sqrt(max(0, 1 + 2*E*h^2/mu^2)); the clamp absorbs
/// roundoff for near-circular states.
double eccentricity(const PolarState& s, double mu = kEarthMu);

/**
 * True anomaly theta* = atan2(e sin theta*, e cos theta*) with
 * e sin theta* = v_rho*sqrt(p/mu) and e cos theta* = p/rho - 1.
 *
 * Returned in (-pi, pi]. For v_rho = 0 the perigee side (rho < a) maps to 0
 * and the apogee side to pi; eccentricities below 1e-12 map to 0.
 * Throws DegenerateConic when p is not positive.
 */
double true_anomaly(const PolarState& s, double a, double e, double p,
                    double mu = kEarthMu);

/// Full element set with omega = theta - theta* wrapped to [0, 2*pi).
/// Propagates ParabolicState / DegenerateConic.
OrbitalElements elements(const PolarState& s, double mu = kEarthMu);

/// Speed of the circular orbit of radius rho: sqrt(mu/rho).
double circular_velocity(double rho, double mu = kEarthMu);

CartesianState to_cartesian(const PolarState& s);

/// Inverse of to_cartesian. Throws OriginSingularity at (y1, y2) = (0, 0).
PolarState to_polar(const CartesianState& c);

}  // namespace orbitraise
