// Core state types, physical constants and error types shared by all modules.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace orbitraise {

/// Earth gravitational parameter [km^3/s^2].
inline constexpr double kEarthMu = 398600.4;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kPi = std::numbers::pi;

/// Wrap an angle to [0, 2*pi). Exact identity for inputs already in range.
inline double wrap_angle(double x) {
    if (x >= 0.0 && x < kTwoPi) return x;
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod can round up to the period for inputs just below a multiple of it
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Wrap an angle difference to (-pi, pi].
inline double wrap_symmetric(double x) {
    double r = wrap_angle(x);
    return (r > kPi) ? r - kTwoPi : r;
}

/**
 * Satellite state in the rotating polar frame.
 *
 * rho     radius [km], > 0
 * theta   polar angle [rad], kept in [0, 2*pi)
 * v_rho   radial velocity [km/s]
 * v_theta tangential velocity [km/s]
 */
struct PolarState {
    double rho = 0.0;
    double theta = 0.0;
    double v_rho = 0.0;
    double v_theta = 0.0;
};

/// Planar cartesian state: position (y1, y2) [km], velocity (v1, v2) [km/s].
struct CartesianState {
    double y1 = 0.0;
    double y2 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Radius reached zero: the dynamics blow up at the origin.
struct OriginSingularity : Error {
    using Error::Error;
};

/// Specific orbital energy too close to zero: semi-major axis undefined.
struct ParabolicState : Error {
    using Error::Error;
};

/// Semilatus rectum too close to zero: conic elements undefined.
struct DegenerateConic : Error {
    using Error::Error;
};

/// Control tabulation step does not divide the full circle.
struct InvalidStep : Error {
    using Error::Error;
};

struct InvalidBounds : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

/// Policy-evaluation linear solve failed to meet its residual target.
struct LinearSolveStagnation : Error {
    using Error::Error;
};

/// Configuration schema or cross-field violation; carries the field path.
struct ConfigError : Error {
    explicit ConfigError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_path(field) {}
    std::string field_path;
};

/// Archive parsing / validation failure.
struct ArchiveError : Error {
    using Error::Error;
};

/// Filesystem failure, with path context in the message.
struct IoError : Error {
    using Error::Error;
};

}  // namespace orbitraise
