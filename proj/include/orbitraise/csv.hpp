// Trajectory export: one CSV row per control interval.
#pragma once

#include <filesystem>

#include "orbitraise/feedback.hpp"

namespace orbitraise {

/// Writes `t,rho,theta,v_rho,v_theta,u_bar,phi,a,e,omega` with 17
/// significant digits per value (round-trip exact for doubles).
/// Throws IoError with path context on filesystem failures.
void export_trajectory(const Trajectory& traj, const std::filesystem::path& path);

}  // namespace orbitraise
