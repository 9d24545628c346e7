#include "orbitraise/csv.hpp"

#include <cstdio>
#include <fstream>

namespace orbitraise {

void export_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    if (traj.times.empty()) throw Error("trajectory export needs at least one sample");

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "t,rho,theta,v_rho,v_theta,u_bar,phi,a,e,omega\n";

    char line[512];
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const PolarState& s = traj.states[i];
        const Control& c = traj.controls[i];
        const OrbitalElements& el = traj.elements[i];
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      traj.times[i], s.rho, s.theta, s.v_rho, s.v_theta, c.u_bar, c.phi,
                      el.a, el.e, el.omega);
        out << line;
    }
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace orbitraise
