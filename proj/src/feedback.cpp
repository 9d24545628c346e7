#include "orbitraise/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitraise {

FeedbackDecision feedback(const BellmanOperator& op, std::span<const double> values,
                          const PolarState& s, double tau) {
    if (!op.grid().contains(s)) {
        return FeedbackDecision{Control::off(), false};
    }
    const double cost = op.state_cost(s);
    const double disc = std::exp(-op.problem().weights.lambda * tau);
    const auto& controls = op.controls();

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < controls.size(); ++k) {
        const double val = op.rhs_at(s, cost, values, controls[k], tau, disc);
        if (val < best) {
            best = val;
            best_k = k;
        }
    }
    Control pick = controls[best_k];
    if (op.config().refine && !pick.is_null()) {
        const double u_max = op.problem().u_max;
        const auto value_of = [&](double phi) {
            return op.rhs_at(s, cost, values, Control::thrust(u_max, phi), tau, disc);
        };
        const double step = op.config().angle_step;
        const double phi_star =
            golden_section_minimize(value_of, pick.phi - step, pick.phi + step, 1e-6);
        if (value_of(phi_star) < best) pick = Control::thrust(u_max, phi_star);
    }
    return FeedbackDecision{pick, true};
}

Trajectory simulate(const BellmanOperator& op, std::span<const double> values,
                    const PolarState& start, const PlantConfig& plant) {
    if (!(plant.step > 0.0) || plant.step > plant.tau) {
        throw Error("plant integrator step must satisfy 0 < step <= tau");
    }
    if (plant.horizon < plant.tau) {
        throw Error("plant horizon must cover at least one control interval");
    }
    const double mu = op.problem().mu;
    const auto n_intervals = static_cast<std::int64_t>(plant.horizon / plant.tau + 1e-9);
    const auto n_sub = std::max<std::int64_t>(1, std::llround(plant.tau / plant.step));
    const double dt_sub = plant.tau / static_cast<double>(n_sub);

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n_intervals) + 1);
    PolarState s = start;
    for (std::int64_t i = 0; i < n_intervals; ++i) {
        const double t = static_cast<double>(i) * plant.tau;
        const FeedbackDecision fd = feedback(op, values, s, plant.tau);
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.controls.push_back(fd.control);
        traj.elements.push_back(elements(s, mu));
        if (!fd.in_crown) {
            traj.exited_crown = true;
            return traj;
        }
        for (std::int64_t k = 0; k < n_sub; ++k) {
            s = rk4_step(s, fd.control, dt_sub, mu, plant.drag);
        }
    }
    traj.times.push_back(static_cast<double>(n_intervals) * plant.tau);
    traj.states.push_back(s);
    traj.controls.push_back(traj.controls.empty() ? Control::off() : traj.controls.back());
    traj.elements.push_back(elements(s, mu));
    return traj;
}

TransferMetrics transfer_metrics(const Trajectory& traj, const TargetOrbit& target,
                                 double band, double mu) {
    const std::size_t n = traj.times.size();
    if (n == 0) throw Error("transfer metrics need a nonempty trajectory");

    TransferMetrics m;
    const double period = kTwoPi * std::sqrt(target.a_bar * target.a_bar * target.a_bar / mu);

    // Band entry: first in-band run lasting at least one orbital period.
    std::size_t i = 0;
    while (i < n && !m.band_entry_time) {
        if (std::abs(traj.elements[i].a - target.a_bar) < band) {
            std::size_t j = i;
            while (j + 1 < n &&
                   std::abs(traj.elements[j + 1].a - target.a_bar) < band) {
                ++j;
            }
            if (traj.times[j] - traj.times[i] >= period) {
                m.band_entry_time = traj.times[i];
            }
            i = j + 1;
        } else {
            ++i;
        }
    }

    // Switch-off: start of the final maximal all-null suffix.
    std::size_t suffix = n;
    while (suffix > 0 && traj.controls[suffix - 1].is_null()) --suffix;
    if (suffix < n) m.switch_off_time = traj.times[suffix];

    for (std::size_t k = 0; k + 1 < n; ++k) {
        m.fuel_used += traj.controls[k].u_bar * (traj.times[k + 1] - traj.times[k]);
    }

    // Reactivations after the first sustained switch-off.
    std::optional<double> sustained_off;
    for (std::size_t k = 0; k < n && !sustained_off;) {
        if (traj.controls[k].is_null()) {
            std::size_t j = k;
            while (j + 1 < n && traj.controls[j + 1].is_null()) ++j;
            if (j + 1 == n || traj.times[j] - traj.times[k] >= period) {
                sustained_off = traj.times[k];
            }
            k = j + 1;
        } else {
            ++k;
        }
    }
    if (sustained_off) {
        for (std::size_t k = 1; k < n; ++k) {
            if (traj.controls[k - 1].is_null() && !traj.controls[k].is_null() &&
                traj.times[k] > *sustained_off) {
                ++m.reactivations;
            }
        }
    }

    const PolarState& last = traj.states.back();
    const double p_bar = target.a_bar * (1.0 - target.e_bar * target.e_bar);
    const double rho_target =
        p_bar / (1.0 + target.e_bar * std::cos(last.theta - target.omega_bar));
    m.final_radius_error = std::abs(last.rho - rho_target);
    return m;
}

}  // namespace orbitraise
