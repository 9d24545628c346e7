// Static feedback from a converged value function and closed-loop
// orbit-raising simulation against an RK4 plant that may carry drag the
// value function never saw.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "orbitraise/hjb.hpp"

namespace orbitraise {

struct PlantConfig {
    double step = 1.0;                 // plant integrator substep [s]
    double tau = 10.0;                 // feedback update interval [s]
    double horizon = 8e5;              // simulated time [s]
    std::optional<DragParams> drag;    // plant-side perturbation only
};

/**
 * Closed-loop record: one sample per zero-order-hold control interval (taken
 * at the interval start) plus a terminal sample at the horizon. Times are
 * strictly increasing; exited_crown marks runs truncated by a crown exit.
 */
struct Trajectory {
    std::vector<double> times;
    std::vector<PolarState> states;
    std::vector<Control> controls;
    std::vector<OrbitalElements> elements;
    bool exited_crown = false;
};

/**
 * Transfer summary.
 *
 * band_entry_time    first sample time from which |a - a_bar| < band holds
 *                    for at least one target orbital period (absent when the
 *                    band is never reached)
 * switch_off_time    start of the final maximal all-null control suffix
 *                    (absent when the run ends thrusting)
 * final_radius_error |rho - rho_target(theta)| at the last sample, against
 *                    the target-orbit conic radius [km]
 * fuel_used          integral of u_bar dt over the run [km/s]
 * reactivations      off->on transitions after the first sustained
 *                    switch-off (the first null run lasting one target
 *                    period, or reaching the end of the run)
 */
struct TransferMetrics {
    std::optional<double> band_entry_time;
    std::optional<double> switch_off_time;
    double final_radius_error = 0.0;
    double fuel_used = 0.0;
    int reactivations = 0;
};

struct FeedbackDecision {
    Control control;
    bool in_crown = true;  // false: state outside the crown, control is null
};

/**
 * Static feedback at a state: exhaustive argmin over the tabulation of
 * tau*l(s,f) + e^{-lambda tau} I[V](s + tau*Phi(s,f)), optionally refined by
 * a golden-section search when the operator's config asks for it.
 */
FeedbackDecision feedback(const BellmanOperator& op, std::span<const double> values,
                          const PolarState& s, double tau);

/// Zero-order-hold closed loop: the feedback is refreshed every tau and the
/// plant advanced with RK4 substeps (with the plant's drag, if any). Crown
/// exit truncates the run and sets the flag.
Trajectory simulate(const BellmanOperator& op, std::span<const double> values,
                    const PolarState& start, const PlantConfig& plant);

TransferMetrics transfer_metrics(const Trajectory& traj, const TargetOrbit& target,
                                 double band, double mu = kEarthMu);

}  // namespace orbitraise
