// Semi-Lagrangian Bellman operator for the orbit-raising running cost, and
// the two fixed-point engines: value iteration and policy iteration with
// sparse policy evaluation and warm-started improvement.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "orbitraise/dynamics.hpp"
#include "orbitraise/grid.hpp"
#include "orbitraise/orbital.hpp"
#include "orbitraise/types.hpp"

namespace orbitraise {

/// Operative orbit the running cost steers towards.
struct TargetOrbit {
    double a_bar = 0.0;      // semi-major axis [km]
    double e_bar = 0.0;      // eccentricity
    double omega_bar = 0.0;  // argument of perigee [rad]
};

/// Running-cost weights and the discount factor:
///   l = alpha*u + beta*(a - a_bar)^2
///     + gamma*((e cos w - e_bar cos w_bar)^2 + (e sin w - e_bar sin w_bar)^2)
struct CostWeights {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;  // discount rate [1/s]
};

struct SolverConfig {
    double dt = 10.0;         // pseudo-time step [s]
    double tol = 1e-7;        // sup-norm stopping tolerance
    int max_iters = 20000;
    double penalty = 0.0;     // out-of-crown stopping cost M; <= 0 derives it
                              // as 10 * dt * l_max / (1 - e^{-lambda dt})
    double angle_step = 5.0 * kPi / 180.0;
    bool refine = false;      // golden-section refinement of feedback angles
    double linear_tol = 1e-9; // policy-evaluation residual target (sup-norm,
                              // relative to the right-hand side)
    int max_linear_restarts = 4;
};

struct HjbProblem {
    double mu = kEarthMu;
    double u_max = 0.0;  // thrust acceleration T/m [km/s^2]
    TargetOrbit target;
    CostWeights weights;
};

/// Running cost at a state. States whose elements cannot be computed map to
/// degenerate_cost instead of faulting.
double running_cost(const PolarState& s, const Control& c, const TargetOrbit& target,
                    const CostWeights& weights, double mu = kEarthMu,
                    double degenerate_cost = std::numeric_limits<double>::infinity());

/**
 * One-step Bellman machinery bound to a grid, problem and configuration.
 *
 * The per-node state cost (the beta/gamma terms, control-independent) is
 * tabulated at construction; nodes whose elements fail get the maximum valid
 * cost so the operator stays total. The out-of-crown penalty M is resolved
 * here as well.
 */
class BellmanOperator {
public:
    BellmanOperator(CrownGrid grid, HjbProblem problem, SolverConfig config);

    const CrownGrid& grid() const { return grid_; }
    const HjbProblem& problem() const { return problem_; }
    const SolverConfig& config() const { return config_; }
    const std::vector<Control>& controls() const { return controls_; }

    double discount() const { return discount_; }  // e^{-lambda dt}
    double penalty() const { return penalty_; }

    /// beta/gamma mismatch cost at an arbitrary state (degenerate states map
    /// to the tabulated maximum).
    double state_cost(const PolarState& s) const;
    double node_cost(std::int64_t j) const { return node_cost_[static_cast<std::size_t>(j)]; }

    /// Landing point x + step*Phi(x, c) of the one-step trajectory map.
    PolarState landing(const PolarState& x, const Control& c, double step) const {
        return rk2_step(x, c, step, problem_.mu);
    }

    /// dt*l(x_j, c) + e^{-lambda dt} * I[field](landing), with penalty M for
    /// landings that leave the crown.
    double rhs(std::int64_t j, std::span<const double> field, const Control& c) const;

    /// Same one-step value at an arbitrary state and step (the feedback uses
    /// step = tau); state_cost is passed in so callers can hoist it.
    double rhs_at(const PolarState& x, double state_cost, std::span<const double> field,
                  const Control& c, double step, double step_discount) const;

    /// Exhaustive minimization of rhs over the tabulation. Ties break to the
    /// lowest control index, so coasting wins them.
    std::pair<double, std::uint32_t> update(std::int64_t j, std::span<const double> field) const;

private:
    CrownGrid grid_;
    HjbProblem problem_;
    SolverConfig config_;
    std::vector<Control> controls_;
    std::vector<double> node_cost_;
    double discount_ = 0.0;
    double penalty_ = 0.0;
    double degenerate_cost_ = 0.0;
};

struct SolveResult {
    std::vector<double> values;
    std::vector<std::uint32_t> policy;
    int iterations = 0;      // sweeps (VI) or outer iterations (PI)
    double residual = 0.0;   // last sup-norm value change
    bool converged = false;  // false: max_iters exhausted, partial result
    double wall_seconds = 0.0;
};

/**
 * Fixed-point sweeps of the Bellman operator (Jacobi form). Stops when the
 * contraction error bound, update * c/(1-c) with c = e^{-lambda dt}, drops
 * below tol, so tol measures distance to the fixed point.
 */
SolveResult value_iteration(const BellmanOperator& op,
                            const std::vector<double>* warm_start = nullptr);

/// Policy iteration: exact sparse evaluation alternating with warm-started
/// improvement. Stops on an unchanged policy or a value change below tol.
SolveResult policy_iteration(const BellmanOperator& op,
                             const std::vector<double>* warm_start = nullptr);

/// Policy-evaluation linear system (I - e^{-lambda dt} P_f) v = dt*l_f.
/// Rows whose landing leaves the crown become identity rows with the
/// discounted penalty absorbed into the right-hand side.
struct EvaluationSystem {
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
    Eigen::VectorXd rhs;
};

EvaluationSystem assemble_evaluation(const BellmanOperator& op,
                                     std::span<const std::uint32_t> policy);

/// GMRES solve of an evaluation system, warm-started from guess. The
/// tolerance is tightened and the solve restarted until the sup-norm
/// residual meets linear_tol * ||rhs||_inf; past max_restarts attempts it
/// throws LinearSolveStagnation.
Eigen::VectorXd solve_evaluation(const EvaluationSystem& system, const Eigen::VectorXd& guess,
                                 double linear_tol, int max_restarts = 4);

struct ImprovementResult {
    std::vector<std::uint32_t> policy;
    std::int64_t changed = 0;
};

/**
 * Policy improvement. With exhaustive set (mandatory on the first outer
 * iteration) every node scans the whole tabulation; otherwise each node
 * walks the 72-angle cycle downhill from its previous control and checks the
 * null control against the walk's end point.
 */
ImprovementResult improve_policy(const BellmanOperator& op, std::span<const double> field,
                                 std::span<const std::uint32_t> prev_policy, bool exhaustive);

/// Golden-section refinement of a full-thrust tabulation minimizer over the
/// +-1-step angle bracket. Returns the refined control only when it strictly
/// lowers the one-step value; null controls are returned unchanged.
Control refine_control(const BellmanOperator& op, std::int64_t j,
                       std::span<const double> field, const Control& coarse);

/// Minimize f over [lo, hi] to within xtol; returns the abscissa.
double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double xtol);

/// Downhill walk to a local minimizer of f over the cyclic graph {0..n-1},
/// starting from start. Moves only on strict decrease.
int cycle_walk_minimize(const std::function<double(int)>& f, int n, int start);

}  // namespace orbitraise
