#include "orbitraise/hjb.hpp"

#include <unsupported/Eigen/IterativeSolvers>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

namespace orbitraise {

namespace {

using SparseRowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Streamed landing stencils are cheap to recompute; a flat cache pays off
// only for the sweep-heavy value iteration on small grids.
constexpr std::int64_t kArcCacheLimit = 2'000'000;

std::optional<double> mismatch_cost(const PolarState& s, const TargetOrbit& target,
                                    const CostWeights& w, double mu) {
    OrbitalElements el;
    try {
        el = elements(s, mu);
    } catch (const Error&) {
        return std::nullopt;
    }
    const double da = el.a - target.a_bar;
    const double ex = el.e * std::cos(el.omega) - target.e_bar * std::cos(target.omega_bar);
    const double ey = el.e * std::sin(el.omega) - target.e_bar * std::sin(target.omega_bar);
    return w.beta * da * da + w.gamma * (ex * ex + ey * ey);
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double running_cost(const PolarState& s, const Control& c, const TargetOrbit& target,
                    const CostWeights& weights, double mu, double degenerate_cost) {
    const auto mc = mismatch_cost(s, target, weights, mu);
    if (!mc) return degenerate_cost;
    return weights.alpha * c.u_bar + *mc;
}

BellmanOperator::BellmanOperator(CrownGrid grid, HjbProblem problem, SolverConfig config)
    : grid_(std::move(grid)),
      problem_(problem),
      config_(config),
      controls_(control_set(problem.u_max, config.angle_step)) {
    if (!(config_.dt > 0.0)) throw Error("solver dt must be positive");
    if (!(config_.tol > 0.0)) throw Error("solver tol must be positive");
    if (!(problem_.weights.lambda > 0.0)) throw Error("discount rate lambda must be positive");
    discount_ = std::exp(-problem_.weights.lambda * config_.dt);
    if (!(discount_ < 1.0)) throw Error("e^{-lambda dt} must be below 1");

    const std::int64_t n = grid_.size();
    node_cost_.resize(static_cast<std::size_t>(n));
    double max_valid = 0.0;
    bool any_valid = false;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : max_valid) reduction(|| : any_valid)
#endif
    for (std::int64_t j = 0; j < n; ++j) {
        const auto mc = mismatch_cost(grid_.node_state(j), problem_.target,
                                      problem_.weights, problem_.mu);
        if (mc) {
            node_cost_[static_cast<std::size_t>(j)] = *mc;
            max_valid = std::max(max_valid, *mc);
            any_valid = true;
        } else {
            node_cost_[static_cast<std::size_t>(j)] =
                std::numeric_limits<double>::quiet_NaN();
        }
    }
    degenerate_cost_ = any_valid ? max_valid : 1.0;
    for (double& c : node_cost_) {
        if (std::isnan(c)) c = degenerate_cost_;
    }

    const double l_max = degenerate_cost_ + problem_.weights.alpha * problem_.u_max;
    penalty_ = (config_.penalty > 0.0)
                   ? config_.penalty
                   : 10.0 * config_.dt * l_max / (1.0 - discount_);
}

double BellmanOperator::state_cost(const PolarState& s) const {
    const auto mc = mismatch_cost(s, problem_.target, problem_.weights, problem_.mu);
    return mc ? *mc : degenerate_cost_;
}

double BellmanOperator::rhs_at(const PolarState& x, double state_cost,
                               std::span<const double> field, const Control& c,
                               double step, double step_discount) const {
    const PolarState land = rk2_step(x, c, step, problem_.mu);
    const double l = state_cost + problem_.weights.alpha * c.u_bar;
    return step * l + step_discount * grid_.interpolate(field, land, penalty_);
}

double BellmanOperator::rhs(std::int64_t j, std::span<const double> field,
                            const Control& c) const {
    return rhs_at(grid_.node_state(j), node_cost(j), field, c, config_.dt, discount_);
}

std::pair<double, std::uint32_t> BellmanOperator::update(
    std::int64_t j, std::span<const double> field) const {
    const PolarState x = grid_.node_state(j);
    const double cost = node_cost(j);
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_k = 0;
    for (std::size_t k = 0; k < controls_.size(); ++k) {
        const double val = rhs_at(x, cost, field, controls_[k], config_.dt, discount_);
        if (val < best) {
            best = val;
            best_k = static_cast<std::uint32_t>(k);
        }
    }
    return {best, best_k};
}

// ---------------------------------------------------------------------------
// Value iteration
// ---------------------------------------------------------------------------

namespace {

struct LandingArc {
    std::array<std::uint32_t, 16> nodes;
    std::array<double, 16> weights;
    bool in_domain = false;
};

}  // namespace

SolveResult value_iteration(const BellmanOperator& op, const std::vector<double>* warm_start) {
    const auto t0 = std::chrono::steady_clock::now();
    const CrownGrid& grid = op.grid();
    const auto& controls = op.controls();
    const std::int64_t n = grid.size();
    const auto k_controls = static_cast<std::int64_t>(controls.size());
    const SolverConfig& cfg = op.config();
    const double disc = op.discount();
    const double penalty = op.penalty();
    const double alpha = op.problem().weights.alpha;

    SolveResult res;
    res.values = warm_start ? *warm_start : std::vector<double>(static_cast<std::size_t>(n), 0.0);
    if (static_cast<std::int64_t>(res.values.size()) != n) {
        throw Error("warm start length does not match the grid");
    }
    res.policy.assign(static_cast<std::size_t>(n), 0);
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);

    // The raw sup-norm update understates the distance to the fixed point by
    // the factor (1-c)/c; stop on the contraction error bound instead so tol
    // measures actual convergence.
    const double change_target = cfg.tol * (1.0 - disc) / disc;

    std::vector<LandingArc> arcs;
    const bool cached = n * k_controls <= kArcCacheLimit;
    if (cached) {
        arcs.resize(static_cast<std::size_t>(n * k_controls));
#ifdef _OPENMP
#pragma omp parallel for
#endif
        for (std::int64_t j = 0; j < n; ++j) {
            const PolarState x = grid.node_state(j);
            for (std::int64_t k = 0; k < k_controls; ++k) {
                LandingArc& arc = arcs[static_cast<std::size_t>(j * k_controls + k)];
                const auto st = grid.stencil(
                    op.landing(x, controls[static_cast<std::size_t>(k)], cfg.dt));
                if (st) {
                    arc.nodes = st->nodes;
                    arc.weights = st->weights;
                    arc.in_domain = true;
                }
            }
        }
    }

    double change = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    while (sweeps < cfg.max_iters) {
        ++sweeps;
        change = 0.0;
        const std::span<const double> field(res.values);
        if (cached) {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : change)
#endif
            for (std::int64_t j = 0; j < n; ++j) {
                const double cost = op.node_cost(j);
                double best = std::numeric_limits<double>::infinity();
                std::uint32_t best_k = 0;
                for (std::int64_t k = 0; k < k_controls; ++k) {
                    const LandingArc& arc = arcs[static_cast<std::size_t>(j * k_controls + k)];
                    double landing_value = penalty;
                    if (arc.in_domain) {
                        landing_value = 0.0;
                        for (int q = 0; q < 16; ++q) {
                            landing_value += arc.weights[static_cast<std::size_t>(q)] *
                                             field[arc.nodes[static_cast<std::size_t>(q)]];
                        }
                    }
                    const double l = cost + alpha * controls[static_cast<std::size_t>(k)].u_bar;
                    const double val = cfg.dt * l + disc * landing_value;
                    if (val < best) {
                        best = val;
                        best_k = static_cast<std::uint32_t>(k);
                    }
                }
                next[static_cast<std::size_t>(j)] = best;
                res.policy[static_cast<std::size_t>(j)] = best_k;
                change = std::max(change, std::abs(best - res.values[static_cast<std::size_t>(j)]));
            }
        } else {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : change)
#endif
            for (std::int64_t j = 0; j < n; ++j) {
                const auto [best, best_k] = op.update(j, field);
                next[static_cast<std::size_t>(j)] = best;
                res.policy[static_cast<std::size_t>(j)] = best_k;
                change = std::max(change, std::abs(best - res.values[static_cast<std::size_t>(j)]));
            }
        }
        res.values.swap(next);
        if (change < change_target) {
            res.converged = true;
            break;
        }
    }

    res.iterations = sweeps;
    res.residual = change;
    res.wall_seconds = elapsed_seconds(t0);
    return res;
}

// ---------------------------------------------------------------------------
// Policy iteration
// ---------------------------------------------------------------------------

EvaluationSystem assemble_evaluation(const BellmanOperator& op,
                                     std::span<const std::uint32_t> policy) {
    const CrownGrid& grid = op.grid();
    const std::int64_t n = grid.size();
    if (static_cast<std::int64_t>(policy.size()) != n) {
        throw Error("policy length does not match the grid");
    }
    const auto& controls = op.controls();
    const SolverConfig& cfg = op.config();
    const double disc = op.discount();
    const double alpha = op.problem().weights.alpha;

    EvaluationSystem sys;
    sys.matrix = SparseRowMajor(n, n);
    sys.rhs.resize(n);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * 17);
    for (std::int64_t j = 0; j < n; ++j) {
        const Control& c = controls[policy[static_cast<std::size_t>(j)]];
        const double l = op.node_cost(j) + alpha * c.u_bar;
        const auto st = grid.stencil(op.landing(grid.node_state(j), c, cfg.dt));
        triplets.emplace_back(j, j, 1.0);
        if (st) {
            sys.rhs[j] = cfg.dt * l;
            for (int q = 0; q < 16; ++q) {
                triplets.emplace_back(j, st->nodes[static_cast<std::size_t>(q)],
                                      -disc * st->weights[static_cast<std::size_t>(q)]);
            }
        } else {
            // Out-of-crown landing: identity row, penalty absorbed on the right.
            sys.rhs[j] = cfg.dt * l + disc * op.penalty();
        }
    }
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    return sys;
}

Eigen::VectorXd solve_evaluation(const EvaluationSystem& system, const Eigen::VectorXd& guess,
                                 double linear_tol, int max_restarts) {
    const double rhs_norm = system.rhs.lpNorm<Eigen::Infinity>();
    if (rhs_norm == 0.0) return Eigen::VectorXd::Zero(system.rhs.size());

    Eigen::GMRES<SparseRowMajor, Eigen::DiagonalPreconditioner<double>> gmres;
    gmres.set_restart(60);
    gmres.compute(system.matrix);

    Eigen::VectorXd x = guess;
    double tol = std::max(linear_tol, 1e-14);
    for (int attempt = 0; attempt <= max_restarts; ++attempt) {
        gmres.setTolerance(tol);
        gmres.setMaxIterations(2000);
        x = gmres.solveWithGuess(system.rhs, x);
        const double residual =
            (system.rhs - system.matrix * x).lpNorm<Eigen::Infinity>();
        if (residual <= linear_tol * rhs_norm) return x;
        tol = std::max(tol * 1e-2, 1e-16);
    }
    throw LinearSolveStagnation("policy evaluation failed to reach its residual target");
}

ImprovementResult improve_policy(const BellmanOperator& op, std::span<const double> field,
                                 std::span<const std::uint32_t> prev_policy, bool exhaustive) {
    const CrownGrid& grid = op.grid();
    const std::int64_t n = grid.size();
    if (static_cast<std::int64_t>(prev_policy.size()) != n) {
        throw Error("policy length does not match the grid");
    }
    const auto& controls = op.controls();
    const int n_angles = static_cast<int>(controls.size()) - 1;
    const double dt = op.config().dt;
    const double disc = op.discount();

    ImprovementResult out;
    out.policy.resize(static_cast<std::size_t>(n));
    std::int64_t changed = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : changed)
#endif
    for (std::int64_t j = 0; j < n; ++j) {
        std::uint32_t pick;
        if (exhaustive) {
            pick = op.update(j, field).second;
        } else {
            const PolarState x = grid.node_state(j);
            const double cost = op.node_cost(j);
            const auto value_of = [&](std::size_t control_idx) {
                return op.rhs_at(x, cost, field, controls[control_idx], dt, disc);
            };
            const double v_null = value_of(0);
            const std::uint32_t prev = prev_policy[static_cast<std::size_t>(j)];
            const int seed = (prev == 0) ? 0 : static_cast<int>(prev) - 1;
            const int end = cycle_walk_minimize(
                [&](int angle) { return value_of(static_cast<std::size_t>(angle) + 1); },
                n_angles, seed);
            const double v_end = value_of(static_cast<std::size_t>(end) + 1);
            pick = (v_null <= v_end) ? 0u : static_cast<std::uint32_t>(end + 1);
        }
        out.policy[static_cast<std::size_t>(j)] = pick;
        if (pick != prev_policy[static_cast<std::size_t>(j)]) ++changed;
    }
    out.changed = changed;
    return out;
}

SolveResult policy_iteration(const BellmanOperator& op, const std::vector<double>* warm_start) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t n = op.grid().size();
    const SolverConfig& cfg = op.config();

    SolveResult res;
    res.values = warm_start ? *warm_start : std::vector<double>(static_cast<std::size_t>(n), 0.0);
    if (static_cast<std::int64_t>(res.values.size()) != n) {
        throw Error("warm start length does not match the grid");
    }
    res.policy.assign(static_cast<std::size_t>(n), 0);  // start from coasting everywhere

    Eigen::VectorXd value = Eigen::Map<const Eigen::VectorXd>(res.values.data(), n);
    for (int k = 0; k < cfg.max_iters; ++k) {
        const EvaluationSystem sys = assemble_evaluation(op, res.policy);
        const Eigen::VectorXd evaluated =
            solve_evaluation(sys, value, cfg.linear_tol, cfg.max_linear_restarts);
        res.residual = (evaluated - value).lpNorm<Eigen::Infinity>();
        value = evaluated;
        Eigen::Map<Eigen::VectorXd>(res.values.data(), n) = value;
        res.iterations = k + 1;

        const ImprovementResult imp =
            improve_policy(op, res.values, res.policy, /*exhaustive=*/k == 0);
        if (imp.changed == 0) {
            res.converged = true;
            break;
        }
        res.policy = std::move(imp.policy);
        if (k >= 1 && res.residual < cfg.tol) {
            res.converged = true;
            break;
        }
    }
    res.wall_seconds = elapsed_seconds(t0);
    return res;
}

// ---------------------------------------------------------------------------
// Minimizers
// ---------------------------------------------------------------------------

double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double xtol) {
    const double inv_gr = 2.0 / (std::sqrt(5.0) + 1.0);
    double a = lo, b = hi;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

int cycle_walk_minimize(const std::function<double(int)>& f, int n, int start) {
    if (n <= 1) return 0;
    int cur = start;
    double v_cur = f(cur);
    for (int guard = 0; guard < n; ++guard) {
        const int left = (cur + n - 1) % n;
        const int right = (cur + 1) % n;
        const double v_left = f(left);
        const double v_right = f(right);
        int next = cur;
        double v_next = v_cur;
        if (v_right < v_next) {
            next = right;
            v_next = v_right;
        }
        if (v_left < v_next || (v_left == v_next && left < next)) {
            next = left;
            v_next = v_left;
        }
        if (next == cur) break;
        cur = next;
        v_cur = v_next;
    }
    return cur;
}

Control refine_control(const BellmanOperator& op, std::int64_t j,
                       std::span<const double> field, const Control& coarse) {
    if (coarse.is_null()) return coarse;
    const PolarState x = op.grid().node_state(j);
    const double cost = op.node_cost(j);
    const double dt = op.config().dt;
    const double disc = op.discount();
    const double u_max = op.problem().u_max;
    const auto value_of = [&](double phi) {
        return op.rhs_at(x, cost, field, Control::thrust(u_max, phi), dt, disc);
    };
    const double v_coarse = value_of(coarse.phi);
    const double step = op.config().angle_step;
    const double phi_star =
        golden_section_minimize(value_of, coarse.phi - step, coarse.phi + step, 1e-6);
    if (value_of(phi_star) < v_coarse) return Control::thrust(u_max, phi_star);
    return coarse;
}

}  // namespace orbitraise
