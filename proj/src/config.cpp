#include "orbitraise/config.hpp"

#include <cmath>
#include <json.hpp>

#include "orbitraise/orbital.hpp"

namespace orbitraise {

using nlohmann::json;

std::string to_string(Engine e) {
    return e == Engine::policy_iteration ? "policy-iteration" : "value-iteration";
}

Engine engine_from_string(const std::string& name) {
    if (name == "policy-iteration") return Engine::policy_iteration;
    if (name == "value-iteration") return Engine::value_iteration;
    throw ConfigError("engine", "expected \"policy-iteration\" or \"value-iteration\", got \"" + name + "\"");
}

CrownGrid GridSpec::build() const {
    return CrownGrid::build({
        AxisSpec{rho_min, rho_max, n_rho, false},
        AxisSpec{0.0, kTwoPi, n_theta, true},
        AxisSpec{v_rho_min, v_rho_max, n_v_rho, false},
        AxisSpec{v_theta_min, v_theta_max, n_v_theta, false},
    });
}

SolverConfig ProblemConfig::make_solver() const {
    SolverConfig s;
    s.dt = dt;
    s.tol = tol;
    s.max_iters = max_iters;
    s.penalty = penalty;
    s.angle_step = angle_step_deg * kPi / 180.0;
    s.refine = refine;
    s.linear_tol = linear_tol;
    s.max_linear_restarts = max_linear_restarts;
    return s;
}

PlantConfig ProblemConfig::make_plant(std::optional<bool> apply_drag) const {
    PlantConfig p;
    p.step = plant.step;
    p.tau = plant.tau;
    p.horizon = plant.horizon;
    if (apply_drag.value_or(plant.apply_drag)) p.drag = drag;
    return p;
}

ProblemConfig default_config() {
    ProblemConfig cfg;
    cfg.initial.v_theta = circular_velocity(cfg.initial.rho, cfg.mu);
    return cfg;
}

namespace {

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

const json& as_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw ConfigError(path, "expected an object");
    return v;
}

void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) throw ConfigError(path, message);
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    as_object(root, "<root>");

    ProblemConfig cfg;
    std::optional<double> initial_v_theta;

    for (const auto& [key, value] : root.items()) {
        if (key == "mu") {
            cfg.mu = as_number(value, "mu");
        } else if (key == "engine") {
            cfg.engine = engine_from_string(as_string(value, "engine"));
        } else if (key == "grid") {
            for (const auto& [k, v] : as_object(value, "grid").items()) {
                const std::string path = "grid." + k;
                if (k == "rho_min") cfg.grid.rho_min = as_number(v, path);
                else if (k == "rho_max") cfg.grid.rho_max = as_number(v, path);
                else if (k == "n_rho") cfg.grid.n_rho = as_int(v, path);
                else if (k == "n_theta") cfg.grid.n_theta = as_int(v, path);
                else if (k == "v_rho_min") cfg.grid.v_rho_min = as_number(v, path);
                else if (k == "v_rho_max") cfg.grid.v_rho_max = as_number(v, path);
                else if (k == "n_v_rho") cfg.grid.n_v_rho = as_int(v, path);
                else if (k == "v_theta_min") cfg.grid.v_theta_min = as_number(v, path);
                else if (k == "v_theta_max") cfg.grid.v_theta_max = as_number(v, path);
                else if (k == "n_v_theta") cfg.grid.n_v_theta = as_int(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "target") {
            for (const auto& [k, v] : as_object(value, "target").items()) {
                const std::string path = "target." + k;
                if (k == "a") cfg.target.a_bar = as_number(v, path);
                else if (k == "e") cfg.target.e_bar = as_number(v, path);
                else if (k == "omega") cfg.target.omega_bar = as_number(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "cost") {
            for (const auto& [k, v] : as_object(value, "cost").items()) {
                const std::string path = "cost." + k;
                if (k == "alpha") cfg.weights.alpha = as_number(v, path);
                else if (k == "beta") cfg.weights.beta = as_number(v, path);
                else if (k == "gamma") cfg.weights.gamma = as_number(v, path);
                else if (k == "lambda") cfg.weights.lambda = as_number(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "control") {
            for (const auto& [k, v] : as_object(value, "control").items()) {
                const std::string path = "control." + k;
                if (k == "u_max") cfg.u_max = as_number(v, path);
                else if (k == "angle_step_deg") cfg.angle_step_deg = as_number(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "solver") {
            for (const auto& [k, v] : as_object(value, "solver").items()) {
                const std::string path = "solver." + k;
                if (k == "dt") cfg.dt = as_number(v, path);
                else if (k == "tol") cfg.tol = as_number(v, path);
                else if (k == "max_iters") cfg.max_iters = as_int(v, path);
                else if (k == "penalty") cfg.penalty = as_number(v, path);
                else if (k == "refine") cfg.refine = as_bool(v, path);
                else if (k == "linear_tol") cfg.linear_tol = as_number(v, path);
                else if (k == "max_linear_restarts") cfg.max_linear_restarts = as_int(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "plant") {
            for (const auto& [k, v] : as_object(value, "plant").items()) {
                const std::string path = "plant." + k;
                if (k == "step") cfg.plant.step = as_number(v, path);
                else if (k == "tau") cfg.plant.tau = as_number(v, path);
                else if (k == "horizon") cfg.plant.horizon = as_number(v, path);
                else if (k == "apply_drag") cfg.plant.apply_drag = as_bool(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "drag") {
            for (const auto& [k, v] : as_object(value, "drag").items()) {
                const std::string path = "drag." + k;
                if (k == "c_d") cfg.drag.c_d = as_number(v, path);
                else if (k == "s_area") cfg.drag.s_area = as_number(v, path);
                else if (k == "mass") cfg.drag.mass = as_number(v, path);
                else if (k == "rho_d") cfg.drag.rho_d = as_number(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "initial") {
            for (const auto& [k, v] : as_object(value, "initial").items()) {
                const std::string path = "initial." + k;
                if (k == "rho") cfg.initial.rho = as_number(v, path);
                else if (k == "theta") cfg.initial.theta = as_number(v, path);
                else if (k == "v_rho") cfg.initial.v_rho = as_number(v, path);
                else if (k == "v_theta") initial_v_theta = as_number(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else if (key == "metrics") {
            for (const auto& [k, v] : as_object(value, "metrics").items()) {
                const std::string path = "metrics." + k;
                if (k == "band") cfg.band = as_number(v, path);
                else throw ConfigError(path, "unknown key");
            }
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    // -- validation ---------------------------------------------------------
    require(cfg.mu > 0.0, "mu", "must be positive");
    require(cfg.grid.rho_min > 0.0, "grid.rho_min", "must be positive");
    require(cfg.grid.rho_min < cfg.grid.rho_max, "grid.rho_max", "bounds must be ordered");
    require(cfg.grid.v_rho_min < cfg.grid.v_rho_max, "grid.v_rho_max", "bounds must be ordered");
    require(cfg.grid.v_theta_min < cfg.grid.v_theta_max, "grid.v_theta_max", "bounds must be ordered");
    require(cfg.grid.n_rho >= 2, "grid.n_rho", "needs at least 2 nodes");
    require(cfg.grid.n_theta >= 2, "grid.n_theta", "needs at least 2 nodes");
    require(cfg.grid.n_v_rho >= 2, "grid.n_v_rho", "needs at least 2 nodes");
    require(cfg.grid.n_v_theta >= 2, "grid.n_v_theta", "needs at least 2 nodes");
    require(cfg.target.a_bar > 0.0, "target.a", "must be positive");
    require(cfg.target.e_bar >= 0.0 && cfg.target.e_bar < 1.0, "target.e", "must lie in [0, 1)");
    const double perigee = cfg.target.a_bar * (1.0 - cfg.target.e_bar);
    const double apogee = cfg.target.a_bar * (1.0 + cfg.target.e_bar);
    require(perigee >= cfg.grid.rho_min && apogee <= cfg.grid.rho_max, "target.a",
            "grid must contain the target orbit's radius band");
    require(cfg.weights.alpha > 0.0, "cost.alpha", "must be positive");
    require(cfg.weights.beta > 0.0, "cost.beta", "must be positive");
    require(cfg.weights.gamma > 0.0, "cost.gamma", "must be positive");
    require(cfg.weights.lambda > 0.0, "cost.lambda", "must be positive");
    require(cfg.u_max > 0.0, "control.u_max", "must be positive");
    require(cfg.angle_step_deg > 0.0, "control.angle_step_deg", "must be positive");
    require(cfg.dt > 0.0, "solver.dt", "must be positive");
    require(std::exp(-cfg.weights.lambda * cfg.dt) < 1.0, "solver.dt",
            "e^{-lambda*dt} must be below 1");
    require(cfg.tol > 0.0, "solver.tol", "must be positive");
    require(cfg.max_iters >= 1, "solver.max_iters", "must be at least 1");
    require(cfg.linear_tol > 0.0, "solver.linear_tol", "must be positive");
    require(cfg.max_linear_restarts >= 0, "solver.max_linear_restarts", "must be nonnegative");
    require(cfg.plant.step > 0.0, "plant.step", "must be positive");
    require(cfg.plant.tau >= cfg.plant.step, "plant.tau", "must be at least plant.step");
    require(cfg.plant.horizon >= cfg.plant.tau, "plant.horizon", "must cover one control interval");
    require(cfg.drag.c_d >= 0.0, "drag.c_d", "must be nonnegative");
    require(cfg.drag.s_area >= 0.0, "drag.s_area", "must be nonnegative");
    require(cfg.drag.mass > 0.0, "drag.mass", "must be positive");
    require(cfg.drag.rho_d >= 0.0, "drag.rho_d", "must be nonnegative");
    require(cfg.initial.rho > 0.0, "initial.rho", "must be positive");
    require(cfg.band > 0.0, "metrics.band", "must be positive");

    cfg.initial.theta = wrap_angle(cfg.initial.theta);
    cfg.initial.v_theta =
        initial_v_theta ? *initial_v_theta : circular_velocity(cfg.initial.rho, cfg.mu);
    return cfg;
}

std::string canonical_config(const ProblemConfig& cfg) {
    json root;
    root["mu"] = cfg.mu;
    root["engine"] = to_string(cfg.engine);
    root["grid"] = {
        {"rho_min", cfg.grid.rho_min},       {"rho_max", cfg.grid.rho_max},
        {"n_rho", cfg.grid.n_rho},           {"n_theta", cfg.grid.n_theta},
        {"v_rho_min", cfg.grid.v_rho_min},   {"v_rho_max", cfg.grid.v_rho_max},
        {"n_v_rho", cfg.grid.n_v_rho},       {"v_theta_min", cfg.grid.v_theta_min},
        {"v_theta_max", cfg.grid.v_theta_max}, {"n_v_theta", cfg.grid.n_v_theta},
    };
    root["target"] = {{"a", cfg.target.a_bar}, {"e", cfg.target.e_bar}, {"omega", cfg.target.omega_bar}};
    root["cost"] = {{"alpha", cfg.weights.alpha},
                    {"beta", cfg.weights.beta},
                    {"gamma", cfg.weights.gamma},
                    {"lambda", cfg.weights.lambda}};
    root["control"] = {{"u_max", cfg.u_max}, {"angle_step_deg", cfg.angle_step_deg}};
    root["solver"] = {{"dt", cfg.dt},
                      {"tol", cfg.tol},
                      {"max_iters", cfg.max_iters},
                      {"penalty", cfg.penalty},
                      {"refine", cfg.refine},
                      {"linear_tol", cfg.linear_tol},
                      {"max_linear_restarts", cfg.max_linear_restarts}};
    root["plant"] = {{"step", cfg.plant.step},
                     {"tau", cfg.plant.tau},
                     {"horizon", cfg.plant.horizon},
                     {"apply_drag", cfg.plant.apply_drag}};
    root["drag"] = {{"c_d", cfg.drag.c_d},
                    {"s_area", cfg.drag.s_area},
                    {"mass", cfg.drag.mass},
                    {"rho_d", cfg.drag.rho_d}};
    root["initial"] = {{"rho", cfg.initial.rho},
                       {"theta", cfg.initial.theta},
                       {"v_rho", cfg.initial.v_rho},
                       {"v_theta", cfg.initial.v_theta}};
    root["metrics"] = {{"band", cfg.band}};
    return root.dump();
}

}  // namespace orbitraise
