#include "orbitraise/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "orbitraise/archive.hpp"
#include "orbitraise/csv.hpp"
#include "orbitraise/feedback.hpp"

namespace orbitraise {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void print_report(const ConvergenceReport& rep) {
    std::printf("engine:      %s\n", rep.engine.c_str());
    std::printf("iterations:  %d\n", rep.iterations);
    std::printf("residual:    %.6e\n", rep.residual);
    std::printf("wall time:   %.2f s\n", rep.wall_seconds);
    std::printf("converged:   %s\n", rep.converged ? "yes" : "no");
}

void print_metrics(const TransferMetrics& m, const Trajectory& traj) {
    if (m.band_entry_time) {
        std::printf("band entry:         %.1f s\n", *m.band_entry_time);
    } else {
        std::printf("band entry:         never\n");
    }
    if (m.switch_off_time) {
        std::printf("switch-off:         %.1f s\n", *m.switch_off_time);
    } else {
        std::printf("switch-off:         never\n");
    }
    std::printf("final radius error: %.6f km\n", m.final_radius_error);
    std::printf("fuel proxy:         %.6e km/s\n", m.fuel_used);
    std::printf("reactivations:      %d\n", m.reactivations);
    std::printf("crown exited:       %s\n", traj.exited_crown ? "yes" : "no");
}

int do_solve(const std::string& config_path, const std::string& out_path,
             const std::string& engine_override, const std::string& warm_path) {
    ProblemConfig cfg = parse_config(read_file(config_path));
    if (!engine_override.empty()) cfg.engine = engine_from_string(engine_override);

    std::optional<SolutionArchive> warm;
    if (!warm_path.empty()) {
        warm = load_solution(warm_path);
        if (warm->config.grid.size() != cfg.grid.size()) {
            throw ConfigError("warm", "warm-start grid size does not match the config");
        }
    }

    const BellmanOperator op(cfg.make_grid(), cfg.make_problem(), cfg.make_solver());
    const SolveResult result = cfg.engine == Engine::policy_iteration
                                   ? policy_iteration(op, warm ? &warm->values : nullptr)
                                   : value_iteration(op, warm ? &warm->values : nullptr);

    SolutionArchive archive;
    archive.config = cfg;
    archive.values = result.values;
    archive.policy = result.policy;
    archive.report = ConvergenceReport{to_string(cfg.engine), result.iterations,
                                       result.residual, result.wall_seconds, result.converged};
    save_solution(archive, out_path);

    print_report(archive.report);
    std::printf("archive:     %s\n", out_path.c_str());
    if (!result.converged) {
        std::fprintf(stderr, "solve did not converge within %d iterations; partial archive written\n",
                     cfg.max_iters);
        return kExitNumeric;
    }
    return kExitOk;
}

int do_simulate(const std::string& archive_path, const std::string& out_path, bool drag_flag) {
    const SolutionArchive archive = load_solution(archive_path);
    const ProblemConfig& cfg = archive.config;
    const BellmanOperator op(cfg.make_grid(), cfg.make_problem(), cfg.make_solver());
    const PlantConfig plant =
        cfg.make_plant(drag_flag ? std::optional<bool>(true) : std::nullopt);

    const Trajectory traj = simulate(op, archive.values, cfg.initial, plant);
    export_trajectory(traj, out_path);

    const TransferMetrics m = transfer_metrics(traj, cfg.target, cfg.band, cfg.mu);
    std::printf("samples:            %zu\n", traj.times.size());
    std::printf("drag applied:       %s\n", plant.drag ? "yes" : "no");
    print_metrics(m, traj);
    std::printf("csv:                %s\n", out_path.c_str());
    return kExitOk;
}

int do_inspect(const std::string& archive_path, const std::string& config_path) {
    if (archive_path.empty() == config_path.empty()) {
        throw ConfigError("inspect", "pass exactly one of --archive or --config");
    }
    if (!config_path.empty()) {
        const ProblemConfig cfg = parse_config(read_file(config_path));
        std::printf("config: %s\n", canonical_config(cfg).c_str());
        std::printf("grid nodes: %lld\n", static_cast<long long>(cfg.grid.size()));
        return kExitOk;
    }

    const SolutionArchive archive = load_solution(archive_path);
    std::printf("config: %s\n", canonical_config(archive.config).c_str());
    std::printf("grid nodes: %lld\n", static_cast<long long>(archive.config.grid.size()));
    print_report(archive.report);

    const auto [mn, mx] = std::minmax_element(archive.values.begin(), archive.values.end());
    std::printf("value min:   %.9e\n", *mn);
    std::printf("value max:   %.9e\n", *mx);
    const auto null_count = static_cast<double>(
        std::count(archive.policy.begin(), archive.policy.end(), 0u));
    const auto n = static_cast<double>(archive.policy.size());
    std::printf("policy:      %.4f coasting, %.4f thrusting\n", null_count / n,
                1.0 - null_count / n);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"HJB value-function solver and closed-loop simulator for planar low-thrust orbit raising"};
    app.require_subcommand(1);

    std::string config_path, out_path, engine_override, warm_path, archive_path;
    bool drag_flag = false;

    CLI::App* solve_cmd = app.add_subcommand("solve", "compute the value function and policy");
    solve_cmd->add_option("--config", config_path, "problem config (JSON)")->required();
    solve_cmd->add_option("--out", out_path, "output archive path")->required();
    solve_cmd->add_option("--engine", engine_override,
                          "policy-iteration | value-iteration (overrides the config)");
    solve_cmd->add_option("--warm", warm_path, "archive whose value function seeds the solve");

    CLI::App* sim_cmd = app.add_subcommand("simulate", "run the closed loop from an archive");
    sim_cmd->add_option("--archive", archive_path, "solution archive")->required();
    sim_cmd->add_option("--out", out_path, "output trajectory CSV")->required();
    sim_cmd->add_flag("--drag", drag_flag, "apply the config's drag parameters to the plant");

    CLI::App* inspect_cmd = app.add_subcommand("inspect", "print archive or config facts");
    inspect_cmd->add_option("--archive", archive_path, "solution archive");
    inspect_cmd->add_option("--config", config_path, "problem config (JSON)");

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) return do_solve(config_path, out_path, engine_override, warm_path);
        if (sim_cmd->parsed()) return do_simulate(archive_path, out_path, drag_flag);
        return do_inspect(archive_path, config_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const LinearSolveStagnation& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const ArchiveError& e) {
        std::fprintf(stderr, "archive error: %s\n", e.what());
        return kExitIo;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}

}  // namespace orbitraise
