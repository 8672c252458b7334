// Command-line front end: train / eval / fly / oracle / plot / equiv.
// Exit codes: 0 success, 1 usage or config error, 2 runtime simulation failure.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "waypoint_rl/config.hpp"
#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/flight.hpp"
#include "waypoint_rl/rollout.hpp"
#include "waypoint_rl/runner.hpp"
#include "waypoint_rl/store.hpp"
#include "waypoint_rl/svg.hpp"
#include "waypoint_rl/value_iteration.hpp"

namespace fs = std::filesystem;
using namespace waypoint_rl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string default_out_root() {
    if (const char* env = std::getenv("WAYPOINT_RL_OUT")) return env;
    return "out";
}

void print_resolved(const TrainConfig& cfg) {
    std::cout << "config: " << to_json(cfg).dump() << "\n";
    std::cout << "seed: " << cfg.seed << "\n";
    std::cout << "fingerprint: " << config_fingerprint(cfg) << "\n";
}

std::vector<double> parse_number_list(const std::string& text, std::size_t count,
                                      const std::string& what) {
    const auto fields = detail::split_csv_line(text);
    if (fields.size() != count)
        throw ParseError(what + ": expected " + std::to_string(count) + " comma-separated values");
    std::vector<double> out;
    for (const auto& f : fields) out.push_back(detail::parse_double(f, what));
    return out;
}

// Plot inputs are read by column name so any CSV with the right columns works.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw ParseError("plot: input missing column '" + name + "'");
    }

    std::vector<double> numbers(const std::string& name) const {
        const int c = column(name);
        std::vector<double> out;
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.push_back(detail::parse_double(rows[i][c], "row " + std::to_string(i + 2)));
        return out;
    }
};

CsvTable read_csv(const fs::path& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty()) throw ParseError(path.string() + ": empty file");
    CsvTable table;
    table.header = detail::split_csv_line(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() && i == lines.size() - 1) break;
        auto fields = detail::split_csv_line(lines[i]);
        if (fields.size() != table.header.size())
            throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                             std::to_string(table.header.size()) + " fields");
        table.rows.push_back(std::move(fields));
    }
    return table;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string resume_path;
    std::string seeds_range;
    bool no_dynamics = false;
};

int run_single_train(TrainConfig cfg, const fs::path& out_dir, const std::string& resume_path) {
    cfg.validate();
    print_resolved(cfg);
    std::cout << "out: " << out_dir.string() << "\n";

    std::optional<Checkpoint> resume;
    if (!resume_path.empty()) {
        resume = load_checkpoint(resume_path, cfg.env);
        // refuse before the writer touches any artifact
        if (resume->config_hash != config_fingerprint(cfg))
            throw ValidationError("resume: checkpoint fingerprint " + resume->config_hash +
                                  " does not match config fingerprint " + config_fingerprint(cfg));
    }

    RunWriter writer(out_dir, cfg);
    writer.start(resume ? &*resume : nullptr);
    const TrainResult result = train(
        cfg, [&writer](const EpisodeEvent& ev) { return writer.on_episode(ev); },
        resume ? &*resume : nullptr);
    writer.finalize(result.qtable);

    if (result.status == TrainStatus::aborted) {
        std::cerr << "error: maneuver timed out, episode " << result.aborted_episode
                  << " aborted; artifacts up to the previous episode are on disk\n";
        return kExitRuntime;
    }
    std::cout << "episodes_run: " << result.episodes.size() << "\n";
    if (result.first_optimal_episode > 0)
        std::cout << "first_optimal_episode: " << result.first_optimal_episode << "\n";
    const auto path = greedy_rollout(result.qtable, cfg.env, cfg.start,
                                     cfg.max_steps_per_episode);
    std::cout << "greedy_steps_from_start: " << path.size() << "\n";
    return kExitOk;
}

int cmd_train(const TrainArgs& args) {
    TrainConfig cfg = load_train_config(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.no_dynamics) cfg.dynamics_enabled = false;

    const fs::path out_dir =
        args.out_dir.empty() ? fs::path(default_out_root()) / "run" : fs::path(args.out_dir);

    if (args.seeds_range.empty()) return run_single_train(cfg, out_dir, args.resume_path);

    // --seeds A..B: independent runs fanned out across worker threads,
    // one subdirectory per seed.
    const auto sep = args.seeds_range.find("..");
    if (sep == std::string::npos)
        throw ParseError("--seeds: expected A..B, got '" + args.seeds_range + "'");
    const std::uint64_t first =
        detail::parse_int(args.seeds_range.substr(0, sep), "--seeds");
    const std::uint64_t last = detail::parse_int(args.seeds_range.substr(sep + 2), "--seeds");
    if (last < first) throw ParseError("--seeds: B must be >= A");

    cfg.validate();
    print_resolved(cfg);
    const std::size_t n = static_cast<std::size_t>(last - first + 1);
    std::vector<int> codes(n, kExitOk);
    std::vector<std::string> summaries(n);
    std::atomic<std::size_t> cursor{0};
    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(n)));
    auto work = [&] {
        for (std::size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) {
            TrainConfig c = cfg;
            c.seed = first + i;
            const fs::path dir = out_dir / ("seed_" + std::to_string(c.seed));
            try {
                RunWriter writer(dir, c);
                writer.start(nullptr);
                const TrainResult result =
                    train(c, [&writer](const EpisodeEvent& ev) { return writer.on_episode(ev); });
                writer.finalize(result.qtable);
                if (result.status == TrainStatus::aborted) {
                    codes[i] = kExitRuntime;
                    summaries[i] = "aborted at episode " + std::to_string(result.aborted_episode);
                } else {
                    summaries[i] =
                        "completed, first_optimal_episode=" +
                        std::to_string(result.first_optimal_episode);
                }
            } catch (const std::exception& e) {
                codes[i] = kExitRuntime;
                summaries[i] = std::string("failed: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    int worst = kExitOk;
    for (std::size_t i = 0; i < n; ++i) {
        std::cout << "seed " << (first + i) << ": " << summaries[i] << "\n";
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

int cmd_eval(const std::string& qtable_path, const std::string& config_path,
             const std::string& start_text) {
    const TrainConfig cfg = load_train_config(config_path);
    cfg.validate();
    print_resolved(cfg);
    const QTable q = load_qtable(qtable_path, cfg.env);

    GridState start = cfg.start;
    if (!start_text.empty()) {
        const auto nums = parse_number_list(start_text, 2, "--start");
        start = {static_cast<int>(nums[0]), static_cast<int>(nums[1])};
    }
    if (!cfg.env.in_bounds(start)) throw ValidationError("eval: start outside the grid");

    std::cout << "qtable: " << qtable_path << "\n";
    std::cout << "start: (" << start.x << "," << start.y << ")  goal: (" << cfg.env.goal.x << ","
              << cfg.env.goal.y << ")\n";
    const auto path = greedy_rollout(q, cfg.env, start, cfg.max_steps_per_episode);
    GridState s = start;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const GridState next = cfg.env.step(path[k].state, path[k].action);
        std::cout << "step " << (k + 1) << ": (" << path[k].state.x << "," << path[k].state.y
                  << ") " << action_letter(path[k].action) << " -> (" << next.x << "," << next.y
                  << ")\n";
        s = next;
    }
    std::cout << "steps: " << path.size() << "\n";
    std::cout << "reached_goal: " << (cfg.env.is_goal(s) ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_fly(const std::string& gains_text, double step_m, const std::string& out_csv,
            double duration_s, double radius_m) {
    const auto g = parse_number_list(gains_text, 3, "--gains");
    const PidGains gains{g[0], g[1], g[2]};
    gains.validate();
    if (!(step_m > 0.0)) throw ValidationError("fly: --step-m must be > 0");
    if (!(radius_m > 0.0)) throw ValidationError("fly: --radius must be > 0");
    const PlantParams plant;  // frozen defaults

    std::cout << "gains: kp=" << gains.kp << " ki=" << gains.ki << " kd=" << gains.kd << "\n";
    std::cout << "step_m: " << step_m << "  duration_s: " << duration_s
              << "  radius_m: " << radius_m << "\n";

    const PlantState start{{0.0, 0.0}, {0.0, 0.0}, 0.0};
    const Vec2 waypoint{step_m, 0.0};
    const Trajectory traj = step_response(start, waypoint, gains, plant, duration_s);
    for (const auto& sample : traj)
        if (!is_finite(sample.position) || !is_finite(sample.velocity)) {
            std::cerr << "error: trajectory diverged (non-finite sample at t=" << sample.t << ")\n";
            return kExitRuntime;
        }

    save_trajectory(traj, out_csv);
    const double os = overshoot(traj, start.position, waypoint);
    const double st = settling_time(traj, waypoint, radius_m);
    std::cout << "overshoot_m: " << format_fixed6(os) << "\n";
    std::cout << "settling_time_s: ";
    if (std::isinf(st)) std::cout << "inf\n";
    else std::cout << format_fixed6(st) << "\n";
    std::cout << "trajectory: " << out_csv << "\n";
    return kExitOk;
}

int cmd_oracle(const std::string& config_path, const std::string& out_csv, double tol) {
    const TrainConfig cfg = load_train_config(config_path);
    cfg.validate();
    print_resolved(cfg);
    std::cout << "gamma: " << cfg.learn.gamma << "  tol: " << tol << "\n";
    const QTable q = value_iteration(cfg.env, cfg.learn.gamma, tol);
    save_qtable(q, cfg.env, out_csv);
    std::cout << "qtable: " << out_csv << "\n";
    return kExitOk;
}

int cmd_plot(const std::string& input_csv, const std::string& kind, const std::string& out_svg) {
    const CsvTable table = read_csv(input_csv);
    std::string svg;
    if (kind == "steps") {
        PlotSeries series{table.numbers("episode"), table.numbers("steps")};
        svg = svg_line_chart(series, "Steps per episode", "episode", "steps");
    } else if (kind == "error") {
        const auto t = table.numbers("t");
        const auto x = table.numbers("x");
        const auto y = table.numbers("y");
        const auto wx = table.numbers("wx");
        const auto wy = table.numbers("wy");
        PlotSeries series;
        series.x = t;
        for (std::size_t i = 0; i < t.size(); ++i)
            series.y.push_back(norm(Vec2{x[i] - wx[i], y[i] - wy[i]}));
        svg = svg_line_chart(series, "Distance error vs time", "t [s]", "error [m]");
    } else if (kind == "path") {
        const auto x = table.numbers("x");
        const auto y = table.numbers("y");
        const auto wx = table.numbers("wx");
        const auto wy = table.numbers("wy");
        std::vector<Vec2> path;
        for (std::size_t i = 0; i < x.size(); ++i) path.push_back({x[i], y[i]});
        std::vector<Vec2> waypoints;
        for (std::size_t i = 0; i < wx.size(); ++i) {
            const Vec2 w{wx[i], wy[i]};
            bool known = false;
            for (Vec2 seen : waypoints) known = known || (seen == w);
            if (!known) waypoints.push_back(w);
        }
        svg = svg_path_chart(path, waypoints, "Flight path");
    } else {
        throw ParseError("plot: --kind must be steps, error, or path");
    }
    atomic_write_file(out_svg, svg);
    std::cout << "svg: " << out_svg << "\n";
    return kExitOk;
}

int cmd_equiv(const std::string& config_path, std::optional<std::uint64_t> seed) {
    TrainConfig cfg = load_train_config(config_path);
    if (seed) cfg.seed = *seed;
    cfg.validate();
    print_resolved(cfg);
    const bool ok = equivalence_check(cfg);
    std::cout << "equivalent: " << (ok ? "true" : "false") << "\n";
    if (!ok) {
        std::cerr << "error: dynamics-enabled and dynamics-disabled runs differ "
                     "(aborted maneuvers or mismatched transitions)\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"waypoint_rl: tabular Q-learning over a grid of waypoints, executed by a "
                 "PID-controlled point-mass vehicle"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Run training and write run artifacts");
    train_cmd->add_option("--config", train_args.config_path, "Training config JSON")->required();
    train_cmd->add_option("--out", train_args.out_dir,
                          "Output directory (default: $WAYPOINT_RL_OUT/run or out/run)");
    train_cmd->add_flag("--no-dynamics", train_args.no_dynamics,
                        "Disable the continuous flight layer");
    auto* seed_opt = train_cmd->add_option("--seed", train_args.seed, "Override the config seed");
    auto* resume_opt =
        train_cmd->add_option("--resume", train_args.resume_path, "Resume from a checkpoint.json");
    train_cmd->add_option("--seeds", train_args.seeds_range,
                          "Fan out over a seed range A..B (one subdirectory per seed)")
        ->excludes(seed_opt)
        ->excludes(resume_opt);

    std::string eval_qtable, eval_config, eval_start;
    auto* eval_cmd = app.add_subcommand("eval", "Print the greedy path of a saved Q-table");
    eval_cmd->add_option("--qtable", eval_qtable, "Q-table CSV")->required();
    eval_cmd->add_option("--config", eval_config, "Training config JSON")->required();
    eval_cmd->add_option("--start", eval_start, "Start cell X,Y (default: config start)");

    std::string fly_gains = "0.8,0,0.9", fly_out;
    double fly_step = 1.0, fly_duration = 20.0, fly_radius = 0.3;
    auto* fly_cmd = app.add_subcommand("fly", "Single-maneuver step response of the controller");
    fly_cmd->add_option("--gains", fly_gains, "PID gains KP,KI,KD (default 0.8,0,0.9)");
    fly_cmd->add_option("--step-m", fly_step, "Step distance in meters (default 1.0)");
    fly_cmd->add_option("--out", fly_out, "Output trajectory CSV")->required();
    fly_cmd->add_option("--duration", fly_duration, "Simulated duration in seconds (default 20)");
    fly_cmd->add_option("--radius", fly_radius, "Settling radius in meters (default 0.3)");

    std::string oracle_config, oracle_out;
    double oracle_tol = 1e-10;
    auto* oracle_cmd = app.add_subcommand("oracle", "Write the optimal Q-table (value iteration)");
    oracle_cmd->add_option("--config", oracle_config, "Training config JSON")->required();
    oracle_cmd->add_option("--out", oracle_out, "Output Q-table CSV")->required();
    oracle_cmd->add_option("--tol", oracle_tol, "Bellman residual tolerance (default 1e-10)");

    std::string plot_input, plot_kind, plot_out;
    auto* plot_cmd = app.add_subcommand("plot", "Render a CSV artifact as a deterministic SVG");
    plot_cmd->add_option("--input", plot_input, "Input CSV")->required();
    plot_cmd->add_option("--kind", plot_kind, "One of: steps, error, path")->required();
    plot_cmd->add_option("--out", plot_out, "Output SVG")->required();

    std::string equiv_config;
    std::optional<std::uint64_t> equiv_seed;
    auto* equiv_cmd =
        app.add_subcommand("equiv", "Check that dynamics on/off learn identically");
    equiv_cmd->add_option("--config", equiv_config, "Training config JSON")->required();
    equiv_cmd->add_option("--seed", equiv_seed, "Override the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (train_cmd->parsed()) return cmd_train(train_args);
        if (eval_cmd->parsed()) return cmd_eval(eval_qtable, eval_config, eval_start);
        if (fly_cmd->parsed()) return cmd_fly(fly_gains, fly_step, fly_out, fly_duration, fly_radius);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_config, oracle_out, oracle_tol);
        if (plot_cmd->parsed()) return cmd_plot(plot_input, plot_kind, plot_out);
        if (equiv_cmd->parsed()) return cmd_equiv(equiv_config, equiv_seed);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
