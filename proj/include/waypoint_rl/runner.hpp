#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "waypoint_rl/config.hpp"
#include "waypoint_rl/flight.hpp"
#include "waypoint_rl/gridworld.hpp"
#include "waypoint_rl/logs.hpp"
#include "waypoint_rl/qlearn.hpp"
#include "waypoint_rl/rng.hpp"
#include "waypoint_rl/rollout.hpp"
#include "waypoint_rl/store.hpp"

namespace waypoint_rl {

struct EpisodeOutcome {
    EpisodeLog log;
    bool aborted = false;  // a maneuver timed out; never reported as success
    int abort_step = -1;
};

// One episode of the coupled loop: epsilon-greedy action choice, discrete
// transition, optional continuous maneuver to the new cell's waypoint,
// reward, value update. Terminates at the goal or after the step cap.
//
// The continuous layer cannot change what is learned: the discrete
// transition and reward are fixed before the maneuver flies, and the rng
// is consumed by action draws only. A maneuver that fails to reach its
// waypoint within the timeout aborts the episode; the value update for
// that step is skipped.
inline EpisodeOutcome run_episode(QTable& q, const TrainConfig& cfg, int episode, SplitMix64& rng,
                                  std::vector<StepRecord>* records = nullptr,
                                  std::vector<Trajectory>* trajectories = nullptr) {
    const GridWorld& env = cfg.env;
    GridState s = cfg.start;
    PlantState plant{env.waypoint_of(s), {0.0, 0.0}, 0.0};

    EpisodeOutcome out;
    out.log.episode = episode;

    int k = 0;
    for (; !env.is_goal(s) && k < cfg.max_steps_per_episode; ++k) {
        const Action a = select_action(q, env.state_index(s), cfg.learn.epsilon, rng);
        const GridState s_next = env.step(s, a);

        double maneuver_s = 0.0;
        if (cfg.dynamics_enabled) {
            auto fly = fly_to(plant, env.waypoint_of(s_next), cfg.gains, env.error_radius_m,
                              cfg.plant, cfg.fly_timeout_s);
            if (trajectories) trajectories->push_back(fly.trajectory);
            if (!fly.reached) {
                out.aborted = true;
                out.abort_step = k;
                out.log.steps = k;
                out.log.reached_goal = false;
                return out;
            }
            plant = fly.state;
            maneuver_s = fly.trajectory.back().t;
            out.log.duration_s += maneuver_s;
        }

        const double r = env.reward(s_next);
        const double q_after =
            q_update(q, env.state_index(s), a, r, env.state_index(s_next), cfg.learn);
        if (records) records->push_back({episode, k, s, a, r, s_next, q_after, maneuver_s});
        out.log.total_reward += r;
        s = s_next;
    }

    out.log.steps = k;
    out.log.reached_goal = env.is_goal(s);
    return out;
}

// Serialized training state: enough to continue a run exactly where it
// stopped. The fingerprint must match the resolved config on resume.
struct Checkpoint {
    QTable qtable;
    int next_episode = 1;
    std::uint64_t rng_state = 0;
    std::string config_hash;
};

inline Checkpoint initial_checkpoint(const TrainConfig& cfg) {
    return {QTable(cfg.env.num_states(), kNumActions), 1, SplitMix64(cfg.seed).state(),
            config_fingerprint(cfg)};
}

inline void save_checkpoint(const Checkpoint& cp, const GridWorld& env,
                            const std::filesystem::path& path) {
    nlohmann::json rows = nlohmann::json::array();
    for (int y = 1; y <= env.height; ++y) {
        for (int x = 1; x <= env.width; ++x) {
            const int s = env.state_index({x, y});
            for (Action a : kAllActions) {
                rows.push_back({{"x", x},
                                {"y", y},
                                {"action", std::string(1, action_letter(a))},
                                // full precision: resumed training must be bit-identical
                                {"q", cp.qtable.at(s, action_index(a))}});
            }
        }
    }
    SplitMix64 rng;
    rng.set_state(cp.rng_state);
    const nlohmann::json j{{"config_hash", cp.config_hash},
                           {"next_episode", cp.next_episode},
                           {"rng_state", rng.state_hex()},
                           {"qtable", rows}};
    atomic_write_file(path, j.dump(2) + "\n");
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path, const GridWorld& env) {
    std::ifstream in(path);
    if (!in) throw ParseError("checkpoint: cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("checkpoint: " + path.string() + ": " + e.what());
    }

    Checkpoint cp;
    cp.qtable = QTable(env.num_states(), kNumActions);
    try {
        cp.config_hash = j.at("config_hash").get<std::string>();
        cp.next_episode = j.at("next_episode").get<int>();
        cp.rng_state = SplitMix64::from_state_hex(j.at("rng_state").get<std::string>()).state();
        const auto& rows = j.at("qtable");
        if (!rows.is_array() || static_cast<int>(rows.size()) != env.num_states() * kNumActions)
            throw ParseError("checkpoint: " + path.string() + ": qtable must have " +
                             std::to_string(env.num_states() * kNumActions) + " entries");
        for (const auto& row : rows) {
            const GridState cell{row.at("x").get<int>(), row.at("y").get<int>()};
            if (!env.in_bounds(cell))
                throw ParseError("checkpoint: " + path.string() + ": cell outside grid");
            const std::string letter = row.at("action").get<std::string>();
            if (letter.size() != 1 || !action_from_letter(letter[0]))
                throw ParseError("checkpoint: " + path.string() + ": invalid action '" + letter + "'");
            cp.qtable.at(env.state_index(cell), action_index(*action_from_letter(letter[0]))) =
                row.at("q").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("checkpoint: " + path.string() + ": " + e.what());
    }
    if (cp.next_episode < 1)
        throw ParseError("checkpoint: " + path.string() + ": next_episode must be >= 1");
    return cp;
}

enum class TrainStatus {
    completed,  // ran every requested episode
    aborted,    // a maneuver timed out; see aborted_episode
    stopped,    // the episode callback requested a stop
};

struct TrainResult {
    QTable qtable;
    std::vector<EpisodeLog> episodes;  // episodes run in this process
    TrainStatus status = TrainStatus::completed;
    int aborted_episode = 0;
    // First episode after which the greedy path from start is shortest
    // possible; 0 if that never happened in this run.
    int first_optimal_episode = 0;
};

// Post-episode view handed to the callback; references stay valid only for
// the duration of the call.
struct EpisodeEvent {
    const EpisodeLog& log;
    const std::vector<StepRecord>& steps;
    const std::vector<Trajectory>& trajectories;  // empty when dynamics disabled
    const QTable& qtable;
    std::uint64_t rng_state;
    int next_episode;
};

// Return false to stop training at this episode boundary.
using EpisodeCallback = std::function<bool(const EpisodeEvent&)>;

// Runs episodes start..N (or resume->next_episode..N) on a single rng
// stream seeded from cfg.seed. Deterministic: the result is a pure
// function of cfg (and the resume point).
inline TrainResult train(const TrainConfig& cfg, const EpisodeCallback& on_episode = {},
                         const Checkpoint* resume = nullptr) {
    cfg.validate();
    const std::string hash = config_fingerprint(cfg);

    QTable q(cfg.env.num_states(), kNumActions);
    SplitMix64 rng(cfg.seed);
    int start_episode = 1;
    if (resume) {
        if (resume->config_hash != hash)
            throw ValidationError("resume: checkpoint fingerprint " + resume->config_hash +
                                  " does not match config fingerprint " + hash);
        if (resume->qtable.num_states() != q.num_states() ||
            resume->qtable.num_actions() != q.num_actions())
            throw ValidationError("resume: checkpoint table dimensions do not match environment");
        q = resume->qtable;
        rng.set_state(resume->rng_state);
        start_episode = resume->next_episode;
    }

    TrainResult result;
    std::vector<StepRecord> steps;
    std::vector<Trajectory> trajectories;
    for (int ep = start_episode; ep <= cfg.episodes; ++ep) {
        steps.clear();
        trajectories.clear();
        const auto outcome = run_episode(q, cfg, ep, rng, &steps,
                                         cfg.dynamics_enabled ? &trajectories : nullptr);
        if (outcome.aborted) {
            result.status = TrainStatus::aborted;
            result.aborted_episode = ep;
            break;
        }
        result.episodes.push_back(outcome.log);
        if (result.first_optimal_episode == 0 && greedy_path_is_optimal(q, cfg.env, cfg.start))
            result.first_optimal_episode = ep;
        if (on_episode) {
            const EpisodeEvent event{outcome.log, steps, trajectories, q, rng.state(), ep + 1};
            if (!on_episode(event)) {
                result.status = TrainStatus::stopped;
                break;
            }
        }
    }
    result.qtable = std::move(q);
    return result;
}

// Validates the hybrid design: with every maneuver succeeding, enabling the
// continuous layer must not change the learned outcome. Runs the same
// config twice (dynamics on / off, same seed) and compares the per-step
// (s, a, r, s_next) streams and the final tables bit-exactly. Aborted runs
// are never equivalent.
inline bool equivalence_check(const TrainConfig& cfg) {
    struct Transition {
        int s;
        int a;
        double r;
        int s_next;
        bool operator==(const Transition&) const = default;
    };

    auto run = [&cfg](bool dynamics) {
        TrainConfig c = cfg;
        c.dynamics_enabled = dynamics;
        std::vector<Transition> stream;
        TrainResult res = train(c, [&](const EpisodeEvent& ev) {
            for (const auto& st : ev.steps)
                stream.push_back({c.env.state_index(st.s), action_index(st.a), st.reward,
                                  c.env.state_index(st.s_next)});
            return true;
        });
        return std::pair{std::move(stream), std::move(res)};
    };

    auto [stream_on, res_on] = run(true);
    auto [stream_off, res_off] = run(false);
    if (res_on.status != TrainStatus::completed || res_off.status != TrainStatus::completed)
        return false;
    return stream_on == stream_off && res_on.qtable == res_off.qtable;
}

// Persists the artifacts of one training run:
//   <dir>/config.json, episodes.csv, qtable.csv, checkpoint.json,
//   trajectories/ep{N}_step{K}.csv (dynamics runs only).
// Episode rows are flushed as they complete and the checkpoint is written
// atomically after each row, so a killed process resumes from the last
// completed episode. On resume, rows at or past the resume point are
// dropped before appending, which keeps the final file byte-identical to
// an uninterrupted run.
class RunWriter {
public:
    RunWriter(std::filesystem::path dir, TrainConfig cfg)
        : dir_(std::move(dir)), cfg_(std::move(cfg)), hash_(config_fingerprint(cfg_)) {}

    void start(const Checkpoint* resume) {
        namespace fs = std::filesystem;
        fs::create_directories(dir_);
        if (cfg_.dynamics_enabled) fs::create_directories(dir_ / "trajectories");
        atomic_write_file(dir_ / "config.json", to_json(cfg_).dump(2) + "\n");

        const fs::path episodes_path = dir_ / "episodes.csv";
        std::string content = std::string(kEpisodesHeader) + "\n";
        if (resume && fs::exists(episodes_path)) {
            for (const auto& log : load_episodes(episodes_path))
                if (log.episode < resume->next_episode) content += episode_csv_row(log);
        }
        atomic_write_file(episodes_path, content);

        episodes_.open(episodes_path, std::ios::app | std::ios::binary);
        if (!episodes_) throw IoError("run: cannot open " + episodes_path.string());
    }

    bool on_episode(const EpisodeEvent& ev) {
        episodes_ << episode_csv_row(ev.log);
        episodes_.flush();
        if (!episodes_.good()) throw IoError("run: write failed for " + (dir_ / "episodes.csv").string());

        if (cfg_.dynamics_enabled) {
            for (std::size_t k = 0; k < ev.trajectories.size(); ++k) {
                const auto name =
                    "ep" + std::to_string(ev.log.episode) + "_step" + std::to_string(k) + ".csv";
                save_trajectory(ev.trajectories[k], dir_ / "trajectories" / name);
            }
        }
        save_checkpoint({ev.qtable, ev.next_episode, ev.rng_state, hash_}, cfg_.env,
                        dir_ / "checkpoint.json");
        return true;
    }

    void finalize(const QTable& q) { save_qtable(q, cfg_.env, dir_ / "qtable.csv"); }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    TrainConfig cfg_;
    std::string hash_;
    std::ofstream episodes_;
};

}  // namespace waypoint_rl
