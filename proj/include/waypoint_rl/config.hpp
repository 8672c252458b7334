#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/flight.hpp"
#include "waypoint_rl/gridworld.hpp"
#include "waypoint_rl/qlearn.hpp"

namespace waypoint_rl {

// Everything a training run depends on. Two configs with equal fingerprints
// produce identical runs.
struct TrainConfig {
    GridWorld env;
    LearnParams learn;
    PidGains gains;
    PlantParams plant;
    double fly_timeout_s = 30.0;
    GridState start{1, 1};
    int episodes = 200;
    int max_steps_per_episode = 100;
    std::uint64_t seed = 0;
    bool dynamics_enabled = false;

    void validate() const {
        env.validate();
        learn.validate();
        gains.validate();
        plant.validate();
        if (!(fly_timeout_s > 0.0)) throw ValidationError("config: fly_timeout_s must be > 0");
        if (!env.in_bounds(start)) throw ValidationError("config: start outside the grid");
        if (episodes < 1) throw ValidationError("config: episodes must be >= 1");
        if (max_steps_per_episode < 1)
            throw ValidationError("config: max_steps_per_episode must be >= 1");
    }
};

namespace detail {

inline void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> keys,
                         const std::string& where) {
    if (!obj.is_object()) throw ParseError("config: '" + where + "' must be an object");
    for (const char* k : keys)
        if (!obj.contains(k)) throw ParseError("config: missing key '" + where + "." + k + "'");
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (const char* want : keys) known = known || (k == want);
        if (!known) throw ParseError("config: unknown key '" + where + "." + k + "'");
    }
}

}  // namespace detail

inline nlohmann::json to_json(const TrainConfig& c) {
    return nlohmann::json{
        {"env",
         {{"width", c.env.width},
          {"height", c.env.height},
          {"goal_x", c.env.goal.x},
          {"goal_y", c.env.goal.y},
          {"cell_spacing_m", c.env.cell_spacing_m},
          {"error_radius_m", c.env.error_radius_m}}},
        {"learn", {{"alpha", c.learn.alpha}, {"gamma", c.learn.gamma}, {"epsilon", c.learn.epsilon}}},
        {"gains", {{"kp", c.gains.kp}, {"ki", c.gains.ki}, {"kd", c.gains.kd}}},
        {"plant",
         {{"tau_v_s", c.plant.tau_v_s}, {"v_max_mps", c.plant.v_max_mps}, {"dt_s", c.plant.dt_s}}},
        {"fly_timeout_s", c.fly_timeout_s},
        {"start", {{"x", c.start.x}, {"y", c.start.y}}},
        {"episodes", c.episodes},
        {"max_steps_per_episode", c.max_steps_per_episode},
        {"seed", c.seed},
        {"dynamics_enabled", c.dynamics_enabled},
    };
}

inline TrainConfig config_from_json(const nlohmann::json& j) {
    detail::require_keys(j,
                         {"env", "learn", "gains", "plant", "fly_timeout_s", "start", "episodes",
                          "max_steps_per_episode", "seed", "dynamics_enabled"},
                         "config");
    detail::require_keys(j.at("env"),
                         {"width", "height", "goal_x", "goal_y", "cell_spacing_m", "error_radius_m"},
                         "env");
    detail::require_keys(j.at("learn"), {"alpha", "gamma", "epsilon"}, "learn");
    detail::require_keys(j.at("gains"), {"kp", "ki", "kd"}, "gains");
    detail::require_keys(j.at("plant"), {"tau_v_s", "v_max_mps", "dt_s"}, "plant");
    detail::require_keys(j.at("start"), {"x", "y"}, "start");

    TrainConfig c;
    try {
        const auto& env = j.at("env");
        c.env.width = env.at("width").get<int>();
        c.env.height = env.at("height").get<int>();
        c.env.goal = {env.at("goal_x").get<int>(), env.at("goal_y").get<int>()};
        c.env.cell_spacing_m = env.at("cell_spacing_m").get<double>();
        c.env.error_radius_m = env.at("error_radius_m").get<double>();

        const auto& learn = j.at("learn");
        c.learn.alpha = learn.at("alpha").get<double>();
        c.learn.gamma = learn.at("gamma").get<double>();
        c.learn.epsilon = learn.at("epsilon").get<double>();

        const auto& gains = j.at("gains");
        c.gains.kp = gains.at("kp").get<double>();
        c.gains.ki = gains.at("ki").get<double>();
        c.gains.kd = gains.at("kd").get<double>();

        const auto& plant = j.at("plant");
        c.plant.tau_v_s = plant.at("tau_v_s").get<double>();
        c.plant.v_max_mps = plant.at("v_max_mps").get<double>();
        c.plant.dt_s = plant.at("dt_s").get<double>();

        c.fly_timeout_s = j.at("fly_timeout_s").get<double>();
        c.start = {j.at("start").at("x").get<int>(), j.at("start").at("y").get<int>()};
        c.episodes = j.at("episodes").get<int>();
        c.max_steps_per_episode = j.at("max_steps_per_episode").get<int>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.dynamics_enabled = j.at("dynamics_enabled").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return c;
}

inline TrainConfig load_train_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("config: " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

// Content hash of the resolved config (FNV-1a 64 over the canonical JSON
// dump, whose keys are sorted). Guards checkpoints against resuming under
// different parameters.
inline std::string config_fingerprint(const TrainConfig& c) {
    const std::string canon = to_json(c).dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace waypoint_rl
