#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "waypoint_rl/config.hpp"

using namespace waypoint_rl;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_json() { return to_json(TrainConfig{}); }

}  // namespace

TEST_CASE("config survives a json round-trip") {
    TrainConfig cfg;
    cfg.seed = 123456789012345ULL;
    cfg.env.width = 7;
    cfg.env.goal = {7, 2};
    cfg.learn.epsilon = 0.25;
    cfg.dynamics_enabled = true;
    const TrainConfig back = config_from_json(to_json(cfg));
    REQUIRE(to_json(back) == to_json(cfg));
    REQUIRE(config_fingerprint(back) == config_fingerprint(cfg));
}

TEST_CASE("shipped experiment configs parse and validate") {
    const fs::path dir = WAYPOINT_RL_CONFIG_DIR;
    const TrainConfig sim = load_train_config(dir / "paper_sim.json");
    sim.validate();
    REQUIRE(sim.env.width == 5);
    REQUIRE(sim.env.height == 5);
    REQUIRE(sim.env.goal == GridState{5, 5});
    REQUIRE(sim.start == GridState{1, 1});
    REQUIRE(sim.learn.alpha == 0.1);
    REQUIRE(sim.learn.gamma == 0.9);
    REQUIRE_FALSE(sim.dynamics_enabled);

    const TrainConfig real = load_train_config(dir / "paper_real.json");
    real.validate();
    REQUIRE(real.gains.kp == 0.8);
    REQUIRE(real.gains.ki == 0.0);
    REQUIRE(real.gains.kd == 0.9);
    REQUIRE(real.env.error_radius_m == 0.3);
    REQUIRE(real.dynamics_enabled);
}

TEST_CASE("validation rejects out-of-range parameters") {
    TrainConfig cfg;
    cfg.learn.gamma = 1.0;
    try {
        cfg.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(std::string(e.what()).find("gamma") != std::string::npos);
        REQUIRE(std::string(e.what()).find("[0,1)") != std::string::npos);
    }

    cfg = TrainConfig{};
    cfg.episodes = 0;
    REQUIRE_THROWS_AS(cfg.validate(), ValidationError);

    cfg = TrainConfig{};
    cfg.max_steps_per_episode = 0;
    REQUIRE_THROWS_AS(cfg.validate(), ValidationError);

    cfg = TrainConfig{};
    cfg.start = {9, 9};
    REQUIRE_THROWS_AS(cfg.validate(), ValidationError);

    cfg = TrainConfig{};
    cfg.fly_timeout_s = 0.0;
    REQUIRE_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("unknown and missing keys are rejected by name") {
    auto j = base_json();
    j["learn"]["alpha_typo"] = 0.5;
    try {
        config_from_json(j);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("alpha_typo") != std::string::npos);
    }

    j = base_json();
    j.erase("seed");
    try {
        config_from_json(j);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("seed") != std::string::npos);
    }

    j = base_json();
    j["env"].erase("goal_x");
    REQUIRE_THROWS_AS(config_from_json(j), ParseError);
}

TEST_CASE("fingerprint is stable and sensitive to every field") {
    const TrainConfig cfg;
    const std::string base = config_fingerprint(cfg);
    REQUIRE(base.size() == 16);
    REQUIRE(config_fingerprint(TrainConfig{}) == base);

    TrainConfig changed = cfg;
    changed.learn.gamma = 0.8;
    REQUIRE(config_fingerprint(changed) != base);

    changed = cfg;
    changed.seed += 1;
    REQUIRE(config_fingerprint(changed) != base);

    changed = cfg;
    changed.dynamics_enabled = !cfg.dynamics_enabled;
    REQUIRE(config_fingerprint(changed) != base);
}

TEST_CASE("missing config file reports the path") {
    try {
        load_train_config("/nonexistent/nothing.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("nothing.json") != std::string::npos);
    }
}
