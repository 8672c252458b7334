#include <catch2/catch_amalgamated.hpp>

#include "waypoint_rl/rollout.hpp"
#include "waypoint_rl/value_iteration.hpp"

using namespace waypoint_rl;

namespace {
const GridWorld kFive{};
}

TEST_CASE("rollout under a converged table takes the 8-step shortest path") {
    const QTable q = value_iteration(kFive, 0.9, 1e-10);
    const auto path = greedy_rollout(q, kFive, {1, 1}, 100);
    REQUIRE(path.size() == 8);
    GridState s{1, 1};
    for (const auto& step : path) {
        REQUIRE(step.state == s);
        s = kFive.step(s, step.action);
    }
    REQUIRE(kFive.is_goal(s));
}

TEST_CASE("rollout from the goal is empty") {
    const QTable q(kFive.num_states(), kNumActions);
    REQUIRE(greedy_rollout(q, kFive, {5, 5}, 10).empty());
}

TEST_CASE("all-zero table rolls out max_steps of North") {
    const QTable q(kFive.num_states(), kNumActions);
    const auto path = greedy_rollout(q, kFive, {1, 1}, 10);
    REQUIRE(path.size() == 10);
    for (const auto& step : path) REQUIRE(step.action == Action::North);
    // clamped at the top edge after four moves
    REQUIRE(path.back().state == GridState{1, 5});
}

TEST_CASE("rollout validates its inputs") {
    const QTable q(kFive.num_states(), kNumActions);
    REQUIRE_THROWS_AS(greedy_rollout(q, kFive, {1, 1}, 0), ValidationError);
    REQUIRE_THROWS_AS(greedy_rollout(q, kFive, {0, 1}, 5), ValidationError);
}

TEST_CASE("rollout consumes no randomness and is repeatable") {
    const QTable q = value_iteration(kFive, 0.9, 1e-10);
    const auto a = greedy_rollout(q, kFive, {2, 3}, 50);
    const auto b = greedy_rollout(q, kFive, {2, 3}, 50);
    REQUIRE(a == b);
}
