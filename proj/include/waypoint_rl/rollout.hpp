#pragma once

#include <vector>

#include "waypoint_rl/gridworld.hpp"
#include "waypoint_rl/qlearn.hpp"

namespace waypoint_rl {

struct RolloutStep {
    GridState state;  // state the action was taken from
    Action action;

    constexpr bool operator==(const RolloutStep&) const = default;
};

// Evaluates the learned policy: fully greedy (epsilon = 0) with the
// deterministic lowest-index tie-break, stepping until the goal or
// max_steps. No randomness is consumed.
inline std::vector<RolloutStep> greedy_rollout(const QTable& q, const GridWorld& env,
                                               GridState start, int max_steps) {
    if (max_steps <= 0) throw ValidationError("greedy_rollout: max_steps must be > 0");
    if (!env.in_bounds(start)) throw ValidationError("greedy_rollout: start out of bounds");

    std::vector<RolloutStep> path;
    GridState s = start;
    while (!env.is_goal(s) && static_cast<int>(path.size()) < max_steps) {
        const auto a = static_cast<Action>(q.greedy_action(env.state_index(s)));
        path.push_back({s, a});
        s = env.step(s, a);
    }
    return path;
}

// True when the greedy path from start reaches the goal in exactly the
// Manhattan distance, i.e. the policy is shortest-path optimal from there.
inline bool greedy_path_is_optimal(const QTable& q, const GridWorld& env, GridState start) {
    const int m = env.manhattan_to_goal(start);
    const auto path = greedy_rollout(q, env, start, m + 1);
    return static_cast<int>(path.size()) == m;
}

}  // namespace waypoint_rl
