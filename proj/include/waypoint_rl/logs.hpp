#pragma once

#include "waypoint_rl/action.hpp"
#include "waypoint_rl/gridworld.hpp"

namespace waypoint_rl {

// One transition of the episode loop, enough to replay and audit the run.
struct StepRecord {
    int episode = 0;  // 1-based
    int step = 0;     // 0-based within the episode
    GridState s;
    Action a = Action::North;
    double reward = 0.0;
    GridState s_next;
    double q_after = 0.0;     // Q(s,a) after the update
    double maneuver_s = 0.0;  // simulated flight time; 0 with dynamics disabled

    constexpr bool operator==(const StepRecord&) const = default;
};

struct EpisodeLog {
    int episode = 0;  // 1-based
    int steps = 0;
    double total_reward = 0.0;
    bool reached_goal = false;
    double duration_s = 0.0;  // summed simulated maneuver time; deterministic

    constexpr bool operator==(const EpisodeLog&) const = default;
};

}  // namespace waypoint_rl
