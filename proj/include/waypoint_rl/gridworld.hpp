#pragma once

#include <cstdlib>
#include <string>

#include "waypoint_rl/action.hpp"
#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/vec2.hpp"

namespace waypoint_rl {

inline constexpr double kGoalReward = 100.0;
inline constexpr double kStepPenalty = -1.0;

// 1-based grid cell, x in 1..W (east), y in 1..H (north).
struct GridState {
    int x = 1;
    int y = 1;

    constexpr bool operator==(const GridState&) const = default;
};

// Deterministic grid MDP: four compass moves, boundary clamping, +100 at
// the goal and -1 everywhere else. Cell centers double as metric waypoints
// spaced cell_spacing_m apart, with cell (1,1) at the origin.
struct GridWorld {
    int width = 5;
    int height = 5;
    GridState goal{5, 5};
    double cell_spacing_m = 1.0;
    double error_radius_m = 0.3;

    int num_states() const { return width * height; }

    bool in_bounds(GridState s) const {
        return s.x >= 1 && s.x <= width && s.y >= 1 && s.y <= height;
    }

    // Row-major over (x, y): index = (y-1)*W + (x-1).
    int state_index(GridState s) const {
        if (!in_bounds(s)) throw ValidationError("state_index: state out of bounds");
        return (s.y - 1) * width + (s.x - 1);
    }

    GridState state_at(int index) const {
        if (index < 0 || index >= num_states()) throw ValidationError("state_at: index out of bounds");
        return GridState{index % width + 1, index / width + 1};
    }

    // Adjacent cell in direction a; moves off the grid leave s unchanged.
    GridState step(GridState s, Action a) const {
        GridState next{s.x + action_dx(a), s.y + action_dy(a)};
        return in_bounds(next) ? next : s;
    }

    double reward(GridState s_next) const {
        return is_goal(s_next) ? kGoalReward : kStepPenalty;
    }

    bool is_goal(GridState s) const { return s == goal; }

    Vec2 waypoint_of(GridState s) const {
        return {(s.x - 1) * cell_spacing_m, (s.y - 1) * cell_spacing_m};
    }

    int manhattan_to_goal(GridState s) const {
        return std::abs(s.x - goal.x) + std::abs(s.y - goal.y);
    }

    void validate() const {
        if (width < 1 || height < 1)
            throw ValidationError("grid: width and height must be positive");
        if (!in_bounds(goal))
            throw ValidationError("grid: goal (" + std::to_string(goal.x) + "," +
                                  std::to_string(goal.y) + ") outside " + std::to_string(width) +
                                  "x" + std::to_string(height) + " grid");
        if (!(cell_spacing_m > 0.0))
            throw ValidationError("grid: cell_spacing_m must be > 0");
        if (!(error_radius_m > 0.0))
            throw ValidationError("grid: error_radius_m must be > 0");
        // Adjacent waypoints' acceptance circles must not overlap.
        if (!(error_radius_m < cell_spacing_m / 2.0))
            throw ValidationError("grid: error_radius_m must be < cell_spacing_m/2");
    }
};

}  // namespace waypoint_rl
