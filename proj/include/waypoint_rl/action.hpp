#pragma once

#include <array>
#include <optional>

namespace waypoint_rl {

// Compass actions in fixed index order. The order is part of every file
// format (CSV rows sort by it), so it must never change.
enum class Action : int {
    North = 0,
    East = 1,
    South = 2,
    West = 3,
};

inline constexpr int kNumActions = 4;

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::North, Action::East, Action::South, Action::West};

constexpr int action_index(Action a) { return static_cast<int>(a); }

// Grid offsets with x pointing east and y pointing north.
constexpr int action_dx(Action a) {
    switch (a) {
        case Action::East: return 1;
        case Action::West: return -1;
        default: return 0;
    }
}

constexpr int action_dy(Action a) {
    switch (a) {
        case Action::North: return 1;
        case Action::South: return -1;
        default: return 0;
    }
}

constexpr char action_letter(Action a) {
    switch (a) {
        case Action::North: return 'N';
        case Action::East: return 'E';
        case Action::South: return 'S';
        case Action::West: return 'W';
    }
    return '?';
}

constexpr std::optional<Action> action_from_letter(char c) {
    switch (c) {
        case 'N': return Action::North;
        case 'E': return Action::East;
        case 'S': return Action::South;
        case 'W': return Action::West;
        default: return std::nullopt;
    }
}

}  // namespace waypoint_rl
