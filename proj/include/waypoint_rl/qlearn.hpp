#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "waypoint_rl/action.hpp"
#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/rng.hpp"

namespace waypoint_rl {

struct LearnParams {
    double alpha = 0.1;    // learning rate, (0, 1]
    double gamma = 0.9;    // discount factor, [0, 1)
    double epsilon = 0.1;  // exploration probability, [0, 1]

    void validate() const {
        if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0)
            throw ValidationError("learn: alpha must be in (0,1], got " + std::to_string(alpha));
        if (!std::isfinite(gamma) || gamma < 0.0 || gamma >= 1.0)
            throw ValidationError("learn: gamma must be in [0,1), got " + std::to_string(gamma));
        if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon > 1.0)
            throw ValidationError("learn: epsilon must be in [0,1], got " + std::to_string(epsilon));
    }
};

// Dense state-action value table. Fresh tables are all zeros; dimensions
// are fixed at construction.
class QTable {
public:
    QTable() = default;

    QTable(int num_states, int num_actions)
        : num_states_(num_states),
          num_actions_(num_actions),
          values_(static_cast<std::size_t>(num_states) * num_actions, 0.0) {
        if (num_states < 1 || num_actions < 1)
            throw ValidationError("qtable: dimensions must be positive");
    }

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }

    double at(int s, int a) const { return values_[offset(s, a)]; }
    double& at(int s, int a) { return values_[offset(s, a)]; }

    double max_at(int s) const {
        double best = at(s, 0);
        for (int a = 1; a < num_actions_; ++a) best = std::max(best, at(s, a));
        return best;
    }

    // Lowest-index maximizer; the deterministic tie-break used by evaluation.
    int greedy_action(int s) const {
        int best = 0;
        for (int a = 1; a < num_actions_; ++a)
            if (at(s, a) > at(s, best)) best = a;
        return best;
    }

    bool operator==(const QTable&) const = default;

private:
    std::size_t offset(int s, int a) const {
        if (s < 0 || s >= num_states_ || a < 0 || a >= num_actions_)
            throw std::out_of_range("qtable: index (" + std::to_string(s) + "," +
                                    std::to_string(a) + ") outside " + std::to_string(num_states_) +
                                    "x" + std::to_string(num_actions_));
        return static_cast<std::size_t>(s) * num_actions_ + a;
    }

    int num_states_ = 0;
    int num_actions_ = 0;
    std::vector<double> values_;
};

// One-step value update toward the sampled Bellman target:
//   Q(s,a) <- (1-alpha)*Q(s,a) + alpha*(r + gamma*max_a' Q(s',a'))
// Returns the new Q(s,a). Touches no other entry.
inline double q_update(QTable& q, int s, Action a, double r, int s_next, const LearnParams& params) {
    const double target = r + params.gamma * q.max_at(s_next);
    double& cell = q.at(s, action_index(a));
    cell = (1.0 - params.alpha) * cell + params.alpha * target;
    return cell;
}

// Epsilon-greedy behavior policy: with probability epsilon a uniform random
// action, otherwise a maximizer of Q(s,.), ties broken uniformly at random
// from the same stream. Draw order is fixed (explore coin, then at most one
// index draw) so a run's action sequence is a pure function of the seed.
inline Action select_action(const QTable& q, int s, double epsilon, SplitMix64& rng) {
    const int n = q.num_actions();
    if (rng.uniform01() < epsilon)
        return static_cast<Action>(rng.uniform_below(static_cast<std::uint64_t>(n)));

    const double best = q.max_at(s);
    int ties = 0;
    int first = 0;
    for (int a = 0; a < n; ++a) {
        if (q.at(s, a) == best) {
            if (ties == 0) first = a;
            ++ties;
        }
    }
    if (ties == 1) return static_cast<Action>(first);

    auto pick = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(ties)));
    for (int a = first; a < n; ++a) {
        if (q.at(s, a) == best && pick-- == 0) return static_cast<Action>(a);
    }
    return static_cast<Action>(first);  // unreachable
}

}  // namespace waypoint_rl
