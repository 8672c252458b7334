#pragma once

#include <cmath>
#include <string>

#include "waypoint_rl/gridworld.hpp"
#include "waypoint_rl/qlearn.hpp"

namespace waypoint_rl {

// Synchronous value iteration to the optimal table Q*. The goal is
// absorbing: episodes end there, so Q*(G,.) is fixed at 0 and excluded
// from the residual. Converges for gamma < 1; iterates until the sup-norm
// Bellman residual drops below tol.
inline QTable value_iteration(const GridWorld& env, double gamma, double tol) {
    env.validate();
    if (!std::isfinite(gamma) || gamma < 0.0 || gamma >= 1.0)
        throw ValidationError("value_iteration: gamma must be in [0,1), got " + std::to_string(gamma));
    if (!(tol > 0.0)) throw ValidationError("value_iteration: tol must be > 0");

    const int n = env.num_states();
    QTable q(n, kNumActions);
    QTable next(n, kNumActions);

    const long max_sweeps = 1000000;
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        double residual = 0.0;
        for (int si = 0; si < n; ++si) {
            const GridState s = env.state_at(si);
            if (env.is_goal(s)) continue;
            for (Action a : kAllActions) {
                const GridState s2 = env.step(s, a);
                const double cont = env.is_goal(s2) ? 0.0 : q.max_at(env.state_index(s2));
                const double target = env.reward(s2) + gamma * cont;
                residual = std::max(residual, std::abs(target - q.at(si, action_index(a))));
                next.at(si, action_index(a)) = target;
            }
        }
        std::swap(q, next);
        if (residual < tol) return q;
    }
    throw ValidationError("value_iteration: failed to converge");
}

}  // namespace waypoint_rl
