// Smallest end-to-end use of the library: train on the 5x5 grid, then walk
// the learned greedy path.

#include <iostream>

#include "waypoint_rl/rollout.hpp"
#include "waypoint_rl/runner.hpp"

int main() {
    using namespace waypoint_rl;

    TrainConfig cfg;  // 5x5 grid, goal (5,5), start (1,1), alpha 0.1, gamma 0.9
    cfg.episodes = 200;
    cfg.seed = 1;

    const TrainResult result = train(cfg);
    std::cout << "episodes: " << result.episodes.size() << "\n";
    std::cout << "first episode: " << result.episodes.front().steps << " steps\n";
    std::cout << "last episode:  " << result.episodes.back().steps << " steps\n";
    if (result.first_optimal_episode > 0)
        std::cout << "greedy path first optimal after episode " << result.first_optimal_episode
                  << "\n";

    std::cout << "greedy path from start:\n";
    for (const auto& step : greedy_rollout(result.qtable, cfg.env, cfg.start, 100))
        std::cout << "  (" << step.state.x << "," << step.state.y << ") "
                  << action_letter(step.action) << "\n";
    return 0;
}
