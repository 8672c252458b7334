// Step-response comparison of the position controller: proportional-only
// gains versus the tuned PD gains, on the default plant.

#include <cmath>
#include <iostream>

#include "waypoint_rl/flight.hpp"

int main() {
    using namespace waypoint_rl;

    const PlantParams plant;
    const PlantState start{{0.0, 0.0}, {0.0, 0.0}, 0.0};
    const Vec2 waypoint{1.0, 0.0};

    for (const PidGains& gains : {PidGains{0.8, 0.0, 0.0}, PidGains{0.8, 0.0, 0.9}}) {
        const Trajectory traj = step_response(start, waypoint, gains, plant, 40.0);
        const double os = overshoot(traj, start.position, waypoint);
        const double settle = settling_time(traj, waypoint, 0.3);
        std::cout << "kp=" << gains.kp << " ki=" << gains.ki << " kd=" << gains.kd
                  << "  overshoot=" << os << " m  settling=";
        if (std::isinf(settle)) std::cout << "never";
        else std::cout << settle << " s";
        std::cout << "\n";
    }
    return 0;
}
