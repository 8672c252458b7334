#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/vec2.hpp"

namespace waypoint_rl {

// Per-axis anti-windup bound on the accumulated error integral (m*s).
inline constexpr double kIntegralClamp = 2.0;

struct PlantState {
    Vec2 position;   // m, inertial frame
    Vec2 velocity;   // m/s, inertial frame
    double yaw = 0;  // rad

    constexpr bool operator==(const PlantState&) const = default;
};

struct PidGains {
    double kp = 0.8;
    double ki = 0.0;
    double kd = 0.9;

    void validate() const {
        if (!std::isfinite(kp) || !std::isfinite(ki) || !std::isfinite(kd) ||
            kp < 0.0 || ki < 0.0 || kd < 0.0)
            throw ValidationError("gains: kp, ki, kd must be finite and >= 0");
    }
};

struct PidState {
    Vec2 integral;    // accumulated error, clamped per axis
    Vec2 prev_error;  // for the backward-difference derivative
    bool initialized = false;

    void reset() { *this = PidState{}; }
};

// Velocity-command plant: commanded speed passes through a first-order
// actuator lag tau_v_s, then integrates kinematically. Position-to-command
// is second order, so pure proportional control overshoots.
struct PlantParams {
    double tau_v_s = 3.0;    // actuator time constant
    double v_max_mps = 1.5;  // speed limit applied to the command
    double dt_s = 0.02;      // fixed integration step

    void validate() const {
        if (!(tau_v_s > 0.0) || !(v_max_mps > 0.0) || !(dt_s > 0.0))
            throw ValidationError("plant: tau_v_s, v_max_mps, dt_s must be > 0");
        if (!(dt_s < tau_v_s / 2.0))
            throw ValidationError("plant: dt_s must be < tau_v_s/2, got dt=" +
                                  std::to_string(dt_s) + " tau=" + std::to_string(tau_v_s));
    }
};

struct TrajectorySample {
    double t = 0;   // s, multiples of dt
    Vec2 position;  // m
    Vec2 velocity;  // m/s
    Vec2 command;   // m/s, inertial-frame PID output (0 on the final sample)
    Vec2 waypoint;  // m, active setpoint
};

using Trajectory = std::vector<TrajectorySample>;

// One PID evaluation: u = kp*e + ki*I + kd*de/dt. The integral is clamped
// per axis; the derivative is a backward difference on the error, forced to
// zero on the first call after a reset.
inline Vec2 pid_step(PidState& pid, Vec2 error, const PidGains& gains, double dt) {
    if (!(dt > 0.0)) throw ValidationError("pid_step: dt must be > 0");
    if (!is_finite(error)) throw SimulationError("pid_step: non-finite error (plant divergence)");

    pid.integral.x = std::clamp(pid.integral.x + error.x * dt, -kIntegralClamp, kIntegralClamp);
    pid.integral.y = std::clamp(pid.integral.y + error.y * dt, -kIntegralClamp, kIntegralClamp);

    Vec2 derivative{0.0, 0.0};
    if (pid.initialized) derivative = (1.0 / dt) * (error - pid.prev_error);

    pid.prev_error = error;
    pid.initialized = true;

    return gains.kp * error + gains.ki * pid.integral + gains.kd * derivative;
}

// Rotates an inertial-frame command into the body frame (rotation by -yaw).
inline Vec2 inertial_to_body(Vec2 u, double yaw) {
    const double c = std::cos(yaw);
    const double s = std::sin(yaw);
    return {u.x * c + u.y * s, -u.x * s + u.y * c};
}

// Advances the plant one fixed step: the commanded velocity is speed-limited,
// the actual velocity relaxes toward it with first-order lag, and position
// integrates the updated velocity. Yaw is unchanged.
inline PlantState plant_step(PlantState state, Vec2 u_body, const PlantParams& params) {
    const Vec2 u = clamp_norm(u_body, params.v_max_mps);
    state.velocity = state.velocity + (params.dt_s / params.tau_v_s) * (u - state.velocity);
    state.position = state.position + params.dt_s * state.velocity;
    return state;
}

struct FlyResult {
    PlantState state;
    Trajectory trajectory;
    bool reached = false;
};

// One discrete maneuver: closed-loop PID waypoint tracking at fixed dt until
// the position is within radius of the waypoint, or until timeout. PID state
// is fresh per maneuver. The terminal sample carries a zero command.
inline FlyResult fly_to(PlantState state, Vec2 waypoint, const PidGains& gains, double radius,
                        const PlantParams& params, double timeout_s) {
    if (!(radius > 0.0)) throw ValidationError("fly_to: radius must be > 0");
    if (!(timeout_s > 0.0)) throw ValidationError("fly_to: timeout must be > 0");
    params.validate();

    PidState pid;
    Trajectory traj;
    for (long i = 0;; ++i) {
        const double t = static_cast<double>(i) * params.dt_s;
        if (norm(state.position - waypoint) <= radius) {
            traj.push_back({t, state.position, state.velocity, {0.0, 0.0}, waypoint});
            return {state, std::move(traj), true};
        }
        if (t >= timeout_s) {
            traj.push_back({t, state.position, state.velocity, {0.0, 0.0}, waypoint});
            return {state, std::move(traj), false};
        }
        const Vec2 u = pid_step(pid, waypoint - state.position, gains, params.dt_s);
        traj.push_back({t, state.position, state.velocity, u, waypoint});
        state = plant_step(state, inertial_to_body(u, state.yaw), params);
    }
}

// Open-ended tracking run for controller tuning studies: same loop as
// fly_to but without the early stop, so overshoot past the waypoint and
// settling behavior are observable.
inline Trajectory step_response(PlantState state, Vec2 waypoint, const PidGains& gains,
                                const PlantParams& params, double duration_s) {
    if (!(duration_s > 0.0)) throw ValidationError("step_response: duration must be > 0");
    params.validate();

    PidState pid;
    Trajectory traj;
    const long n = std::lround(duration_s / params.dt_s);
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * params.dt_s;
        const Vec2 u = pid_step(pid, waypoint - state.position, gains, params.dt_s);
        traj.push_back({t, state.position, state.velocity, u, waypoint});
        state = plant_step(state, inertial_to_body(u, state.yaw), params);
    }
    traj.push_back({static_cast<double>(n) * params.dt_s, state.position, state.velocity,
                    {0.0, 0.0}, waypoint});
    return traj;
}

// Maximum excursion past the waypoint along the start->waypoint axis,
// floored at zero.
inline double overshoot(const Trajectory& traj, Vec2 start, Vec2 waypoint) {
    if (traj.empty()) throw ValidationError("overshoot: empty trajectory");
    const Vec2 span = waypoint - start;
    const double len = norm(span);
    if (len == 0.0) throw ValidationError("overshoot: start equals waypoint, axis undefined");
    const Vec2 axis = (1.0 / len) * span;

    double worst = 0.0;
    for (const auto& sample : traj)
        worst = std::max(worst, dot(sample.position - waypoint, axis));
    return worst;
}

// Earliest sample time after which the position stays within radius of the
// waypoint for the rest of the trajectory; +infinity if it never settles.
inline double settling_time(const Trajectory& traj, Vec2 waypoint, double radius) {
    if (traj.empty()) throw ValidationError("settling_time: empty trajectory");
    long last_outside = -1;
    for (long i = 0; i < static_cast<long>(traj.size()); ++i)
        if (norm(traj[i].position - waypoint) > radius) last_outside = i;
    if (last_outside < 0) return traj.front().t;
    if (last_outside == static_cast<long>(traj.size()) - 1)
        return std::numeric_limits<double>::infinity();
    return traj[last_outside + 1].t;
}

}  // namespace waypoint_rl
