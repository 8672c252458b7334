#pragma once

#include <cmath>

namespace waypoint_rl {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
constexpr Vec2 operator*(Vec2 v, double k) { return k * v; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Scales v down so its norm does not exceed max_norm.
inline Vec2 clamp_norm(Vec2 v, double max_norm) {
    const double n = norm(v);
    if (n <= max_norm || n == 0.0) return v;
    return (max_norm / n) * v;
}

}  // namespace waypoint_rl
