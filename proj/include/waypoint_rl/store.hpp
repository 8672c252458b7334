#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/flight.hpp"
#include "waypoint_rl/gridworld.hpp"
#include "waypoint_rl/logs.hpp"
#include "waypoint_rl/qlearn.hpp"

namespace waypoint_rl {

// All text artifacts are UTF-8, LF line endings, '.' decimal separator.
// Reals in CSVs are quantized to 6 decimals at save time, which makes
// save -> load -> save byte-stable.

inline std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("store: cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out.good()) throw IoError("store: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline int parse_int(const std::string& s, const std::string& where) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(where + ": expected integer, got '" + s + "'");
    return v;
}

inline double parse_double(const std::string& s, const std::string& where) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(where + ": expected number, got '" + s + "'");
    return v;
}

// Reads all lines, stripping a trailing '\r' if present.
inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("store: cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Q-table CSV: header x,y,action,q; action in {N,E,S,W}; rows sorted by
// (y, x, action index); q with 6 decimals.

inline constexpr const char* kQTableHeader = "x,y,action,q";

inline std::string qtable_to_csv(const QTable& q, const GridWorld& env) {
    if (q.num_states() != env.num_states() || q.num_actions() != kNumActions)
        throw ValidationError("qtable csv: table dimensions do not match environment");
    std::string out(kQTableHeader);
    out.push_back('\n');
    for (int y = 1; y <= env.height; ++y) {
        for (int x = 1; x <= env.width; ++x) {
            const int s = env.state_index({x, y});
            for (Action a : kAllActions) {
                out += std::to_string(x);
                out.push_back(',');
                out += std::to_string(y);
                out.push_back(',');
                out.push_back(action_letter(a));
                out.push_back(',');
                out += format_fixed6(q.at(s, action_index(a)));
                out.push_back('\n');
            }
        }
    }
    return out;
}

inline void save_qtable(const QTable& q, const GridWorld& env, const std::filesystem::path& path) {
    atomic_write_file(path, qtable_to_csv(q, env));
}

inline QTable load_qtable(const std::filesystem::path& path, const GridWorld& env) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || lines[0] != kQTableHeader)
        throw ParseError(path.string() + ":1: expected header '" + std::string(kQTableHeader) + "'");

    QTable q(env.num_states(), kNumActions);
    std::vector<bool> seen(static_cast<std::size_t>(env.num_states()) * kNumActions, false);
    int rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() && i == lines.size() - 1) break;  // trailing newline
        const std::string where = path.string() + ":" + std::to_string(i + 1);
        const auto fields = detail::split_csv_line(lines[i]);
        if (fields.size() != 4) throw ParseError(where + ": expected 4 fields, got " +
                                                 std::to_string(fields.size()));
        const int x = detail::parse_int(fields[0], where);
        const int y = detail::parse_int(fields[1], where);
        if (fields[2].size() != 1 || !action_from_letter(fields[2][0]))
            throw ParseError(where + ": invalid action token '" + fields[2] + "'");
        const Action a = *action_from_letter(fields[2][0]);
        const double value = detail::parse_double(fields[3], where);
        if (!env.in_bounds({x, y}))
            throw ParseError(where + ": cell (" + std::to_string(x) + "," + std::to_string(y) +
                             ") outside " + std::to_string(env.width) + "x" +
                             std::to_string(env.height) + " grid");
        const std::size_t slot =
            static_cast<std::size_t>(env.state_index({x, y})) * kNumActions + action_index(a);
        if (seen[slot]) throw ParseError(where + ": duplicate entry for cell/action");
        seen[slot] = true;
        q.at(env.state_index({x, y}), action_index(a)) = value;
        ++rows;
    }
    if (rows != env.num_states() * kNumActions)
        throw ParseError(path.string() + ": expected " +
                         std::to_string(env.num_states() * kNumActions) + " rows, got " +
                         std::to_string(rows));
    return q;
}

// ---------------------------------------------------------------------------
// Episode CSV: one row per episode, appended and flushed as training runs.

inline constexpr const char* kEpisodesHeader = "episode,steps,total_reward,reached_goal,duration_s";

inline std::string episode_csv_row(const EpisodeLog& log) {
    std::string out = std::to_string(log.episode);
    out.push_back(',');
    out += std::to_string(log.steps);
    out.push_back(',');
    out += format_fixed6(log.total_reward);
    out.push_back(',');
    out += log.reached_goal ? "true" : "false";
    out.push_back(',');
    out += format_fixed6(log.duration_s);
    out.push_back('\n');
    return out;
}

inline std::vector<EpisodeLog> load_episodes(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || lines[0] != kEpisodesHeader)
        throw ParseError(path.string() + ":1: expected header '" + std::string(kEpisodesHeader) + "'");
    std::vector<EpisodeLog> logs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() && i == lines.size() - 1) break;
        const std::string where = path.string() + ":" + std::to_string(i + 1);
        const auto f = detail::split_csv_line(lines[i]);
        if (f.size() != 5) throw ParseError(where + ": expected 5 fields");
        EpisodeLog log;
        log.episode = detail::parse_int(f[0], where);
        log.steps = detail::parse_int(f[1], where);
        log.total_reward = detail::parse_double(f[2], where);
        if (f[3] == "true") log.reached_goal = true;
        else if (f[3] == "false") log.reached_goal = false;
        else throw ParseError(where + ": reached_goal must be 'true' or 'false', got '" + f[3] + "'");
        log.duration_s = detail::parse_double(f[4], where);
        logs.push_back(log);
    }
    return logs;
}

// ---------------------------------------------------------------------------
// Trajectory CSV: fixed-dt samples of one maneuver.

inline constexpr const char* kTrajectoryHeader = "t,x,y,vx,vy,ux,uy,wx,wy";

inline std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out(kTrajectoryHeader);
    out.push_back('\n');
    for (const auto& s : traj) {
        out += format_fixed6(s.t);
        for (double v : {s.position.x, s.position.y, s.velocity.x, s.velocity.y, s.command.x,
                         s.command.y, s.waypoint.x, s.waypoint.y}) {
            out.push_back(',');
            out += format_fixed6(v);
        }
        out.push_back('\n');
    }
    return out;
}

inline void save_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    atomic_write_file(path, trajectory_to_csv(traj));
}

inline Trajectory load_trajectory(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || lines[0] != kTrajectoryHeader)
        throw ParseError(path.string() + ":1: expected header '" + std::string(kTrajectoryHeader) + "'");
    Trajectory traj;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() && i == lines.size() - 1) break;
        const std::string where = path.string() + ":" + std::to_string(i + 1);
        const auto f = detail::split_csv_line(lines[i]);
        if (f.size() != 9) throw ParseError(where + ": expected 9 fields");
        TrajectorySample s;
        s.t = detail::parse_double(f[0], where);
        s.position = {detail::parse_double(f[1], where), detail::parse_double(f[2], where)};
        s.velocity = {detail::parse_double(f[3], where), detail::parse_double(f[4], where)};
        s.command = {detail::parse_double(f[5], where), detail::parse_double(f[6], where)};
        s.waypoint = {detail::parse_double(f[7], where), detail::parse_double(f[8], where)};
        traj.push_back(s);
    }
    return traj;
}

}  // namespace waypoint_rl
