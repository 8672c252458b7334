#pragma once

#include <cstdint>
#include <string>

#include "waypoint_rl/errors.hpp"

namespace waypoint_rl {

// Deterministic 64-bit stream (splitmix64). Chosen over <random> engines
// because the draw functions below are fully specified, so two builds on
// different standard libraries produce bit-identical action sequences, and
// the whole generator state serializes to a single hex word for checkpoints.
class SplitMix64 {
public:
    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n). Lemire's multiply-shift with rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw ValidationError("uniform_below: n must be positive");
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = -n % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t s) { state_ = s; }

    std::string state_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t s = state_;
        for (int i = 15; i >= 0; --i) {
            out[i] = digits[s & 0xF];
            s >>= 4;
        }
        return out;
    }

    static SplitMix64 from_state_hex(const std::string& hex) {
        if (hex.size() != 16) throw ParseError("rng state: expected 16 hex characters, got '" + hex + "'");
        std::uint64_t s = 0;
        for (char c : hex) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw ParseError(std::string("rng state: invalid hex character '") + c + "'");
            s = (s << 4) | static_cast<std::uint64_t>(d);
        }
        SplitMix64 rng;
        rng.set_state(s);
        return rng;
    }

private:
    std::uint64_t state_ = 0;
};

}  // namespace waypoint_rl
