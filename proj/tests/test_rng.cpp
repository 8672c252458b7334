#include <catch2/catch_amalgamated.hpp>

#include "waypoint_rl/rng.hpp"

using namespace waypoint_rl;

TEST_CASE("identical seeds give identical streams") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform_below stays in range and covers all values") {
    SplitMix64 rng(7);
    std::array<int, 5> counts{};
    for (int i = 0; i < 5000; ++i) {
        const auto v = rng.uniform_below(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts) REQUIRE(c > 0);
}

TEST_CASE("uniform01 lies in [0,1)") {
    SplitMix64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("state round-trips through hex") {
    SplitMix64 rng(123456789);
    rng.next_u64();
    rng.next_u64();
    const auto hex = rng.state_hex();
    REQUIRE(hex.size() == 16);
    SplitMix64 copy = SplitMix64::from_state_hex(hex);
    REQUIRE(copy.state() == rng.state());
    for (int i = 0; i < 100; ++i) REQUIRE(copy.next_u64() == rng.next_u64());
}

TEST_CASE("bad hex state is rejected") {
    REQUIRE_THROWS_AS(SplitMix64::from_state_hex("xyz"), ParseError);
    REQUIRE_THROWS_AS(SplitMix64::from_state_hex("00112233445566zz"), ParseError);
}

TEST_CASE("uniform_below rejects zero") {
    SplitMix64 rng(1);
    REQUIRE_THROWS_AS(rng.uniform_below(0), ValidationError);
}
