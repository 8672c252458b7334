#include <catch2/catch_amalgamated.hpp>

#include "waypoint_rl/gridworld.hpp"

using namespace waypoint_rl;

namespace {
const GridWorld kFive{};  // 5x5, goal (5,5), spacing 1.0, radius 0.3
}

TEST_CASE("moves off the west edge stay still") {
    REQUIRE(kFive.step({1, 1}, Action::West) == GridState{1, 1});
}

TEST_CASE("interior moves go to the adjacent cell") {
    REQUIRE(kFive.step({3, 3}, Action::North) == GridState{3, 4});
    REQUIRE(kFive.step({3, 3}, Action::East) == GridState{4, 3});
    REQUIRE(kFive.step({3, 3}, Action::South) == GridState{3, 2});
    REQUIRE(kFive.step({3, 3}, Action::West) == GridState{2, 3});
}

TEST_CASE("moves off the far corner stay still") {
    REQUIRE(kFive.step({5, 5}, Action::East) == GridState{5, 5});
    REQUIRE(kFive.step({5, 5}, Action::North) == GridState{5, 5});
}

TEST_CASE("step never leaves bounds") {
    for (int x = 1; x <= 5; ++x)
        for (int y = 1; y <= 5; ++y)
            for (Action a : kAllActions) REQUIRE(kFive.in_bounds(kFive.step({x, y}, a)));
}

TEST_CASE("opposite moves cancel in the interior") {
    for (int x = 2; x <= 4; ++x)
        for (int y = 2; y <= 4; ++y) {
            const GridState s{x, y};
            REQUIRE(kFive.step(kFive.step(s, Action::North), Action::South) == s);
            REQUIRE(kFive.step(kFive.step(s, Action::East), Action::West) == s);
        }
}

TEST_CASE("reward is +100 at the goal and -1 elsewhere") {
    REQUIRE(kFive.reward({5, 5}) == 100.0);
    REQUIRE(kFive.reward({4, 5}) == -1.0);

    GridWorld origin_goal = kFive;
    origin_goal.goal = {1, 1};
    REQUIRE(origin_goal.reward({1, 1}) == 100.0);

    for (int x = 1; x <= 5; ++x)
        for (int y = 1; y <= 5; ++y) {
            const double r = kFive.reward({x, y});
            REQUIRE((r == 100.0 || r == -1.0));
            REQUIRE((r == 100.0) == kFive.is_goal({x, y}));
        }
}

TEST_CASE("goal test is exact integer equality") {
    REQUIRE(kFive.is_goal({5, 5}));
    REQUIRE_FALSE(kFive.is_goal({1, 5}));
    REQUIRE_FALSE(kFive.is_goal({5, 1}));
}

TEST_CASE("waypoints are the metric cell centers with (1,1) at the origin") {
    REQUIRE(kFive.waypoint_of({1, 1}) == Vec2{0.0, 0.0});
    REQUIRE(kFive.waypoint_of({5, 5}) == Vec2{4.0, 4.0});

    GridWorld half = kFive;
    half.cell_spacing_m = 0.5;
    half.error_radius_m = 0.2;
    REQUIRE(half.waypoint_of({3, 2}) == Vec2{1.0, 0.5});
}

TEST_CASE("state indexing is row-major over (x,y) and invertible") {
    REQUIRE(kFive.state_index({1, 1}) == 0);
    REQUIRE(kFive.state_index({2, 1}) == 1);
    REQUIRE(kFive.state_index({1, 2}) == 5);
    REQUIRE(kFive.state_index({5, 5}) == 24);
    for (int i = 0; i < kFive.num_states(); ++i) REQUIRE(kFive.state_index(kFive.state_at(i)) == i);
}

TEST_CASE("invalid environments are rejected") {
    GridWorld g = kFive;
    g.goal = {6, 5};
    REQUIRE_THROWS_AS(g.validate(), ValidationError);

    g = kFive;
    g.cell_spacing_m = 0.0;
    REQUIRE_THROWS_AS(g.validate(), ValidationError);

    g = kFive;
    g.error_radius_m = 0.5;  // touches the acceptance circle of the neighbor
    REQUIRE_THROWS_AS(g.validate(), ValidationError);

    g = kFive;
    g.width = 0;
    REQUIRE_THROWS_AS(g.validate(), ValidationError);

    REQUIRE_NOTHROW(kFive.validate());
}

TEST_CASE("manhattan distance to goal") {
    REQUIRE(kFive.manhattan_to_goal({1, 1}) == 8);
    REQUIRE(kFive.manhattan_to_goal({5, 5}) == 0);
    REQUIRE(kFive.manhattan_to_goal({5, 1}) == 4);
}
