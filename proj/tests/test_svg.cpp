#include <catch2/catch_amalgamated.hpp>

#include "waypoint_rl/svg.hpp"

using namespace waypoint_rl;

TEST_CASE("line chart output is deterministic") {
    PlotSeries series;
    for (int i = 1; i <= 40; ++i) {
        series.x.push_back(i);
        series.y.push_back(100.0 / i);
    }
    const std::string a = svg_line_chart(series, "Steps per episode", "episode", "steps");
    const std::string b = svg_line_chart(series, "Steps per episode", "episode", "steps");
    REQUIRE(a == b);
    REQUIRE(a.rfind("<svg", 0) == 0);
    REQUIRE(a.find("<polyline") != std::string::npos);
    REQUIRE(a.find("Steps per episode") != std::string::npos);
    REQUIRE(a.find("</svg>") != std::string::npos);
}

TEST_CASE("empty series are rejected") {
    REQUIRE_THROWS_AS(svg_line_chart({}, "t", "x", "y"), ValidationError);
    PlotSeries lopsided{{1.0, 2.0}, {1.0}};
    REQUIRE_THROWS_AS(svg_line_chart(lopsided, "t", "x", "y"), ValidationError);
    REQUIRE_THROWS_AS(svg_path_chart({}, {}, "t"), ValidationError);
}

TEST_CASE("titles are xml-escaped") {
    PlotSeries series{{0.0, 1.0}, {0.0, 1.0}};
    const std::string svg = svg_line_chart(series, "a < b & c", "x", "y");
    REQUIRE(svg.find("a &lt; b &amp; c") != std::string::npos);
    REQUIRE(svg.find("a < b") == std::string::npos);
}

TEST_CASE("flat series still render with a padded range") {
    PlotSeries series{{1.0, 2.0, 3.0}, {8.0, 8.0, 8.0}};
    const std::string svg = svg_line_chart(series, "flat", "x", "y");
    REQUIRE(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("path chart draws waypoints and endpoint markers") {
    std::vector<Vec2> path{{0.0, 0.0}, {0.5, 0.1}, {1.0, 0.0}, {1.0, 1.0}};
    std::vector<Vec2> waypoints{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
    const std::string svg = svg_path_chart(path, waypoints, "Flight path");
    REQUIRE(svg.find("#2ca02c") != std::string::npos);  // start marker
    REQUIRE(svg.find("#d62728") != std::string::npos);  // end marker
    REQUIRE(svg.find("#999999") != std::string::npos);  // waypoint rings
    REQUIRE(svg == svg_path_chart(path, waypoints, "Flight path"));
}
