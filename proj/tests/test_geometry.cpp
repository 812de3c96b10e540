#include <doctest.h>

#include "vtcs/geometry.hpp"

using namespace vtcs;

TEST_CASE("angle_between basics") {
    CHECK(angle_between({1, 0}, {1, 0}) == doctest::Approx(0.0));
    CHECK(angle_between({1, 0}, {0, 1}) == doctest::Approx(M_PI / 2));
    CHECK(angle_between({1, 0}, {-1, 0}) == doctest::Approx(M_PI));
    CHECK(angle_between({0, 0}, {1, 0}) == 0.0);  // degenerate convention
}

TEST_CASE("segment intersection") {
    auto hit = segment_intersection({0, 0}, {10, 0}, {5, -1}, {5, 1});
    REQUIRE(hit.has_value());
    CHECK(hit->x == doctest::Approx(5.0));
    CHECK(hit->y == doctest::Approx(0.0));

    CHECK(!segment_intersection({0, 0}, {10, 0}, {5, 1}, {5, 2}).has_value());
    CHECK(!segment_intersection({0, 0}, {1, 0}, {5, -1}, {5, 1}).has_value());

    // touching endpoint counts
    CHECK(segment_intersection({0, 0}, {5, 0}, {5, -1}, {5, 1}).has_value());

    // collinear overlap reports a point of the overlap
    auto col = segment_intersection({0, 0}, {10, 0}, {4, 0}, {6, 0});
    REQUIRE(col.has_value());
    CHECK(col->y == 0.0);
    CHECK(col->x >= 4.0);
    CHECK(col->x <= 6.0);
}

#include <random>

TEST_CASE("segment intersection vs dense sampling") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 60; ++trial) {
        const Vec2 p1{u(gen), u(gen)}, p2{u(gen), u(gen)};
        const Vec2 q1{u(gen), u(gen)}, q2{u(gen), u(gen)};
        const auto hit = segment_intersection(p1, p2, q1, q2);
        // minimal distance between the segments by parametric scan
        double best = 1e9;
        const int n = 150;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const Vec2 a = p1 + (p2 - p1) * (double(i) / n);
                const Vec2 b = q1 + (q2 - q1) * (double(j) / n);
                best = std::min(best, dist(a, b));
            }
        if (hit) CHECK(best < 0.15);
        else CHECK(best > 1e-9);
    }
}
