#include <doctest.h>

#include "fixtures.hpp"
#include "vtcs/timing.hpp"

using namespace vtcs;

namespace {

// Test-only reference: scan tau on a fine lattice for the first time the disc
// could have covered the distance to the moving player.
std::optional<double> brute_intercept(Vec2 p, Vec2 v, Vec2 disc, double v_disc) {
    for (double tau = 0.0; tau <= 30.0; tau += 1e-4) {
        const Vec2 meet = p + v * tau;
        if (dist(meet, disc) <= v_disc * tau + 1e-9) return tau;
    }
    return std::nullopt;
}

ObjectState runner(Vec2 p, Vec2 v, int id = 2) {
    ObjectState o;
    o.id = id;
    o.cls = ObjectClass::Offense;
    o.p = p;
    o.v = v;
    return o;
}

}  // namespace

TEST_CASE("intercept") {
    SUBCASE("stationary receiver 24 m out at 12 m/s: tau = 2") {
        const auto hit = intercept(runner({24.0, 0.0}, {0.0, 0.0}), {0.0, 0.0}, 12.0);
        REQUIRE(hit.has_value());
        CHECK(hit->tau == doctest::Approx(2.0));
        CHECK(hit->theta == doctest::Approx(0.0));
    }
    SUBCASE("colocated receiver: tau = 0") {
        const auto hit = intercept(runner({5.0, 5.0}, {1.0, 0.0}), {5.0, 5.0}, 12.0);
        REQUIRE(hit.has_value());
        CHECK(hit->tau == 0.0);
    }
    SUBCASE("receiver running away along the lane") {
        // d = (10, 0), v = (5, 0): (25 - 144) tau^2 + 100 tau + 100 = 0
        const auto hit = intercept(runner({10.0, 0.0}, {5.0, 0.0}), {0.0, 0.0}, 12.0);
        REQUIRE(hit.has_value());
        const double a = 25.0 - 144.0, b = 100.0, c = 100.0;
        const double expect = (-b - std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
        CHECK(hit->tau == doctest::Approx(expect));
        // residual of the defining equation
        const double res = a * hit->tau * hit->tau + b * hit->tau + c;
        CHECK(std::abs(res) < 1e-6);
    }
    SUBCASE("slow disc cannot catch a faster receiver") {
        CHECK(!intercept(runner({10.0, 0.0}, {5.0, 0.0}), {0.0, 0.0}, 3.0).has_value());
    }
    SUBCASE("matches a fine-step time scan on random geometries") {
        for (int trial = 0; trial < 300; ++trial) {
            const Vec2 p{fixtures::uniform(0.0, 94.0), fixtures::uniform(0.0, 37.0)};
            const Vec2 v{fixtures::uniform(-8.0, 8.0), fixtures::uniform(-8.0, 8.0)};
            const Vec2 disc{fixtures::uniform(0.0, 94.0), fixtures::uniform(0.0, 37.0)};
            const auto hit = intercept(runner(p, v), disc, 12.0);
            const auto ref = brute_intercept(p, v, disc, 12.0);
            REQUIRE(hit.has_value() == ref.has_value());
            if (hit) {
                CHECK(hit->tau == doctest::Approx(*ref).epsilon(0.0).scale(1.0).epsilon(2e-4));
                const double a = dot(v, v) - 144.0;
                const Vec2 d = p - disc;
                const double res =
                    a * hit->tau * hit->tau + 2.0 * dot(d, v) * hit->tau + dot(d, d);
                CHECK(std::abs(res) < 1e-6);
            }
        }
    }
}

TEST_CASE("reachable_area") {
    const Grid grid = Grid::full_field(1.0);
    TimingParams params;
    SUBCASE("stationary receiver collapses to the nearest cell") {
        const auto area = reachable_area(runner({24.3, 10.6}, {0.0, 0.0}), {0.0, 10.6}, params, grid);
        REQUIRE(area.has_value());
        CHECK(area->radius == doctest::Approx(0.0));
        REQUIRE(area->cells.size() == 1);
        CHECK(area->cells[0] == grid.nearest({24.3, 10.6}));
    }
    SUBCASE("radius is half speed times interception time") {
        // receiver at 24 m running perpendicular at 4 m/s; center = p + v tau
        const auto hit = intercept(runner({40.0, 18.0}, {0.0, 4.0}), {16.0, 18.0}, 12.0);
        REQUIRE(hit.has_value());
        const auto area = reachable_area(runner({40.0, 18.0}, {0.0, 4.0}), {16.0, 18.0}, params, grid);
        REQUIRE(area.has_value());
        CHECK(area->radius == doctest::Approx(0.5 * 4.0 * hit->tau));
        CHECK(area->center.x == doctest::Approx(40.0));
        CHECK(area->center.y == doctest::Approx(18.0 + 4.0 * hit->tau));
    }
    SUBCASE("cell count approximates the circle area") {
        const auto area = reachable_area(runner({47.0, 18.5}, {4.0, 0.0}), {10.0, 18.5}, params, grid);
        REQUIRE(area.has_value());
        REQUIRE(area->radius > 2.0);
        const double expect = M_PI * area->radius * area->radius;
        CHECK(double(area->cells.size()) == doctest::Approx(expect).epsilon(0.15));
        for (int c : area->cells)
            CHECK(dist(grid.center(c), area->center) <= area->radius);
    }
    SUBCASE("cells are clipped to the field") {
        // fast receiver near the sideline: circle spills past y = 37
        const auto area = reachable_area(runner({47.0, 35.0}, {0.0, 4.0}), {47.0, 5.0}, params, grid);
        REQUIRE(area.has_value());
        for (int c : area->cells) {
            const Vec2 cc = grid.center(c);
            CHECK(cc.y <= 37.0);
            CHECK(cc.y >= 0.0);
        }
    }
    SUBCASE("no interception yields no area") {
        CHECK(!reachable_area(runner({40.0, 18.0}, {11.9, 0.0}), {0.0, 18.0},
                              TimingParams{3.0}, grid)
                   .has_value());
    }
}

TEST_CASE("v_frame") {
    const Grid grid = Grid::full_field(1.0);
    auto t = fixtures::base_table(1);
    auto& fr = t.at(0);
    fr.by_id(1).holder = true;
    fr.by_id(1).p = {50.0, 18.0};
    fr.by_id(15).p = {50.0, 18.0};
    CounterfactualScenario sc;
    sc.xi = 0;
    sc.target_id = 2;
    sc.defender_id = 9;
    sc.span_begin = 0;
    sc.span_end = 0;
    sc.table = t;

    SUBCASE("target holding the disc scores zero") {
        auto t2 = t;
        t2.at(0).by_id(1).holder = false;
        t2.at(0).by_id(2).holder = true;
        t2.at(0).by_id(15).p = t2.at(0).by_id(2).p;
        CounterfactualScenario sc2 = sc;
        sc2.table = t2;
        CHECK(v_frame(sc2, 0, grid) == 0.0);
    }
    SUBCASE("no interception scores zero") {
        TimingParams slow;
        slow.v_disc = 0.5;
        auto t2 = t;
        t2.at(0).by_id(2).v = {5.0, 0.0};  // outruns the slow disc
        t2.at(0).by_id(2).p = {70.0, 30.0};
        CounterfactualScenario sc2 = sc;
        sc2.table = t2;
        CHECK(v_frame(sc2, 0, grid, ControlParams{}, slow) == 0.0);
    }
    SUBCASE("equals the mean wUPPCF over the exact reachable cell set") {
        auto t2 = t;
        t2.at(0).by_id(2).p = {60.0, 25.0};
        t2.at(0).by_id(2).v = {3.0, 1.0};
        CounterfactualScenario sc2 = sc;
        sc2.table = t2;
        const auto& f0 = t2.at(0);
        const auto area = reachable_area(f0.by_id(2), f0.disc().p, TimingParams{}, grid);
        REQUIRE(area.has_value());
        const auto field = wuppcf(f0, grid, area->cells, ControlParams{});
        const int ps = field.player_slot(2);
        REQUIRE(ps >= 0);
        double sum = 0.0;
        for (double v : field.wuppcf[ps]) sum += v;
        CHECK(v_frame(sc2, 0, grid) == doctest::Approx(sum / field.wuppcf[ps].size()));
        CHECK(v_frame(sc2, 0, grid) > 0.0);
        CHECK(v_frame(sc2, 0, grid) <= 1.0);
    }
}

TEST_CASE("v_scenario") {
    const TimingParams params;
    SUBCASE("constant series scores the constant") {
        const std::vector<double> series(40, 0.3);
        const auto s = v_scenario(series, 100, params);
        CHECK(s.value == doctest::Approx(0.3));
        CHECK(s.argmax_frame == 100);
    }
    SUBCASE("single spike contributes 1/15 to the best window") {
        std::vector<double> series(40, 0.0);
        series[20] = 1.0;
        const auto s = v_scenario(series, 0, params);
        CHECK(s.value == doctest::Approx(1.0 / 15.0));
        // earliest window containing index 20 starts at 6
        CHECK(s.argmax_frame == 6);
    }
    SUBCASE("short series is rejected") {
        try {
            v_scenario(std::vector<double>(15, 0.1), 0, params);
            FAIL("expected SpanTooShort");
        } catch (const Error& e) {
            CHECK(e.code == ErrorCode::SpanTooShort);
        }
    }
    SUBCASE("matches an exhaustive window scan on random series") {
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 16 + int(fixtures::uniform(0.0, 120.0));
            std::vector<double> series(n);
            for (double& x : series) x = fixtures::uniform(0.0, 1.0);
            const auto s = v_scenario(series, 7, params);
            double best = -1.0;
            int best_t = -1;
            for (int t = 0; t + params.window <= n; ++t) {
                double sum = 0.0;
                for (int k = 0; k < params.window; ++k) sum += series[t + k];
                if (sum / params.window > best) {
                    best = sum / params.window;
                    best_t = t;
                }
            }
            CHECK(s.value == doctest::Approx(best));
            CHECK(s.argmax_frame == 7 + best_t);
        }
    }
}

TEST_CASE("v_timing") {
    std::vector<int> xis;
    for (int xi = -15; xi <= 15; ++xi) xis.push_back(xi);
    SUBCASE("actual 0.407 vs best counterfactual 0.751") {
        std::vector<ScenarioScore> scores(31);
        for (int i = 0; i < 31; ++i) scores[i].value = 0.1;
        scores[15].value = 0.407;  // xi = 0
        scores[4].value = 0.751;   // xi = -11
        const auto rep = v_timing(xis, scores);
        CHECK(rep.v_timing == doctest::Approx(0.407 - 0.751));
        CHECK(rep.best_xi == -11);
        CHECK(rep.has_actual);
    }
    SUBCASE("all scenarios equal gives exactly zero") {
        std::vector<ScenarioScore> scores(31);
        for (auto& s : scores) s.value = 0.42;
        CHECK(v_timing(xis, scores).v_timing == 0.0);
    }
    SUBCASE("actual strictly greatest gives a positive margin") {
        std::vector<ScenarioScore> scores(31);
        for (int i = 0; i < 31; ++i) scores[i].value = 0.2 + 0.001 * i;
        scores[15].value = 0.9;
        const auto rep = v_timing(xis, scores);
        CHECK(rep.v_timing > 0.0);
        CHECK(rep.v_timing == doctest::Approx(0.9 - (0.2 + 0.001 * 30)));
    }
    SUBCASE("uniform shift of every score leaves the margin unchanged") {
        std::vector<ScenarioScore> a(31), b(31);
        for (int i = 0; i < 31; ++i) {
            a[i].value = fixtures::uniform(0.0, 1.0);
            b[i].value = a[i].value + 0.25;
        }
        CHECK(v_timing(xis, a).v_timing == doctest::Approx(v_timing(xis, b).v_timing));
    }
}
