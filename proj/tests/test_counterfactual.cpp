#include <doctest.h>

#include "fixtures.hpp"
#include "vtcs/counterfactual.hpp"
#include "vtcs/synth.hpp"

using namespace vtcs;

namespace {

MovementSequence cut_sequence(const FrameTable& table) {
    const auto seqs = detect_sequences(table);
    REQUIRE(!seqs.empty());
    return seqs.front();
}

}  // namespace

TEST_CASE("mean_velocity") {
    SUBCASE("constant velocity") {
        auto t = fixtures::base_table(40);
        for (int f = 0; f < 40; ++f) t.at(f).by_id(2).v = {2.0, 0.0};
        const auto v = mean_velocity(t, 2, 30);
        CHECK(v.x == doctest::Approx(2.0));
        CHECK(v.y == doctest::Approx(0.0));
    }
    SUBCASE("alternating velocity equals the direct sum") {
        auto t = fixtures::base_table(40);
        Vec2 oracle_sum;
        for (int f = 0; f < 40; ++f)
            t.at(f).by_id(2).v = (f % 2 == 0) ? Vec2{1.0, 0.0} : Vec2{3.0, 0.0};
        for (int k = 1; k <= 15; ++k) oracle_sum += t.at(30 - k).by_id(2).v;
        const auto v = mean_velocity(t, 2, 30);
        CHECK(v.x == doctest::Approx(oracle_sum.x / 15.0));
        CHECK(v.x >= 1.0);
        CHECK(v.x <= 3.0);
    }
    SUBCASE("stationary player") {
        const auto t = fixtures::base_table(40);
        CHECK(mean_velocity(t, 2, 30) == Vec2{0.0, 0.0});
    }
    SUBCASE("short history falls back and flags") {
        auto t = fixtures::base_table(40);
        for (int f = 0; f < 40; ++f) t.at(f).by_id(2).v = {2.0, 0.0};
        bool truncated = false;
        const auto v = mean_velocity(t, 2, 5, &truncated);
        CHECK(truncated);
        CHECK(v.x == doctest::Approx(2.0));
    }
}

TEST_CASE("shift_early") {
    // 10-frame hand fixture: stationary at (10,10) until frame 4, then runs
    // +1 m per frame (frames 5..9 at x = 11..15)
    auto t = fixtures::base_table(10);
    for (int f = 0; f < 10; ++f)
        t.at(f).by_id(2).p = {10.0 + std::max(0, f - 4), 10.0};
    MovementSequence seq{2, 4, 4, 9, 1};

    SUBCASE("xi = -1 replays the run one frame earlier") {
        const auto sc = shift_early(t, seq, -1, 0, 9);
        // untouched up to t0 + xi = 3
        for (int f = 0; f <= 3; ++f)
            CHECK(sc.table.at(f).by_id(2).p.x == doctest::Approx(10.0));
        // p(t) = p(t+1) + [p(3) - p(4)] = p(t+1) since both anchors are 10
        for (int f = 4; f <= 8; ++f)
            CHECK(sc.table.at(f).by_id(2).p.x ==
                  doctest::Approx(t.at(f + 1).by_id(2).p.x));
        // past the original end, hold the last translated position
        CHECK(sc.table.at(9).by_id(2).p.x == doctest::Approx(15.0));
    }
    SUBCASE("shift before possession start is rejected") {
        MovementSequence early{2, 0, 0, 9, 1};
        try {
            shift_early(t, early, -3, 0, 9);
            FAIL("expected ShiftBeforePossession");
        } catch (const Error& e) {
            CHECK(e.code == ErrorCode::ShiftBeforePossession);
        }
    }
}

TEST_CASE("shift_late") {
    SUBCASE("vbar = 0 holds position then replays untranslated") {
        auto t = fixtures::base_table(40);
        for (int f = 0; f < 40; ++f)
            t.at(f).by_id(2).p = {10.0 + std::max(0, f - 20), 10.0};
        // stationary before t0 = 20, so vbar = 0
        MovementSequence seq{2, 20, 20, 39, 1};
        const auto sc = shift_late(t, seq, 5, 0, 39);
        CHECK(sc.vbar_target == Vec2{0.0, 0.0});
        for (int f = 20; f <= 25; ++f)
            CHECK(sc.table.at(f).by_id(2).p.x == doctest::Approx(10.0));
        for (int f = 26; f <= 39; ++f)
            CHECK(sc.table.at(f).by_id(2).p.x ==
                  doctest::Approx(t.at(f - 5).by_id(2).p.x));
    }
    SUBCASE("vbar = (1,0), xi = 3 advances 1/15 m per gap frame") {
        auto t = fixtures::base_table(60);
        // moving at 1 m/s until t0 = 30, then a hard cut
        for (int f = 0; f < 60; ++f) {
            t.at(f).by_id(2).p = {10.0 + f / kFps, 10.0};
            t.at(f).by_id(2).v = {1.0, 0.0};
        }
        MovementSequence seq{2, 30, 30, 59, 1};
        const auto sc = shift_late(t, seq, 3, 0, 59);
        CHECK(sc.vbar_target.x == doctest::Approx(1.0));
        const double x0 = t.at(30).by_id(2).p.x;
        CHECK(sc.table.at(31).by_id(2).p.x == doctest::Approx(x0 + 1.0 / 15.0));
        CHECK(sc.table.at(32).by_id(2).p.x == doctest::Approx(x0 + 2.0 / 15.0));
        CHECK(sc.table.at(33).by_id(2).p.x == doctest::Approx(x0 + 3.0 / 15.0));
        // delta p = vbar * xi / fps = 0.2
        CHECK(sc.table.at(40).by_id(2).p.x ==
              doctest::Approx(t.at(37).by_id(2).p.x + 0.2));
    }
}

TEST_CASE("piece-boundary continuity is exact") {
    const auto table = generate(fixtures::cut_play(90, 40));
    const auto seq = cut_sequence(table);
    const auto poss = table.possession_of(seq.t0);
    for (int xi = kXiMin; xi <= kXiMax; ++xi) {
        if (xi == 0) continue;
        const Vec2 vbar = mean_velocity(table, seq.player_id, seq.t0);
        auto pos = [&](int t) {
            return detail::shifted_position(table, seq.player_id, seq.t0, xi, vbar, t,
                                            poss.last_frame, table.fps);
        };
        if (xi < 0) {
            // both branch formulas at the boundary t0 + xi
            const Vec2 lhs = table.at(seq.t0 + xi).by_id(seq.player_id).p;
            const Vec2 delta = table.at(seq.t0 + xi).by_id(seq.player_id).p -
                               table.at(seq.t0).by_id(seq.player_id).p;
            const Vec2 rhs = table.at(seq.t0).by_id(seq.player_id).p + delta;
            CHECK(dist(lhs, rhs) <= 1e-9);
            CHECK(dist(pos(seq.t0 + xi), lhs) <= 1e-9);
        } else {
            const Vec2 p0 = table.at(seq.t0).by_id(seq.player_id).p;
            CHECK(dist(pos(seq.t0), p0) <= 1e-9);
            const Vec2 gap_end = p0 + vbar * (double(xi) / table.fps);
            const Vec2 replay_start = table.at(seq.t0).by_id(seq.player_id).p +
                                      vbar * (double(xi) / table.fps);
            CHECK(dist(gap_end, replay_start) <= 1e-9);
            CHECK(dist(pos(seq.t0 + xi), gap_end) <= 1e-9);
        }
    }
}

TEST_CASE("build_sweep") {
    const auto table = generate(fixtures::cut_play(120, 50));
    const auto seq = cut_sequence(table);
    const auto sweep = build_sweep(table, seq);

    SUBCASE("sweep covers all 31 shifts") {
        CHECK(sweep.size() == 31);
        for (int k = 0; k < 31; ++k) CHECK(sweep[k].xi == kXiMin + k);
    }
    SUBCASE("xi = 0 scenario is bit-identical to the original play") {
        const auto& sc = sweep[15];
        REQUIRE(sc.xi == 0);
        for (int f = sc.span_begin; f <= sc.span_end; ++f)
            for (int id = 1; id <= kObjectsPerFrame; ++id) {
                CHECK(sc.table.at(f).by_id(id).p == table.at(f).by_id(id).p);
                CHECK(sc.table.at(f).by_id(id).v == table.at(f).by_id(id).v);
            }
    }
    SUBCASE("non-shifted players are bit-unchanged in every scenario") {
        for (const auto& sc : sweep)
            for (int f = sc.span_begin; f <= sc.span_end; ++f)
                for (int id = 1; id <= kObjectsPerFrame; ++id) {
                    if (id == sc.target_id || id == sc.defender_id) continue;
                    CHECK(sc.table.at(f).by_id(id).p == table.at(f).by_id(id).p);
                }
    }
    SUBCASE("defender comes from the closest pairing at t0") {
        CHECK(sweep[0].defender_id == table.at(seq.t0).by_id(seq.player_id).closest);
        CHECK(sweep[0].defender_id >= 8);
    }
    SUBCASE("inter-frame displacement stays under the sprint bound") {
        const double bound = kMaxFeasibleSpeed / table.fps + 1e-6;
        for (const auto& sc : sweep)
            for (int f = sc.span_begin + 1; f <= sc.span_end; ++f)
                for (int id = 1; id <= kObjectsPerFrame - 1; ++id)
                    CHECK(dist(sc.table.at(f).by_id(id).p,
                               sc.table.at(f - 1).by_id(id).p) <= bound);
    }
}
