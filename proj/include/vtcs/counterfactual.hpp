#pragma once

#include <vector>

#include "vtcs/detect.hpp"
#include "vtcs/types.hpp"

namespace vtcs {

inline constexpr int kXiMin = -15;
inline constexpr int kXiMax = 15;

// One temporally shifted scenario: the target receiver and their marking
// defender replay the cut xi frames earlier (xi < 0) or later (xi > 0);
// everyone else is untouched.
struct CounterfactualScenario {
    int xi = 0;
    int target_id = 0;
    int defender_id = 0;
    int span_begin = 0;  // evaluation span, inclusive
    int span_end = 0;
    FrameTable table;    // trajectories over [span_begin, span_end]
    Vec2 vbar_target;    // mean pre-initiation velocity
    Vec2 vbar_defender;
    bool truncated_history = false;  // fewer than 15 frames of pre-t0 history
};

// Mean velocity over the 15 frames before t0; falls back to whatever history
// exists inside the possession, flagging the truncation.
inline Vec2 mean_velocity(const FrameTable& table, int player_id, int t0,
                          bool* truncated = nullptr) {
    const auto poss = table.possession_of(t0);
    const int first = std::max(t0 - 15, poss.first_frame);
    if (truncated) *truncated = (t0 - 15 < poss.first_frame);
    Vec2 sum;
    int n = 0;
    for (int f = first; f < t0; ++f) {
        sum += table.at(f).by_id(player_id).v;
        ++n;
    }
    if (n == 0) return {0.0, 0.0};
    return sum / double(n);
}

namespace detail {

// Position of one shifted player at frame t.
//   xi < 0: replay |xi| frames early, translated so the path is continuous
//           at t0+xi; past the original end, hold the last translated point.
//   xi > 0: hold course at vbar through the gap (t0, t0+xi], then replay the
//           original cut delayed by xi with offset vbar*xi/fps.
inline Vec2 shifted_position(const FrameTable& table, int player_id, int t0, int xi,
                             const Vec2& vbar, int t, int last_frame, double fps) {
    if (xi == 0) return table.at(t).by_id(player_id).p;
    if (xi < 0) {
        if (t <= t0 + xi) return table.at(t).by_id(player_id).p;
        const Vec2 delta =
            table.at(t0 + xi).by_id(player_id).p - table.at(t0).by_id(player_id).p;
        const int src = std::min(t - xi, last_frame);
        return table.at(src).by_id(player_id).p + delta;
    }
    // xi > 0
    if (t <= t0) return table.at(t).by_id(player_id).p;
    const Vec2 p0 = table.at(t0).by_id(player_id).p;
    if (t <= t0 + xi) return p0 + vbar * (double(t - t0) / fps);
    const Vec2 delta = vbar * (double(xi) / fps);
    return table.at(t - xi).by_id(player_id).p + delta;
}

// Central differences on the scenario's own positions, one-sided at the
// span edges; keeps kinematics consistent across spliced boundaries.
inline void recompute_derivatives(FrameTable& table, int player_id, int begin, int end) {
    const double dt = 1.0 / table.fps;
    const int n = end - begin + 1;
    if (n < 2) return;
    std::vector<Vec2> p(n), v(n);
    for (int k = 0; k < n; ++k) p[k] = table.at(begin + k).by_id(player_id).p;
    auto diff = [&](const std::vector<Vec2>& src, int k) {
        if (k == 0) return (src[1] - src[0]) / dt;
        if (k == n - 1) return (src[n - 1] - src[n - 2]) / dt;
        return (src[k + 1] - src[k - 1]) / (2.0 * dt);
    };
    for (int k = 0; k < n; ++k) v[k] = diff(p, k);
    for (int k = 0; k < n; ++k) {
        auto& o = table.at(begin + k).by_id(player_id);
        o.v = v[k];
        o.a = diff(v, k);
    }
}

inline CounterfactualScenario build_scenario(const FrameTable& table,
                                             const MovementSequence& seq, int xi,
                                             int span_begin, int span_end) {
    const auto poss = table.possession_of(seq.t0);
    if (seq.t0 + std::min(xi, 0) < poss.first_frame)
        throw Error(ErrorCode::ShiftBeforePossession,
                    "xi=" + std::to_string(xi) + " shifts t0 before possession start");

    CounterfactualScenario sc;
    sc.xi = xi;
    sc.target_id = seq.player_id;
    sc.defender_id = table.at(seq.t0).by_id(seq.player_id).closest;
    sc.span_begin = span_begin;
    sc.span_end = span_end;
    sc.table.fps = table.fps;
    for (int f = span_begin; f <= span_end; ++f) sc.table.push_frame(table.at(f));

    bool trunc_t = false, trunc_d = false;
    sc.vbar_target = mean_velocity(table, sc.target_id, seq.t0, &trunc_t);
    if (sc.defender_id > 0)
        sc.vbar_defender = mean_velocity(table, sc.defender_id, seq.t0, &trunc_d);
    sc.truncated_history = trunc_t || trunc_d;

    if (xi == 0) return sc;  // actual play, verbatim

    auto shift_player = [&](int id, const Vec2& vbar) {
        for (int f = span_begin; f <= span_end; ++f)
            sc.table.at(f).by_id(id).p = shifted_position(table, id, seq.t0, xi, vbar, f,
                                                          poss.last_frame, table.fps);
        recompute_derivatives(sc.table, id, span_begin, span_end);
    };
    shift_player(sc.target_id, sc.vbar_target);
    if (sc.defender_id > 0) shift_player(sc.defender_id, sc.vbar_defender);
    return sc;
}

}  // namespace detail

inline CounterfactualScenario shift_early(const FrameTable& table, const MovementSequence& seq,
                                          int xi, int span_begin, int span_end) {
    if (xi >= 0) throw Error(ErrorCode::BadField, "shift_early requires xi < 0");
    return detail::build_scenario(table, seq, xi, span_begin, span_end);
}

inline CounterfactualScenario shift_late(const FrameTable& table, const MovementSequence& seq,
                                         int xi, int span_begin, int span_end) {
    if (xi <= 0) throw Error(ErrorCode::BadField, "shift_late requires xi > 0");
    return detail::build_scenario(table, seq, xi, span_begin, span_end);
}

// Shared evaluation span: from t0 - 30 (15-frame averaging window before the
// earliest shifted initiation) through the sequence end, clipped to the
// possession so every scenario scores over the same frames.
inline std::pair<int, int> evaluation_span(const FrameTable& table, const MovementSequence& seq,
                                           int eval_start_offset = 15) {
    const auto poss = table.possession_of(seq.t0);
    const int begin = std::max(seq.t0 + kXiMin - eval_start_offset, poss.first_frame);
    const int end = std::min(seq.end, poss.last_frame);
    return {begin, end};
}

// All 31 scenarios, xi = -15..15. xi values that would reach before the
// possession start are skipped.
inline std::vector<CounterfactualScenario> build_sweep(const FrameTable& table,
                                                       const MovementSequence& seq) {
    const auto [begin, end] = evaluation_span(table, seq);
    const auto poss = table.possession_of(seq.t0);
    std::vector<CounterfactualScenario> out;
    for (int xi = kXiMin; xi <= kXiMax; ++xi) {
        if (seq.t0 + std::min(xi, 0) < poss.first_frame) continue;
        out.push_back(detail::build_scenario(table, seq, xi, begin, end));
    }
    return out;
}

}  // namespace vtcs
