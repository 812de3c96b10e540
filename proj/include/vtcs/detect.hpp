#pragma once

#include <utility>
#include <vector>

#include "vtcs/types.hpp"

namespace vtcs {

// A detected receiver cut: initiation frame t0 plus the extended span.
struct MovementSequence {
    int player_id = 0;
    int t0 = 0;
    int start = 0;  // after backward extension
    int end = 0;    // after forward extension
    int possession_id = 0;
    bool retained = true;
};

struct DetectionConfig {
    double accel_min = 4.0;        // m/s^2
    int no_hold_frames = 30;       // 2 s at 15 FPS
    double init_angle_max = 90.0;  // deg, angle(v, a)
    double fwd_speed_min = 3.0;    // m/s
    double fwd_turn_max = 20.0;    // deg per frame
    double fwd_mean_dev_max = 90.0;  // deg from running mean velocity direction
    double bwd_speed_min = 0.05;   // m/s
    double bwd_decel_max = 0.05;   // m/s per frame
    double excl_radius = 5.0;      // m
    double excl_cone = 90.0;       // deg total aperture
    double zero_speed = 1e-9;      // below this the cone test is skipped
};

namespace detail {

// Did this player hold the disc at any frame in [t - lookback, t]?
inline bool held_recently(const FrameTable& table, int player_id, int t, int lookback,
                          int poss_first) {
    for (int f = std::max(t - lookback, poss_first); f <= t; ++f)
        if (table.at(f).by_id(player_id).holder) return true;
    return false;
}

inline bool initiation_at(const FrameTable& table, const ObjectState& o, int poss_first,
                          const DetectionConfig& cfg) {
    if (o.cls != ObjectClass::Offense) return false;
    if (norm(o.a) < cfg.accel_min) return false;
    if (held_recently(table, o.id, o.frame, cfg.no_hold_frames, poss_first)) return false;
    if (norm(o.v) > 0.0 && angle_between(o.v, o.a) > deg2rad(cfg.init_angle_max)) return false;
    return true;
}

}  // namespace detail

// Offense frames satisfying the initiation criteria; runs of consecutive
// qualifying frames per player collapse to the earliest.
inline std::vector<std::pair<int, int>> detect_initiations(const FrameTable& table,
                                                           const DetectionConfig& cfg = {}) {
    std::vector<std::pair<int, int>> out;  // (player_id, t0)
    for (const auto& poss : table.possessions()) {
        for (int id = 1; id <= kObjectsPerFrame; ++id) {
            bool prev = false;
            for (int f = poss.first_frame; f <= poss.last_frame; ++f) {
                const auto& o = table.at(f).by_id(id);
                const bool now = detail::initiation_at(table, o, poss.first_frame, cfg);
                if (now && !prev) out.emplace_back(id, f);
                prev = now;
            }
        }
    }
    return out;
}

// Forward extension: accept frames while the player keeps speed, keeps
// direction frame-to-frame, stays aligned with the running mean velocity
// direction, and does not hold the disc.
inline MovementSequence extend_forward(const FrameTable& table, MovementSequence seq,
                                       const DetectionConfig& cfg = {}) {
    const auto poss = table.possession_of(seq.t0);
    Vec2 mean_v = table.at(seq.t0).by_id(seq.player_id).v;
    int count = 1;
    seq.end = seq.t0;
    for (int f = seq.t0 + 1; f <= poss.last_frame; ++f) {
        const auto& o = table.at(f).by_id(seq.player_id);
        if (o.holder) break;
        if (norm(o.v) < cfg.fwd_speed_min) break;
        const auto& prev = table.at(f - 1).by_id(seq.player_id);
        if (angle_between(o.v, prev.v) > deg2rad(cfg.fwd_turn_max)) break;
        if (angle_between(o.v, mean_v) > deg2rad(cfg.fwd_mean_dev_max)) break;
        seq.end = f;
        mean_v = (mean_v * double(count) + o.v) / double(count + 1);
        ++count;
    }
    return seq;
}

// Backward extension: pick up the acceleration ramp before t0 while speed
// stays above the floor and is not collapsing frame-to-frame.
inline MovementSequence extend_backward(const FrameTable& table, MovementSequence seq,
                                        const DetectionConfig& cfg = {}) {
    const auto poss = table.possession_of(seq.t0);
    seq.start = seq.t0;
    for (int f = seq.t0 - 1; f >= poss.first_frame; --f) {
        const auto& o = table.at(f).by_id(seq.player_id);
        if (norm(o.v) < cfg.bwd_speed_min) break;
        const auto& next = table.at(f + 1).by_id(seq.player_id);
        if (norm(next.v) < norm(o.v) - cfg.bwd_decel_max) break;
        seq.start = f;
    }
    return seq;
}

// Exclusion test at the end of the sequence: crowded radius or crowded
// forward cone means the cut had no clear spatial objective.
inline bool apply_exclusions(const FrameTable& table, const MovementSequence& seq,
                             const DetectionConfig& cfg = {}) {
    const auto& fr = table.at(seq.end);
    const auto& self = fr.by_id(seq.player_id);
    int in_radius = 0, in_cone = 0;
    const bool cone_ok = norm(self.v) > cfg.zero_speed;
    const double half_angle = deg2rad(cfg.excl_cone) / 2.0;
    for (const auto& o : fr.objects) {
        if (o.cls != ObjectClass::Offense || o.id == seq.player_id) continue;
        const Vec2 d = o.p - self.p;
        if (norm(d) <= cfg.excl_radius) ++in_radius;
        if (cone_ok && norm(d) > 0.0 && angle_between(d, self.v) <= half_angle) ++in_cone;
    }
    return in_radius < 2 && in_cone < 2;
}

// Full detection pipeline: initiations, extension both ways, exclusion flags.
inline std::vector<MovementSequence> detect_sequences(const FrameTable& table,
                                                      const DetectionConfig& cfg = {}) {
    std::vector<MovementSequence> out;
    for (const auto& [id, t0] : detect_initiations(table, cfg)) {
        MovementSequence seq;
        seq.player_id = id;
        seq.t0 = seq.start = seq.end = t0;
        seq.possession_id = table.possession_of(t0).possession_id;
        seq = extend_forward(table, seq, cfg);
        seq = extend_backward(table, seq, cfg);
        seq.retained = apply_exclusions(table, seq, cfg);
        // same-player overlap: keep the earlier sequence
        bool overlaps = false;
        for (const auto& prev : out)
            if (prev.player_id == seq.player_id && prev.possession_id == seq.possession_id &&
                seq.start <= prev.end && prev.start <= seq.end)
                overlaps = true;
        if (!overlaps) out.push_back(seq);
    }
    return out;
}

}  // namespace vtcs
