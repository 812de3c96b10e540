#pragma once

#include <random>
#include <vector>

#include "vtcs/synth.hpp"
#include "vtcs/types.hpp"

namespace fixtures {

using vtcs::ObjectClass;
using vtcs::ObjectState;
using vtcs::Vec2;

// A legal 15-object frame with everyone parked in a spread formation.
// Individual objects can be overridden afterwards via Frame::by_id.
inline vtcs::Frame base_frame(int frame_idx) {
    vtcs::Frame fr;
    fr.frame = frame_idx;
    for (int i = 0; i < 7; ++i) {
        ObjectState o;
        o.frame = frame_idx;
        o.id = i + 1;
        o.cls = ObjectClass::Offense;
        o.p = {25.0, 4.0 + 4.8 * i};
        fr.objects.push_back(o);
    }
    for (int i = 0; i < 7; ++i) {
        ObjectState o;
        o.frame = frame_idx;
        o.id = i + 8;
        o.cls = ObjectClass::Defense;
        o.p = {28.0, 4.0 + 4.8 * i};
        fr.objects.push_back(o);
    }
    ObjectState disc;
    disc.frame = frame_idx;
    disc.id = 15;
    disc.cls = ObjectClass::Disc;
    disc.p = {25.0, 4.0};
    fr.objects.push_back(disc);
    return fr;
}

// Table of n identical base frames starting at first_frame.
inline vtcs::FrameTable base_table(int n, int first_frame = 0) {
    vtcs::FrameTable t;
    for (int k = 0; k < n; ++k) t.push_frame(base_frame(first_frame + k));
    return t;
}

// Scripted play with one receiver cut: player 2 accelerates at `accel` m/s^2
// in +x starting at `onset` for `burst_frames`, then coasts. Player 1 holds
// the disc throughout.
inline vtcs::ScriptedPlay cut_play(int duration, int onset, double accel = 5.0,
                                   int burst_frames = 8) {
    vtcs::ScriptedPlay play;
    play.duration = duration;
    vtcs::MotionScript cutter;
    cutter.id = 2;
    cutter.cls = ObjectClass::Offense;
    cutter.start = {40.0, 18.0};
    cutter.segments.push_back({onset, {0.0, 0.0}});
    cutter.segments.push_back({burst_frames, {accel, 0.0}});
    play.players.push_back(cutter);
    play.holder_spans.push_back({1, 0, duration - 1});
    return play;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0xC0FFEE);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace fixtures
