#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "vtcs/dataio.hpp"
#include "vtcs/types.hpp"

namespace vtcs {

inline constexpr double kMaxFeasibleSpeed = 12.0;  // m/s

// Constant-acceleration segment: closed-form ground truth for position,
// velocity, and acceleration at every frame.
struct MotionSegment {
    int frames = 0;
    Vec2 accel;
};

struct MotionScript {
    int id = 0;
    ObjectClass cls = ObjectClass::Offense;
    Vec2 start;
    Vec2 v0;
    std::vector<MotionSegment> segments;  // beyond the last segment: coast at final velocity
};

struct HolderSpan {
    int id = 0;
    int from = 0;  // frame, inclusive
    int to = 0;
};

struct ScriptedPlay {
    int duration = 0;  // frames
    int first_frame = 0;
    double fps = kFps;
    std::vector<MotionScript> players;  // missing slots filled from a default formation
    std::vector<HolderSpan> holder_spans;
    double jitter_sigma = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

struct Kinematics {
    Vec2 p, v, a;
};

// Evaluate a script at integer frame k (continuous time k/fps from script start).
inline Kinematics eval_script(const MotionScript& s, int k, double fps) {
    Vec2 p = s.start, v = s.v0;
    double t = double(k) / fps;
    for (const auto& seg : s.segments) {
        // a frame on a segment boundary belongs to the following segment
        const double seg_t = double(seg.frames) / fps;
        if (t < seg_t) {
            return {p + v * t + seg.accel * (0.5 * t * t), v + seg.accel * t, seg.accel};
        }
        p = p + v * seg_t + seg.accel * (0.5 * seg_t * seg_t);
        v = v + seg.accel * seg_t;
        t -= seg_t;
    }
    return {p + v * t, v, {0.0, 0.0}};
}

inline std::vector<MotionScript> default_formation() {
    std::vector<MotionScript> out;
    for (int i = 0; i < 7; ++i) {
        MotionScript off;
        off.id = i + 1;
        off.cls = ObjectClass::Offense;
        off.start = {25.0, 4.0 + 4.8 * i};
        out.push_back(off);
        MotionScript def;
        def.id = i + 8;
        def.cls = ObjectClass::Defense;
        def.start = {28.0, 4.0 + 4.8 * i};
        out.push_back(def);
    }
    return out;
}

}  // namespace detail

// Deterministic FrameTable at 15 FPS with analytic velocities and
// accelerations as ground truth. Disc (id 15) follows the holder; flight
// segments between holder spans are linearly interpolated.
inline FrameTable generate(const ScriptedPlay& play) {
    if (play.duration <= 0) throw Error(ErrorCode::InfeasibleScript, "duration must be positive");

    std::vector<MotionScript> scripts = detail::default_formation();
    for (const auto& s : play.players) {
        bool replaced = false;
        for (auto& d : scripts)
            if (d.id == s.id) {
                d = s;
                replaced = true;
            }
        if (!replaced) scripts.push_back(s);
    }
    if (scripts.size() != 14)
        throw Error(ErrorCode::InfeasibleScript, "scripts must cover ids 1..14");

    // feasibility: speed bound at every frame
    for (const auto& s : scripts)
        for (int k = 0; k < play.duration; ++k)
            if (norm(detail::eval_script(s, k, play.fps).v) > kMaxFeasibleSpeed)
                throw Error(ErrorCode::InfeasibleScript,
                            "object " + std::to_string(s.id) + " exceeds " +
                                std::to_string(kMaxFeasibleSpeed) + " m/s");

    auto holder_at = [&](int frame) -> int {
        for (const auto& h : play.holder_spans)
            if (h.from <= frame && frame <= h.to) return h.id;
        return 0;
    };

    std::mt19937_64 rng(play.seed);
    std::normal_distribution<double> noise(0.0, play.jitter_sigma);

    FrameTable table;
    table.fps = play.fps;
    for (int k = 0; k < play.duration; ++k) {
        Frame fr;
        fr.frame = play.first_frame + k;
        const int hid = holder_at(k);
        for (const auto& s : scripts) {
            auto kin = detail::eval_script(s, k, play.fps);
            if (play.jitter_sigma > 0.0) kin.p += Vec2{noise(rng), noise(rng)};
            ObjectState o;
            o.frame = fr.frame;
            o.id = s.id;
            o.cls = s.cls;
            o.p = kin.p;
            o.v = kin.v;
            o.a = kin.a;
            o.holder = (s.id == hid);
            fr.objects.push_back(o);
        }
        ObjectState disc;
        disc.frame = fr.frame;
        disc.id = 15;
        disc.cls = ObjectClass::Disc;
        fr.objects.push_back(disc);
        table.push_frame(std::move(fr));
    }

    // disc path: holder position while held, linear flight between spans
    for (int k = 0; k < play.duration; ++k) {
        auto& fr = table.at(play.first_frame + k);
        auto& disc = fr.by_id(15);
        const int hid = holder_at(k);
        if (hid > 0) {
            disc.p = fr.by_id(hid).p;
            continue;
        }
        int rel = -1, cat = -1;
        for (int j = k - 1; j >= 0; --j)
            if (holder_at(j) > 0) {
                rel = j;
                break;
            }
        for (int j = k + 1; j < play.duration; ++j)
            if (holder_at(j) > 0) {
                cat = j;
                break;
            }
        if (rel < 0 && cat < 0) {
            disc.p = table.at(play.first_frame).by_id(1).p;  // no holder anywhere: park at player 1
        } else if (rel < 0) {
            disc.p = table.at(play.first_frame + cat).by_id(holder_at(cat)).p;
        } else if (cat < 0) {
            disc.p = table.at(play.first_frame + rel).by_id(holder_at(rel)).p;
        } else {
            const Vec2 p0 = table.at(play.first_frame + rel).by_id(holder_at(rel)).p;
            const Vec2 p1 = table.at(play.first_frame + cat).by_id(holder_at(cat)).p;
            disc.p = p0 + (p1 - p0) * (double(k - rel) / double(cat - rel));
        }
    }

    return pair_closest(table);
}

// Plain-text script format, one directive per line:
//   duration <frames>           fps <fps>           first_frame <frame>
//   object <id> <class> <x> <y> [vx vy]
//   seg <id> <frames> <ax> <ay>
//   holder <id> <from> <to>
//   jitter <sigma> <seed>
// '#' starts a comment.
inline ScriptedPlay parse_script(std::istream& in) {
    ScriptedPlay play;
    std::string line;
    int lineno = 0;
    auto find_script = [&](int id) -> MotionScript& {
        for (auto& s : play.players)
            if (s.id == id) return s;
        throw Error(ErrorCode::InfeasibleScript,
                    "line " + std::to_string(lineno) + ": seg before object for id " +
                        std::to_string(id));
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (key == "duration") ss >> play.duration;
        else if (key == "fps") ss >> play.fps;
        else if (key == "first_frame") ss >> play.first_frame;
        else if (key == "jitter") ss >> play.jitter_sigma >> play.seed;
        else if (key == "object") {
            MotionScript s;
            std::string cls;
            ss >> s.id >> cls >> s.start.x >> s.start.y;
            ss >> s.v0.x >> s.v0.y;  // optional, stays zero on failure
            if (cls == "offense") s.cls = ObjectClass::Offense;
            else if (cls == "defense") s.cls = ObjectClass::Defense;
            else
                throw Error(ErrorCode::InfeasibleScript,
                            "line " + std::to_string(lineno) + ": unknown class " + cls);
            play.players.push_back(s);
        } else if (key == "seg") {
            int id;
            MotionSegment seg;
            ss >> id >> seg.frames >> seg.accel.x >> seg.accel.y;
            find_script(id).segments.push_back(seg);
        } else if (key == "holder") {
            HolderSpan h;
            ss >> h.id >> h.from >> h.to;
            play.holder_spans.push_back(h);
        } else {
            throw Error(ErrorCode::InfeasibleScript,
                        "line " + std::to_string(lineno) + ": unknown directive " + key);
        }
        if (ss.bad())
            throw Error(ErrorCode::InfeasibleScript, "line " + std::to_string(lineno) + ": parse error");
    }
    return play;
}

inline ScriptedPlay parse_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_script(in);
}

}  // namespace vtcs
