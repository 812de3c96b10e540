#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vtcs/geometry.hpp"

namespace vtcs {

// Field constants (normalized coordinate system).
inline constexpr double kFieldLength = 94.0;  // m, x axis
inline constexpr double kFieldWidth = 37.0;   // m, y axis
inline constexpr double kStallRadius = 3.0;   // m
inline constexpr double kFps = 15.0;
inline constexpr int kObjectsPerFrame = 15;

enum class ObjectClass { Offense, Defense, Disc };

inline const char* to_string(ObjectClass c) {
    switch (c) {
        case ObjectClass::Offense: return "offense";
        case ObjectClass::Defense: return "defense";
        default: return "disc";
    }
}

enum class ErrorCode {
    MissingColumn,
    BadObjectCount,
    OutOfBounds,
    DuplicateHolder,
    BadField,
    NoHolderAnchor,
    TooShort,
    ShiftBeforePossession,
    SpanTooShort,
    EmptySample,
    TooFewPlayers,
    InfeasibleScript,
    UnknownLayer,
    IoError,
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// One object (player or disc) at one frame.
struct ObjectState {
    int frame = 0;
    int id = 0;  // 1..15
    ObjectClass cls = ObjectClass::Offense;
    Vec2 p;      // position [m]
    Vec2 v;      // velocity [m/s]
    Vec2 a;      // acceleration [m/s^2]
    int closest = 0;   // id of nearest opposing player, 0 if n/a
    bool holder = false;
};

struct Frame {
    int frame = 0;
    std::vector<ObjectState> objects;  // exactly 15, sorted by id

    const ObjectState& by_id(int id) const {
        for (const auto& o : objects)
            if (o.id == id) return o;
        throw Error(ErrorCode::BadField, "object id " + std::to_string(id) +
                                             " missing in frame " + std::to_string(frame));
    }
    ObjectState& by_id(int id) {
        return const_cast<ObjectState&>(static_cast<const Frame*>(this)->by_id(id));
    }
    const ObjectState& disc() const {
        for (const auto& o : objects)
            if (o.cls == ObjectClass::Disc) return o;
        throw Error(ErrorCode::BadField, "no disc in frame " + std::to_string(frame));
    }
    const ObjectState* holder() const {
        for (const auto& o : objects)
            if (o.holder) return &o;
        return nullptr;
    }
};

struct Possession {
    int possession_id = 0;
    int first_frame = 0;
    int last_frame = 0;
};

// Frame-indexed tracking table. Immutable by convention after construction:
// all pipeline operations take a table by const reference and return a new one.
class FrameTable {
public:
    double fps = kFps;

    void push_frame(Frame f) {
        index_[f.frame] = frames_.size();
        frames_.push_back(std::move(f));
    }

    bool has(int frame) const { return index_.count(frame) != 0; }
    const Frame& at(int frame) const {
        auto it = index_.find(frame);
        if (it == index_.end())
            throw Error(ErrorCode::BadField, "frame " + std::to_string(frame) + " not in table");
        return frames_[it->second];
    }
    Frame& at(int frame) {
        return const_cast<Frame&>(static_cast<const FrameTable*>(this)->at(frame));
    }

    const std::vector<Frame>& frames() const { return frames_; }
    std::vector<Frame>& frames() { return frames_; }
    std::size_t size() const { return frames_.size(); }
    bool empty() const { return frames_.empty(); }

    // Possessions are maximal runs of contiguous frame indices.
    std::vector<Possession> possessions() const {
        std::vector<Possession> out;
        if (frames_.empty()) return out;
        Possession cur{1, frames_.front().frame, frames_.front().frame};
        for (std::size_t i = 1; i < frames_.size(); ++i) {
            const int f = frames_[i].frame;
            if (f == cur.last_frame + 1) {
                cur.last_frame = f;
            } else {
                out.push_back(cur);
                cur = Possession{cur.possession_id + 1, f, f};
            }
        }
        out.push_back(cur);
        return out;
    }

    Possession possession_of(int frame) const {
        for (const auto& p : possessions())
            if (p.first_frame <= frame && frame <= p.last_frame) return p;
        throw Error(ErrorCode::BadField, "frame " + std::to_string(frame) + " in no possession");
    }

private:
    std::vector<Frame> frames_;
    std::unordered_map<int, std::size_t> index_;
};

}  // namespace vtcs
