#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "vtcs/types.hpp"

namespace vtcs {

// CSV schema: frame,id,class,x,y,vx,vy,ax,ay,closest,holder
inline constexpr const char* kCsvHeader = "frame,id,class,x,y,vx,vy,ax,ay,closest,holder";

// Players may legitimately run past the lines; beyond this band a row is
// rejected as OutOfBounds.
inline constexpr double kBoundsTolerance = 2.0;

struct SmoothingConfig {
    int window = 5;  // odd, >= 3
    enum class Scheme { CentralDifference, Filtered } scheme = Scheme::CentralDifference;
};

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline double parse_double(std::string_view s, int lineno) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorCode::BadField,
                    "line " + std::to_string(lineno) + ": bad numeric field '" + std::string(s) + "'");
    return v;
}

inline int parse_int(std::string_view s, int lineno) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorCode::BadField,
                    "line " + std::to_string(lineno) + ": bad integer field '" + std::string(s) + "'");
    return v;
}

inline std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace detail

inline FrameTable parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::MissingColumn, "empty input, header expected");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw Error(ErrorCode::MissingColumn,
                    "header mismatch: expected '" + std::string(kCsvHeader) + "', got '" + line + "'");

    std::map<int, Frame> frames;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 11)
            throw Error(ErrorCode::MissingColumn,
                        "line " + std::to_string(lineno) + ": expected 11 fields, got " +
                            std::to_string(f.size()));
        ObjectState o;
        o.frame = detail::parse_int(f[0], lineno);
        o.id = detail::parse_int(f[1], lineno);
        if (f[2] == "offense") o.cls = ObjectClass::Offense;
        else if (f[2] == "defense") o.cls = ObjectClass::Defense;
        else if (f[2] == "disc") o.cls = ObjectClass::Disc;
        else
            throw Error(ErrorCode::BadField,
                        "line " + std::to_string(lineno) + ": unknown class '" + std::string(f[2]) + "'");
        o.p = {detail::parse_double(f[3], lineno), detail::parse_double(f[4], lineno)};
        o.v = {detail::parse_double(f[5], lineno), detail::parse_double(f[6], lineno)};
        o.a = {detail::parse_double(f[7], lineno), detail::parse_double(f[8], lineno)};
        o.closest = f[9].empty() ? 0 : detail::parse_int(f[9], lineno);
        if (f[10] == "true") o.holder = true;
        else if (f[10] == "false") o.holder = false;
        else
            throw Error(ErrorCode::BadField,
                        "line " + std::to_string(lineno) + ": holder must be true/false");

        if (o.p.x < -kBoundsTolerance || o.p.x > kFieldLength + kBoundsTolerance ||
            o.p.y < -kBoundsTolerance || o.p.y > kFieldWidth + kBoundsTolerance)
            throw Error(ErrorCode::OutOfBounds,
                        "line " + std::to_string(lineno) + ": position (" + detail::fmt3(o.p.x) +
                            "," + detail::fmt3(o.p.y) + ") outside field tolerance band");

        auto& fr = frames[o.frame];
        fr.frame = o.frame;
        fr.objects.push_back(o);
    }

    FrameTable table;
    for (auto& [fidx, fr] : frames) {
        if (static_cast<int>(fr.objects.size()) != kObjectsPerFrame)
            throw Error(ErrorCode::BadObjectCount,
                        "frame " + std::to_string(fidx) + " has " +
                            std::to_string(fr.objects.size()) + " objects, expected 15");
        std::sort(fr.objects.begin(), fr.objects.end(),
                  [](const ObjectState& a, const ObjectState& b) { return a.id < b.id; });
        int n_off = 0, n_def = 0, n_disc = 0, n_hold = 0;
        for (const auto& o : fr.objects) {
            n_off += o.cls == ObjectClass::Offense;
            n_def += o.cls == ObjectClass::Defense;
            n_disc += o.cls == ObjectClass::Disc;
            n_hold += o.holder;
        }
        if (n_off != 7 || n_def != 7 || n_disc != 1)
            throw Error(ErrorCode::BadObjectCount,
                        "frame " + std::to_string(fidx) + ": class counts offense=" +
                            std::to_string(n_off) + " defense=" + std::to_string(n_def) +
                            " disc=" + std::to_string(n_disc));
        if (n_hold > 1)
            throw Error(ErrorCode::DuplicateHolder,
                        "frame " + std::to_string(fidx) + ": " + std::to_string(n_hold) +
                            " objects flagged as holder");
        table.push_frame(std::move(fr));
    }
    return table;
}

inline FrameTable parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return parse_csv(in);
}

inline void write_csv(const FrameTable& table, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& fr : table.frames()) {
        for (const auto& o : fr.objects) {
            out << o.frame << ',' << o.id << ',' << to_string(o.cls) << ','
                << detail::fmt3(o.p.x) << ',' << detail::fmt3(o.p.y) << ','
                << detail::fmt3(o.v.x) << ',' << detail::fmt3(o.v.y) << ','
                << detail::fmt3(o.a.x) << ',' << detail::fmt3(o.a.y) << ','
                << o.closest << ',' << (o.holder ? "true" : "false") << "\n";
        }
    }
}

inline void write_csv(const FrameTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    write_csv(table, out);
}

// Disc follows the holder while held; flight segments between a release and
// the next catch are linearly interpolated.
inline FrameTable interpolate_disc(const FrameTable& table) {
    FrameTable out = table;
    for (const auto& poss : out.possessions()) {
        // collect holder positions per frame within the possession
        std::vector<int> held_frames;
        for (int f = poss.first_frame; f <= poss.last_frame; ++f)
            if (out.at(f).holder()) held_frames.push_back(f);
        if (held_frames.empty())
            throw Error(ErrorCode::NoHolderAnchor,
                        "possession " + std::to_string(poss.possession_id) + " has no holder frames");

        for (int f = poss.first_frame; f <= poss.last_frame; ++f) {
            auto& fr = out.at(f);
            const ObjectState* h = fr.holder();
            ObjectState* disc = nullptr;
            for (auto& o : fr.objects)
                if (o.cls == ObjectClass::Disc) disc = &o;
            if (h) {
                disc->p = h->p;
                continue;
            }
            // in flight: previous holder frame = release, next = catch
            auto next_it = std::lower_bound(held_frames.begin(), held_frames.end(), f);
            const int catch_f = next_it == held_frames.end() ? -1 : *next_it;
            const int release_f = next_it == held_frames.begin() ? -1 : *(next_it - 1);
            if (release_f < 0 && catch_f < 0) continue;  // unreachable: held_frames nonempty
            if (release_f < 0) {
                disc->p = out.at(catch_f).holder()->p;
            } else if (catch_f < 0) {
                disc->p = out.at(release_f).holder()->p;
            } else {
                const Vec2 p0 = out.at(release_f).holder()->p;
                const Vec2 p1 = out.at(catch_f).holder()->p;
                const double t = double(f - release_f) / double(catch_f - release_f);
                disc->p = p0 + (p1 - p0) * t;
            }
        }
    }
    return out;
}

// Centered moving average on positions, then central differences for v and a.
// One-sided differences at possession edges.
inline FrameTable estimate_derivatives(const FrameTable& table, const SmoothingConfig& cfg = {}) {
    if (cfg.window < 3 || cfg.window % 2 == 0)
        throw Error(ErrorCode::BadField, "smoothing window must be odd and >= 3");
    FrameTable out = table;
    const double dt = 1.0 / out.fps;
    const int half = cfg.window / 2;

    for (const auto& poss : out.possessions()) {
        const int n = poss.last_frame - poss.first_frame + 1;
        if (n < cfg.window)
            throw Error(ErrorCode::TooShort,
                        "possession " + std::to_string(poss.possession_id) + " shorter than window");
        for (int id = 1; id <= kObjectsPerFrame; ++id) {
            std::vector<Vec2> p(n), ps(n), v(n), a(n);
            for (int k = 0; k < n; ++k) p[k] = out.at(poss.first_frame + k).by_id(id).p;
            // moving average, window shrunk symmetrically near the edges
            for (int k = 0; k < n; ++k) {
                const int h = std::min({half, k, n - 1 - k});
                Vec2 s;
                for (int j = -h; j <= h; ++j) s += p[k + j];
                ps[k] = s / double(2 * h + 1);
            }
            auto diff = [&](const std::vector<Vec2>& src, int k) {
                if (k == 0) return (src[1] - src[0]) / dt;
                if (k == n - 1) return (src[n - 1] - src[n - 2]) / dt;
                return (src[k + 1] - src[k - 1]) / (2.0 * dt);
            };
            for (int k = 0; k < n; ++k) v[k] = diff(ps, k);
            for (int k = 0; k < n; ++k) a[k] = diff(v, k);
            for (int k = 0; k < n; ++k) {
                auto& o = out.at(poss.first_frame + k).by_id(id);
                o.v = v[k];
                o.a = a[k];
            }
        }
    }
    return out;
}

// Greedy one-to-one offense<->defense pairing by ascending distance.
inline FrameTable pair_closest(const FrameTable& table) {
    FrameTable out = table;
    for (auto& fr : out.frames()) {
        std::vector<ObjectState*> off, def;
        for (auto& o : fr.objects) {
            if (o.cls == ObjectClass::Offense) off.push_back(&o);
            else if (o.cls == ObjectClass::Defense) def.push_back(&o);
        }
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < off.size(); ++i)
            for (std::size_t j = 0; j < def.size(); ++j)
                pairs.emplace_back(dist(off[i]->p, def[j]->p), i, j);
        std::sort(pairs.begin(), pairs.end());
        std::vector<bool> off_used(off.size()), def_used(def.size());
        for (const auto& [d, i, j] : pairs) {
            if (off_used[i] || def_used[j]) continue;
            off_used[i] = def_used[j] = true;
            off[i]->closest = def[j]->id;
            def[j]->closest = off[i]->id;
        }
    }
    return out;
}

}  // namespace vtcs
