#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

namespace vtcs {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Angle between two vectors, in [0, pi]. Zero-length input gives 0; callers
// that need a worst-case angle for degenerate velocities must handle it.
inline double angle_between(const Vec2& a, const Vec2& b) {
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
    return std::acos(c);
}

inline double heading(const Vec2& v) { return std::atan2(v.y, v.x); }

inline double deg2rad(double d) { return d * M_PI / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / M_PI; }

// Proper intersection of segments [p1,p2] and [q1,q2], including touching
// endpoints. Collinear overlap reports the point of [q1,q2] closest to q1's
// midpoint projection; for our use (virtual arm vs throwing lane) any point
// of the overlap works.
inline std::optional<Vec2> segment_intersection(const Vec2& p1, const Vec2& p2,
                                                const Vec2& q1, const Vec2& q2) {
    const Vec2 r = p2 - p1;
    const Vec2 s = q2 - q1;
    const double rxs = cross(r, s);
    const Vec2 qp = q1 - p1;
    if (rxs == 0.0) {
        if (cross(qp, r) != 0.0) return std::nullopt;  // parallel, disjoint
        // collinear: project q endpoints onto r
        const double rr = dot(r, r);
        if (rr == 0.0) return std::nullopt;
        double t0 = dot(qp, r) / rr;
        double t1 = dot(q2 - p1, r) / rr;
        if (t0 > t1) std::swap(t0, t1);
        const double lo = std::max(t0, 0.0), hi = std::min(t1, 1.0);
        if (lo > hi) return std::nullopt;
        return p1 + r * lo;
    }
    const double t = cross(qp, s) / rxs;
    const double u = cross(qp, r) / rxs;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return p1 + r * t;
}

}  // namespace vtcs
