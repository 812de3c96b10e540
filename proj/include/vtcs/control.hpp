#pragma once

#include <cmath>
#include <vector>

#include "vtcs/types.hpp"

namespace vtcs {

struct ControlParams {
    double lambda = 4.3;         // control-ability rate [1/s], both teams
    double v_max = 5.0;          // player top speed [m/s]
    double sigma_arrival = 0.45; // arrival-time spread [s]
    double dT = 0.04;            // integration step [s]
    double T_max = 10.0;         // integration horizon [s]
    double stall_radius = kStallRadius;  // m
    double arm_scale = 30.0;     // m, virtual-arm shrink scale
    double wd_scale = 20.0;      // m, distance-weight decay scale
    double ws_floor = 0.05;      // lower clamp on the screen weight
    double converge_sum = 0.99;  // stop integrating once total control reaches this
    double zero_speed = 0.1;     // m/s, below this the reaction angle is worst-case
};

struct Grid {
    double cell = 1.0;
    int nx = 94;
    int ny = 37;
    Vec2 origin{0.0, 0.0};

    int cells() const { return nx * ny; }
    int index(int ix, int iy) const { return iy * nx + ix; }
    Vec2 center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * cell, origin.y + (iy + 0.5) * cell};
    }
    Vec2 center(int idx) const { return center(idx % nx, idx / nx); }
    bool contains(int ix, int iy) const { return ix >= 0 && ix < nx && iy >= 0 && iy < ny; }
    int nearest(const Vec2& p) const {
        const int ix = std::clamp(int(std::floor((p.x - origin.x) / cell)), 0, nx - 1);
        const int iy = std::clamp(int(std::floor((p.y - origin.y) / cell)), 0, ny - 1);
        return index(ix, iy);
    }
    static Grid full_field(double cell = 1.0) {
        Grid g;
        g.cell = cell;
        g.nx = int(std::ceil(kFieldLength / cell));
        g.ny = int(std::ceil(kFieldWidth / cell));
        return g;
    }
};

// Direction-dependent reaction time: RT = 0.1 + theta/pi, where theta is the
// angle between the disc direction and the player's velocity; defenders also
// consider the direction to the player they mark and take the smaller angle.
// Near-zero velocity makes the velocity angle undefined; treated as worst case.
inline double reaction_time(const ObjectState& player, const Vec2& disc_pos,
                            const ObjectState* marked = nullptr,
                            const ControlParams& params = {}) {
    const Vec2 to_disc = disc_pos - player.p;
    double theta;
    if (norm(player.v) < params.zero_speed || norm(to_disc) == 0.0)
        theta = M_PI;
    else
        theta = angle_between(to_disc, player.v);
    if (player.cls == ObjectClass::Defense && marked != nullptr) {
        const Vec2 to_marked = marked->p - player.p;
        if (norm(to_marked) > 0.0 && norm(to_disc) > 0.0)
            theta = std::min(theta, angle_between(to_disc, to_marked));
    }
    return 0.1 + theta / M_PI;
}

// Expected arrival time at a cell: react for RT (drifting at current
// velocity), then run at top speed.
inline double arrival_time(const ObjectState& player, double rt, const Vec2& cell,
                           const ControlParams& params = {}) {
    const Vec2 p_after = player.p + player.v * rt;
    return rt + dist(p_after, cell) / params.v_max;
}

// P(arrive within T): logistic around tau with spread sigma_arrival.
inline double arrival_probability(double tau, double T, const ControlParams& params = {}) {
    const double k = M_PI / (std::sqrt(3.0) * params.sigma_arrival);
    return 1.0 / (1.0 + std::exp(-k * (T - tau)));
}

struct PpcfResult {
    std::vector<double> value;  // per included player, in [0,1]
    bool converged = true;      // total reached converge_sum before T_max
};

// Forward integration of the coupled control ODE at one cell, given the
// included players' arrival times. Each step consumes uncontrolled
// probability with an exponential update (exact for arrival probabilities
// held constant over the step) and splits it among players in proportion to
// their f_i, so the result is order-independent and stable under step
// halving. Starts just before the earliest plausible arrival; players far
// outside their logistic window are shorted to 0 or 1.
inline PpcfResult integrate_ppcf(const std::vector<double>& tau, const ControlParams& params = {}) {
    PpcfResult res;
    res.value.assign(tau.size(), 0.0);
    if (tau.empty()) {
        res.converged = false;
        return res;
    }
    const double window = 5.0 * params.sigma_arrival;
    double tau_min = tau[0];
    for (double t : tau) tau_min = std::min(tau_min, t);
    const double t_start = std::max(0.0, tau_min - window);
    // step index kept as a multiple of dT so halving dT revisits the same times
    const long k_start = long(t_start / params.dT);
    const long k_end = long(params.T_max / params.dT);

    std::vector<double> f(tau.size());
    double total = 0.0;
    for (long k = k_start; k <= k_end; ++k) {
        const double T = k * params.dT;
        double fsum = 0.0;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            const double d = T - tau[i];
            if (d < -window) f[i] = 0.0;
            else if (d > window) f[i] = 1.0;
            else f[i] = arrival_probability(tau[i], T, params);
            fsum += f[i];
        }
        if (fsum > 0.0) {
            const double consumed = (1.0 - total) * -std::expm1(-params.lambda * fsum * params.dT);
            for (std::size_t i = 0; i < tau.size(); ++i)
                res.value[i] += consumed * f[i] / fsum;
            total += consumed;
        }
        if (total >= params.converge_sum) return res;
    }
    res.converged = false;
    return res;
}

// Players taking part in the control contest: everyone except the disc, the
// holder, and defenders stalling within stall_radius of the holder.
inline std::vector<const ObjectState*> uppcf_filter(const Frame& frame,
                                                    double stall_radius = kStallRadius) {
    const ObjectState* holder = frame.holder();
    std::vector<const ObjectState*> out;
    for (const auto& o : frame.objects) {
        if (o.cls == ObjectClass::Disc) continue;
        if (holder) {
            if (o.id == holder->id) continue;
            if (o.cls == ObjectClass::Defense && dist(o.p, holder->p) <= stall_radius) continue;
        }
        out.push_back(&o);
    }
    return out;
}

// Pass-distance feasibility: decays exponentially away from the disc.
inline double distance_weight(const Vec2& cell, const Vec2& disc_pos,
                              const ControlParams& params = {}) {
    return std::exp(-dist(cell, disc_pos) / params.wd_scale);
}

// Virtual arm half-length: full reach for a touch pass, shrinking linearly to
// zero at arm_scale meters.
inline double arm_half_length(double pass_dist, const ControlParams& params = {}) {
    return 1.0 - std::min(pass_dist / params.arm_scale, 1.0);
}

// Marker screen: virtual arms of half-length r through the marker,
// perpendicular to the throwing lane. An intersected lane is weighted by how
// close the block is to the marker's body.
inline double screen_weight(const Vec2& cell, const Vec2& disc_pos, const Vec2& marker_pos,
                            const ControlParams& params = {}) {
    const double r = arm_half_length(dist(cell, disc_pos), params);
    if (r <= 0.0) return 1.0;
    const Vec2 lane = cell - disc_pos;
    const double len = norm(lane);
    if (len == 0.0) return 1.0;
    const Vec2 perp{-lane.y / len, lane.x / len};
    const Vec2 a0 = marker_pos - perp * r;
    const Vec2 a1 = marker_pos + perp * r;
    const auto hit = segment_intersection(disc_pos, cell, a0, a1);
    if (!hit) return 1.0;
    const double w = dist(marker_pos, *hit) / r;
    return std::clamp(w, params.ws_floor, 1.0);
}

// Nearest defender to the holder, or null when there is no holder.
inline const ObjectState* find_marker(const Frame& frame) {
    const ObjectState* holder = frame.holder();
    if (!holder) return nullptr;
    const ObjectState* best = nullptr;
    double best_d = 0.0;
    for (const auto& o : frame.objects) {
        if (o.cls != ObjectClass::Defense) continue;
        const double d = dist(o.p, holder->p);
        if (!best || d < best_d) {
            best = &o;
            best_d = d;
        }
    }
    return best;
}

struct ControlField {
    int frame = 0;
    Grid grid;
    std::vector<int> cells;              // evaluated cell indices
    std::vector<int> player_ids;         // included players
    std::vector<std::vector<double>> uppcf;   // [player][cell slot]
    std::vector<double> wd;                   // [cell slot]
    std::vector<double> ws;                   // [cell slot]
    std::vector<std::vector<double>> wuppcf;  // [player][cell slot]
    bool converged_all = true;

    int slot_of(int cell_index) const {
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i] == cell_index) return int(i);
        return -1;
    }
    int player_slot(int id) const {
        for (std::size_t i = 0; i < player_ids.size(); ++i)
            if (player_ids[i] == id) return int(i);
        return -1;
    }
};

// Weighted control field over a cell subset (empty subset = whole grid).
inline ControlField wuppcf(const Frame& frame, const Grid& grid, std::vector<int> cell_subset,
                           const ControlParams& params = {}) {
    ControlField field;
    field.frame = frame.frame;
    field.grid = grid;
    if (cell_subset.empty()) {
        cell_subset.resize(grid.cells());
        for (int i = 0; i < grid.cells(); ++i) cell_subset[i] = i;
    }
    field.cells = std::move(cell_subset);

    const Vec2 disc_pos = frame.disc().p;
    const auto included = uppcf_filter(frame, params.stall_radius);
    const ObjectState* marker = find_marker(frame);

    std::vector<double> rt(included.size());
    for (std::size_t i = 0; i < included.size(); ++i) {
        const ObjectState* marked = nullptr;
        if (included[i]->cls == ObjectClass::Defense && included[i]->closest > 0)
            marked = &frame.by_id(included[i]->closest);
        rt[i] = reaction_time(*included[i], disc_pos, marked, params);
        field.player_ids.push_back(included[i]->id);
    }

    const std::size_t ncell = field.cells.size();
    field.uppcf.assign(included.size(), std::vector<double>(ncell, 0.0));
    field.wuppcf.assign(included.size(), std::vector<double>(ncell, 0.0));
    field.wd.resize(ncell);
    field.ws.resize(ncell);

    std::vector<double> tau(included.size());
    for (std::size_t c = 0; c < ncell; ++c) {
        const Vec2 cell = grid.center(field.cells[c]);
        for (std::size_t i = 0; i < included.size(); ++i)
            tau[i] = arrival_time(*included[i], rt[i], cell, params);
        const auto res = integrate_ppcf(tau, params);
        if (!res.converged) field.converged_all = false;
        field.wd[c] = distance_weight(cell, disc_pos, params);
        field.ws[c] = marker ? screen_weight(cell, disc_pos, marker->p, params) : 1.0;
        for (std::size_t i = 0; i < included.size(); ++i) {
            field.uppcf[i][c] = res.value[i];
            field.wuppcf[i][c] = res.value[i] * field.wd[c] * field.ws[c];
        }
    }
    return field;
}

}  // namespace vtcs
