#pragma once

#include <optional>
#include <vector>

#include "vtcs/control.hpp"
#include "vtcs/counterfactual.hpp"
#include "vtcs/types.hpp"

namespace vtcs {

struct TimingParams {
    double v_disc = 12.0;        // disc flight speed [m/s]
    int window = 15;             // moving-average window [frames]
    int eval_start_offset = 15;  // frames before the earliest shifted t0
};

struct Interception {
    double tau = 0.0;    // s
    double theta = 0.0;  // disc heading [rad]
};

// Meet-in-flight time: |d + tau v| = tau v_disc with d = player - disc, the
// quadratic (|v|^2 - v_disc^2) tau^2 + 2 (d.v) tau + |d|^2 = 0. Smallest
// positive root, or nothing when the disc cannot catch the player.
inline std::optional<Interception> intercept(const ObjectState& player, const Vec2& disc_pos,
                                             double v_disc) {
    const Vec2 d = player.p - disc_pos;
    if (norm(d) == 0.0) return Interception{0.0, heading(player.v)};
    const double a = dot(player.v, player.v) - v_disc * v_disc;
    const double b = 2.0 * dot(d, player.v);
    const double c = dot(d, d);
    double tau = -1.0;
    if (std::abs(a) < 1e-12) {
        if (b == 0.0) return std::nullopt;
        tau = -c / b;
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) return std::nullopt;
        const double sq = std::sqrt(disc);
        const double r1 = (-b - sq) / (2.0 * a);
        const double r2 = (-b + sq) / (2.0 * a);
        const double lo = std::min(r1, r2), hi = std::max(r1, r2);
        if (lo > 0.0) tau = lo;
        else if (hi > 0.0) tau = hi;
        else return std::nullopt;
    }
    if (tau <= 0.0) return std::nullopt;
    const Vec2 meet = player.p + player.v * tau;
    return Interception{tau, heading(meet - disc_pos)};
}

struct ReachableArea {
    double tau = 0.0;
    double theta = 0.0;
    Vec2 center;
    double radius = 0.0;
    std::vector<int> cells;  // grid-cell subset inside the circle, clipped to field
};

// Circle where player and disc can meet: centered at the predicted reception
// point, radius half the player's speed times the interception time. Zero or
// sub-cell radius falls back to the single nearest cell.
inline std::optional<ReachableArea> reachable_area(const ObjectState& player, const Vec2& disc_pos,
                                                   const TimingParams& params, const Grid& grid) {
    const auto hit = intercept(player, disc_pos, params.v_disc);
    if (!hit) return std::nullopt;
    ReachableArea area;
    area.tau = hit->tau;
    area.theta = hit->theta;
    area.center = player.p + player.v * hit->tau;
    area.radius = 0.5 * norm(player.v) * hit->tau;

    const int ix0 = int(std::floor((area.center.x - area.radius - grid.origin.x) / grid.cell));
    const int ix1 = int(std::floor((area.center.x + area.radius - grid.origin.x) / grid.cell));
    const int iy0 = int(std::floor((area.center.y - area.radius - grid.origin.y) / grid.cell));
    const int iy1 = int(std::floor((area.center.y + area.radius - grid.origin.y) / grid.cell));
    for (int iy = std::max(iy0, 0); iy <= std::min(iy1, grid.ny - 1); ++iy)
        for (int ix = std::max(ix0, 0); ix <= std::min(ix1, grid.nx - 1); ++ix)
            if (dist(grid.center(ix, iy), area.center) <= area.radius)
                area.cells.push_back(grid.index(ix, iy));
    if (area.cells.empty()) {
        // fall back only if the circle touches the field at all
        if (area.center.x + area.radius < grid.origin.x ||
            area.center.x - area.radius > grid.origin.x + grid.nx * grid.cell ||
            area.center.y + area.radius < grid.origin.y ||
            area.center.y - area.radius > grid.origin.y + grid.ny * grid.cell)
            return area;  // circle wholly out of bounds: empty cell set
        area.cells.push_back(grid.nearest(area.center));
    }
    return area;
}

// Frame value: mean wUPPCF of the target over its reachable area. No
// interception means no reachable space, scored 0.
inline double v_frame(const CounterfactualScenario& scenario, int t, const Grid& grid,
                      const ControlParams& cparams = {}, const TimingParams& tparams = {}) {
    const Frame& fr = scenario.table.at(t);
    const ObjectState& target = fr.by_id(scenario.target_id);
    const auto area = reachable_area(target, fr.disc().p, tparams, grid);
    if (!area || area->cells.empty()) return 0.0;
    const ControlField field = wuppcf(fr, grid, area->cells, cparams);
    const int ps = field.player_slot(scenario.target_id);
    if (ps < 0) return 0.0;  // target is the holder this frame
    double sum = 0.0;
    for (double v : field.wuppcf[ps]) sum += v;
    return sum / double(field.wuppcf[ps].size());
}

struct ScenarioScore {
    double value = 0.0;
    int argmax_frame = 0;  // first frame of the winning window
};

// Max of the 15-frame moving average over the series; windows fully inside
// the span only. series[k] is V_frame at frame span_begin + k.
inline ScenarioScore v_scenario(const std::vector<double>& series, int span_begin,
                                const TimingParams& params = {}) {
    const int w = params.window;
    if (int(series.size()) < w + 1)
        throw Error(ErrorCode::SpanTooShort, "evaluation span shorter than window + 1 frames");
    ScenarioScore best;
    bool first = true;
    // window is V_frame(t+1..t+w), so t ranges over [span_begin-1, last-w]
    for (std::size_t t = 0; t + w < series.size() + 1; ++t) {
        double sum = 0.0;
        for (int k = 0; k < w; ++k) sum += series[t + k];
        const double avg = sum / double(w);
        if (first || avg > best.value) {
            best.value = avg;
            best.argmax_frame = span_begin + int(t);
            first = false;
        }
    }
    return best;
}

struct TimingReport {
    std::vector<int> xi_values;
    std::vector<double> v_scenario;
    std::vector<int> argmax_frame;
    std::vector<std::vector<double>> v_frame_series;  // per xi, over the span
    int span_begin = 0;
    int span_end = 0;
    double v_timing = 0.0;
    int best_xi = 0;  // best counterfactual (xi != 0)
    bool has_actual = false;
};

// V_timing = V_scenario(0) - max over xi != 0. Positive means the actual
// timing beat every counterfactual.
inline TimingReport v_timing(const std::vector<int>& xi_values,
                             const std::vector<ScenarioScore>& scores) {
    TimingReport rep;
    rep.xi_values = xi_values;
    double actual = 0.0, best_cf = 0.0;
    bool have_cf = false;
    for (std::size_t i = 0; i < xi_values.size(); ++i) {
        rep.v_scenario.push_back(scores[i].value);
        rep.argmax_frame.push_back(scores[i].argmax_frame);
        if (xi_values[i] == 0) {
            actual = scores[i].value;
            rep.has_actual = true;
        } else if (!have_cf || scores[i].value > best_cf) {
            best_cf = scores[i].value;
            rep.best_xi = xi_values[i];
            have_cf = true;
        }
    }
    if (rep.has_actual && have_cf) rep.v_timing = actual - best_cf;
    return rep;
}

}  // namespace vtcs
