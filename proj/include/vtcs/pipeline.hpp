#pragma once

#include <json.hpp>

#include "vtcs/counterfactual.hpp"
#include "vtcs/detect.hpp"
#include "vtcs/parallel.hpp"
#include "vtcs/timing.hpp"

namespace vtcs {

// Sweep evaluation: V_frame series for every scenario (parallel over
// scenario x frame tasks), reduced to a TimingReport by an ordered fold.
inline TimingReport evaluate_sweep(const std::vector<CounterfactualScenario>& scenarios,
                                   const Grid& grid, const ControlParams& cparams = {},
                                   const TimingParams& tparams = {}, int jobs = 1) {
    if (scenarios.empty()) throw Error(ErrorCode::SpanTooShort, "no scenarios to evaluate");
    const int span_begin = scenarios.front().span_begin;
    const int span_end = scenarios.front().span_end;
    const std::size_t span_len = std::size_t(span_end - span_begin + 1);

    std::vector<std::vector<double>> series(scenarios.size(),
                                            std::vector<double>(span_len, 0.0));
    parallel_for(scenarios.size() * span_len, jobs, [&](std::size_t task) {
        const std::size_t s = task / span_len;
        const std::size_t k = task % span_len;
        series[s][k] = v_frame(scenarios[s], span_begin + int(k), grid, cparams, tparams);
    });

    std::vector<int> xi_values;
    std::vector<ScenarioScore> scores;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        xi_values.push_back(scenarios[s].xi);
        scores.push_back(v_scenario(series[s], span_begin, tparams));
    }
    TimingReport rep = v_timing(xi_values, scores);
    rep.v_frame_series = std::move(series);
    rep.span_begin = span_begin;
    rep.span_end = span_end;
    return rep;
}

inline TimingReport sweep_sequence(const FrameTable& table, const MovementSequence& seq,
                                   const Grid& grid, const ControlParams& cparams = {},
                                   const TimingParams& tparams = {}, int jobs = 1) {
    return evaluate_sweep(build_sweep(table, seq), grid, cparams, tparams, jobs);
}

inline nlohmann::json report_json(const TimingReport& rep, const MovementSequence& seq) {
    return nlohmann::json{
        {"schema_version", 1},
        {"sequence",
         {{"possession_id", seq.possession_id},
          {"player_id", seq.player_id},
          {"start", seq.start},
          {"t0", seq.t0},
          {"end", seq.end}}},
        {"span", {{"begin", rep.span_begin}, {"end", rep.span_end}}},
        {"xi_values", rep.xi_values},
        {"v_scenario", rep.v_scenario},
        {"argmax_frame", rep.argmax_frame},
        {"v_timing", rep.has_actual ? nlohmann::json(rep.v_timing) : nlohmann::json()},
        {"best_xi", rep.best_xi}};
}

}  // namespace vtcs
