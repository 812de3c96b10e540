#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "vtcs/control.hpp"
#include "vtcs/dataio.hpp"
#include "vtcs/detect.hpp"
#include "vtcs/timing.hpp"

namespace vtcs {

// Every tunable of the pipeline in one place. Precedence is
// defaults < config file < command-line flags; the CLI applies flags after
// loading the file.
struct RunConfig {
    SmoothingConfig smoothing;
    DetectionConfig detection;
    ControlParams control;
    TimingParams timing;
    double grid_cell = 1.0;
    int jobs = 1;
    std::string out_dir = ".";

    Grid grid() const { return Grid::full_field(grid_cell); }
};

namespace detail {

inline void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
    std::istringstream v(value);
    auto num = [&]() {
        double d;
        if (!(std::istringstream(value) >> d))
            throw Error(ErrorCode::BadField, "config: bad numeric value for " + key);
        return d;
    };
    if (key == "smoothing.window") cfg.smoothing.window = int(num());
    else if (key == "detect.accel_min") cfg.detection.accel_min = num();
    else if (key == "detect.no_hold_frames") cfg.detection.no_hold_frames = int(num());
    else if (key == "detect.init_angle_max") cfg.detection.init_angle_max = num();
    else if (key == "detect.fwd_speed_min") cfg.detection.fwd_speed_min = num();
    else if (key == "detect.fwd_turn_max") cfg.detection.fwd_turn_max = num();
    else if (key == "detect.fwd_mean_dev_max") cfg.detection.fwd_mean_dev_max = num();
    else if (key == "detect.bwd_speed_min") cfg.detection.bwd_speed_min = num();
    else if (key == "detect.bwd_decel_max") cfg.detection.bwd_decel_max = num();
    else if (key == "detect.excl_radius") cfg.detection.excl_radius = num();
    else if (key == "detect.excl_cone") cfg.detection.excl_cone = num();
    else if (key == "control.lambda") cfg.control.lambda = num();
    else if (key == "control.v_max") cfg.control.v_max = num();
    else if (key == "control.sigma_arrival") cfg.control.sigma_arrival = num();
    else if (key == "control.dT") cfg.control.dT = num();
    else if (key == "control.T_max") cfg.control.T_max = num();
    else if (key == "control.stall_radius") cfg.control.stall_radius = num();
    else if (key == "control.arm_scale") cfg.control.arm_scale = num();
    else if (key == "control.wd_scale") cfg.control.wd_scale = num();
    else if (key == "control.ws_floor") cfg.control.ws_floor = num();
    else if (key == "timing.v_disc") cfg.timing.v_disc = num();
    else if (key == "timing.window") cfg.timing.window = int(num());
    else if (key == "timing.eval_start_offset") cfg.timing.eval_start_offset = int(num());
    else if (key == "grid_cell") cfg.grid_cell = num();
    else if (key == "jobs") cfg.jobs = int(num());
    else if (key == "out_dir") cfg.out_dir = value;
    else throw Error(ErrorCode::BadField, "config: unknown key " + key);
}

}  // namespace detail

// Plain-text key/value config: "key value" per line, '#' comments.
inline void load_config(RunConfig& cfg, std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key, value;
        if (!(ss >> key)) continue;
        std::getline(ss, value);
        const auto pos = value.find_first_not_of(" \t");
        value = pos == std::string::npos ? "" : value.substr(pos);
        detail::apply_kv(cfg, key, value);
    }
}

inline void load_config(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
    load_config(cfg, in);
}

// Dump of every effective parameter, parseable by load_config.
inline void write_resolved_config(const RunConfig& cfg, std::ostream& out) {
    out << "smoothing.window " << cfg.smoothing.window << "\n"
        << "detect.accel_min " << cfg.detection.accel_min << "\n"
        << "detect.no_hold_frames " << cfg.detection.no_hold_frames << "\n"
        << "detect.init_angle_max " << cfg.detection.init_angle_max << "\n"
        << "detect.fwd_speed_min " << cfg.detection.fwd_speed_min << "\n"
        << "detect.fwd_turn_max " << cfg.detection.fwd_turn_max << "\n"
        << "detect.fwd_mean_dev_max " << cfg.detection.fwd_mean_dev_max << "\n"
        << "detect.bwd_speed_min " << cfg.detection.bwd_speed_min << "\n"
        << "detect.bwd_decel_max " << cfg.detection.bwd_decel_max << "\n"
        << "detect.excl_radius " << cfg.detection.excl_radius << "\n"
        << "detect.excl_cone " << cfg.detection.excl_cone << "\n"
        << "control.lambda " << cfg.control.lambda << "\n"
        << "control.v_max " << cfg.control.v_max << "\n"
        << "control.sigma_arrival " << cfg.control.sigma_arrival << "\n"
        << "control.dT " << cfg.control.dT << "\n"
        << "control.T_max " << cfg.control.T_max << "\n"
        << "control.stall_radius " << cfg.control.stall_radius << "\n"
        << "control.arm_scale " << cfg.control.arm_scale << "\n"
        << "control.wd_scale " << cfg.control.wd_scale << "\n"
        << "control.ws_floor " << cfg.control.ws_floor << "\n"
        << "timing.v_disc " << cfg.timing.v_disc << "\n"
        << "timing.window " << cfg.timing.window << "\n"
        << "timing.eval_start_offset " << cfg.timing.eval_start_offset << "\n"
        << "grid_cell " << cfg.grid_cell << "\n"
        << "jobs " << cfg.jobs << "\n"
        << "out_dir " << cfg.out_dir << "\n";
}

}  // namespace vtcs
