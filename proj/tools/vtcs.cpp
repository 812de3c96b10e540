#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "vtcs/vtcs.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::string config_path;
    int jobs = 1;
    double grid_cell = 1.0;
    double v_disc = 12.0;
    std::string out_dir = ".";
    bool jobs_set = false, grid_set = false, vdisc_set = false, outdir_set = false;
};

vtcs::RunConfig resolve_config(const GlobalOpts& g) {
    vtcs::RunConfig cfg;
    if (!g.config_path.empty()) vtcs::load_config(cfg, g.config_path);
    // flags override the file
    if (g.jobs_set) cfg.jobs = g.jobs;
    if (g.grid_set) cfg.grid_cell = g.grid_cell;
    if (g.vdisc_set) cfg.timing.v_disc = g.v_disc;
    if (g.outdir_set) cfg.out_dir = g.out_dir;
    return cfg;
}

void emit_resolved(const vtcs::RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / "resolved-config.txt");
    vtcs::write_resolved_config(cfg, out);
}

vtcs::FrameTable preprocess(const std::string& path, const vtcs::RunConfig& cfg) {
    auto table = vtcs::parse_csv(path);
    table = vtcs::interpolate_disc(table);
    table = vtcs::estimate_derivatives(table, cfg.smoothing);
    return vtcs::pair_closest(table);
}

int cmd_ingest(const std::string& input, const GlobalOpts& g) {
    const auto cfg = resolve_config(g);
    emit_resolved(cfg);
    vtcs::FrameTable table;
    try {
        table = preprocess(input, cfg);
    } catch (const vtcs::Error& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 2;
    }
    const auto poss = table.possessions();
    json summary{{"schema_version", 1},
                 {"frames", table.size()},
                 {"possessions", poss.size()},
                 {"fps", table.fps},
                 {"objects_per_frame", vtcs::kObjectsPerFrame}};
    vtcs::write_csv(table, (fs::path(cfg.out_dir) / "dataset.csv").string());
    std::ofstream((fs::path(cfg.out_dir) / "ingest-summary.json")) << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_detect(const std::string& input, const GlobalOpts& g) {
    const auto cfg = resolve_config(g);
    emit_resolved(cfg);
    const auto table = vtcs::parse_csv(input);
    const auto seqs = vtcs::detect_sequences(table, cfg.detection);
    std::ofstream out(fs::path(cfg.out_dir) / "sequences.csv");
    out << "possession_id,player_id,start,t0,end,retained\n";
    for (const auto& s : seqs)
        out << s.possession_id << ',' << s.player_id << ',' << s.start << ',' << s.t0 << ','
            << s.end << ',' << (s.retained ? "true" : "false") << "\n";
    std::cout << "detected " << seqs.size() << " sequences\n";
    return 0;
}

int cmd_sweep(const std::string& input, int only_sequence, bool xi_zero_only, bool vframe_csv,
              bool heatmaps, const GlobalOpts& g) {
    const auto cfg = resolve_config(g);
    emit_resolved(cfg);
    const auto table = vtcs::parse_csv(input);
    auto seqs = vtcs::detect_sequences(table, cfg.detection);
    std::erase_if(seqs, [](const vtcs::MovementSequence& s) { return !s.retained; });
    if (only_sequence >= 0 && only_sequence < int(seqs.size()))
        seqs = {seqs[only_sequence]};
    if (seqs.empty()) {
        std::cerr << "no retained sequences\n";
        return 1;
    }
    const auto grid = cfg.grid();
    int failures = 0;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        const auto& seq = seqs[i];
        try {
            auto scenarios = vtcs::build_sweep(table, seq);
            if (xi_zero_only)
                std::erase_if(scenarios,
                              [](const vtcs::CounterfactualScenario& s) { return s.xi != 0; });
            const auto rep =
                vtcs::evaluate_sweep(scenarios, grid, cfg.control, cfg.timing, cfg.jobs);
            const std::string stem = "sweep_" + std::to_string(i);
            std::ofstream(fs::path(cfg.out_dir) / (stem + ".json"))
                << vtcs::report_json(rep, seq).dump(2) << "\n";
            if (vframe_csv) {
                std::ofstream vf(fs::path(cfg.out_dir) / (stem + "_vframe.csv"));
                vf << "xi,frame,v_frame\n";
                for (std::size_t s = 0; s < rep.xi_values.size(); ++s)
                    for (std::size_t k = 0; k < rep.v_frame_series[s].size(); ++k)
                        vf << rep.xi_values[s] << ',' << rep.span_begin + int(k) << ','
                           << rep.v_frame_series[s][k] << "\n";
            }
            if (heatmaps) {
                // actual and best-counterfactual scenarios at their argmax frames
                for (std::size_t s = 0; s < scenarios.size(); ++s) {
                    if (scenarios[s].xi != 0 && scenarios[s].xi != rep.best_xi) continue;
                    const auto& fr = scenarios[s].table.at(rep.argmax_frame[s]);
                    const auto field = vtcs::wuppcf(fr, grid, {}, cfg.control);
                    const auto raster =
                        vtcs::layer_raster(field, fr, vtcs::FieldLayer::Wuppcf);
                    vtcs::write_ppm(raster, grid,
                                    (fs::path(cfg.out_dir) /
                                     (stem + "_xi" + std::to_string(scenarios[s].xi) + ".ppm"))
                                        .string());
                }
            }
            std::cout << stem << ": v_timing="
                      << (rep.has_actual ? std::to_string(rep.v_timing) : "n/a")
                      << " best_xi=" << rep.best_xi << "\n";
        } catch (const vtcs::Error& e) {
            std::cerr << "sequence " << i << " failed: " << e.what() << "\n";
            ++failures;
        }
    }
    return failures == int(seqs.size()) ? 1 : 0;
}

// samples CSV: sequence,player,value,prob ; roster CSV: player,group
int cmd_stats(const std::string& samples_path, const std::string& roster_path,
              const GlobalOpts& g) {
    const auto cfg = resolve_config(g);
    emit_resolved(cfg);

    std::map<int, vtcs::SkillGroup> roster;
    {
        std::ifstream in(roster_path);
        if (!in) throw vtcs::Error(vtcs::ErrorCode::IoError, "cannot open " + roster_path);
        std::string line;
        std::getline(in, line);  // header: player,group
        while (std::getline(in, line)) {
            std::istringstream ss(line);
            std::string pid, grp;
            std::getline(ss, pid, ',');
            std::getline(ss, grp, ',');
            if (pid.empty()) continue;
            if (grp == "group1" || grp == "1")
                roster[std::stoi(pid)] = vtcs::SkillGroup::Group1;
            else if (grp == "group2" || grp == "2")
                roster[std::stoi(pid)] = vtcs::SkillGroup::Group2;
            else
                throw vtcs::Error(vtcs::ErrorCode::BadField,
                                  roster_path + ": unknown group '" + grp + "'");
        }
    }

    std::vector<vtcs::LabeledSample> samples;
    {
        std::ifstream in(samples_path);
        if (!in) throw vtcs::Error(vtcs::ErrorCode::IoError, "cannot open " + samples_path);
        std::string line;
        std::getline(in, line);  // header: sequence,player,value,prob
        while (std::getline(in, line)) {
            std::istringstream ss(line);
            std::string seq, pid, val, prob;
            std::getline(ss, seq, ',');
            std::getline(ss, pid, ',');
            std::getline(ss, val, ',');
            std::getline(ss, prob, ',');
            if (seq.empty()) continue;
            const double p = std::stod(prob);
            // ambiguous target probabilities are dropped
            if (p < 0.55 && p > 0.30) continue;
            vtcs::LabeledSample s;
            s.sequence_id = std::stoi(seq);
            s.value = std::stod(val);
            s.label = p >= 0.55 ? vtcs::PassLabel::Target : vtcs::PassLabel::Others;
            const auto it = roster.find(std::stoi(pid));
            s.group = it == roster.end() ? vtcs::SkillGroup::All : it->second;
            samples.push_back(s);
        }
    }

    auto summarize = [&](vtcs::SkillGroup grp) -> json {
        std::vector<double> target, others;
        for (const auto& s : samples) {
            if (grp != vtcs::SkillGroup::All && s.group != grp) continue;
            (s.label == vtcs::PassLabel::Target ? target : others).push_back(s.value);
        }
        if (target.empty() || others.empty())
            return json{{"n_target", target.size()}, {"n_others", others.size()}};
        const auto ks = vtcs::ks_two_sample(target, others);
        const auto mwu = vtcs::mann_whitney_u(target, others);
        const double delta = vtcs::cliffs_delta(target, others);
        return json{{"n_target", target.size()}, {"n_others", others.size()},
                    {"ks_d", ks.statistic},     {"ks_p", ks.p_value},
                    {"u", mwu.statistic},       {"u_p", mwu.p_value},
                    {"cliffs_delta", delta}};
    };

    json out{{"schema_version", 1},
             {"all", summarize(vtcs::SkillGroup::All)},
             {"group1", summarize(vtcs::SkillGroup::Group1)},
             {"group2", summarize(vtcs::SkillGroup::Group2)}};
    std::ofstream(fs::path(cfg.out_dir) / "stats-summary.json") << out.dump(2) << "\n";
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_render(const std::string& input, const std::string& layer_name, int frame_from,
               int frame_to, const std::string& format, const GlobalOpts& g) {
    const auto cfg = resolve_config(g);
    emit_resolved(cfg);
    const auto layer = vtcs::parse_layer(layer_name);
    const auto table = vtcs::parse_csv(input);
    const auto grid = cfg.grid();
    for (int f = frame_from; f <= frame_to; ++f) {
        if (!table.has(f)) continue;
        const auto& fr = table.at(f);
        const auto field = vtcs::wuppcf(fr, grid, {}, cfg.control);
        const auto raster = vtcs::layer_raster(field, fr, layer);
        const std::string stem =
            (fs::path(cfg.out_dir) / (layer_name + "_" + std::to_string(f))).string();
        if (format == "pgm") vtcs::write_pgm(raster, grid, stem + ".pgm");
        else if (format == "ppm") vtcs::write_ppm(raster, grid, stem + ".ppm");
        else
            std::ofstream(stem + ".json")
                << vtcs::raster_json(raster, grid, layer, f).dump() << "\n";
    }
    return 0;
}

int cmd_synth(const std::string& script_path, const std::string& out_csv, const GlobalOpts& g) {
    const auto cfg = resolve_config(g);
    emit_resolved(cfg);
    const auto play = vtcs::parse_script(script_path);
    const auto table = vtcs::generate(play);
    vtcs::write_csv(table, out_csv.empty()
                               ? (fs::path(cfg.out_dir) / "fixture.csv").string()
                               : out_csv);
    std::cout << "generated " << table.size() << " frames\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Movement-initiation timing evaluation for Ultimate Frisbee tracking data"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "key/value config file");
    app.add_option("--jobs", g.jobs, "parallelism degree")->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { g.jobs_set = true; });
    app.add_option("--grid-cell", g.grid_cell, "grid cell size [m]")
        ->each([&](const std::string&) { g.grid_set = true; });
    app.add_option("--v-disc", g.v_disc, "disc flight speed [m/s]")
        ->each([&](const std::string&) { g.vdisc_set = true; });
    app.add_option("--out-dir", g.out_dir, "output directory")
        ->each([&](const std::string&) { g.outdir_set = true; });

    std::string input, samples, roster, layer = "wuppcf", format = "pgm", script, out_csv;
    int seq_idx = -1, frame_from = 0, frame_to = -1;
    bool xi_zero_only = false, vframe_csv = false, heatmaps = false;

    auto* ingest = app.add_subcommand("ingest", "validate and preprocess a tracking CSV");
    ingest->add_option("input", input, "raw tracking CSV")->required();

    auto* detect = app.add_subcommand("detect", "detect movement sequences");
    detect->add_option("input", input, "ingested tracking CSV")->required();

    auto* sweep = app.add_subcommand("sweep", "counterfactual sweep and timing reports");
    sweep->add_option("input", input, "ingested tracking CSV")->required();
    sweep->add_option("--sequence", seq_idx, "evaluate only this retained sequence index");
    sweep->add_flag("--xi-zero-only", xi_zero_only, "actual scenario only");
    sweep->add_flag("--vframe-csv", vframe_csv, "emit per-frame V_frame CSV");
    sweep->add_flag("--heatmaps", heatmaps, "emit heatmaps for xi=0 and best xi");

    auto* stats = app.add_subcommand("stats", "validation statistics over V_frame samples");
    stats->add_option("--samples", samples, "CSV: sequence,player,value,prob")->required();
    stats->add_option("--roster", roster, "CSV: player,group")->required();

    auto* render = app.add_subcommand("render", "heatmap images for a frame range");
    render->add_option("input", input, "ingested tracking CSV")->required();
    render->add_option("--layer", layer, "ppcf|uppcf|wuppcf|w_d");
    render->add_option("--from", frame_from, "first frame");
    render->add_option("--to", frame_to, "last frame");
    render->add_option("--format", format, "pgm|ppm|json");

    auto* synth = app.add_subcommand("synth", "generate a synthetic fixture from a script");
    synth->add_option("script", script, "motion script file")->required();
    synth->add_option("--out", out_csv, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(input, g);
        if (*detect) return cmd_detect(input, g);
        if (*sweep) return cmd_sweep(input, seq_idx, xi_zero_only, vframe_csv, heatmaps, g);
        if (*stats) return cmd_stats(samples, roster, g);
        if (*render) return cmd_render(input, layer, frame_from, frame_to, format, g);
        if (*synth) return cmd_synth(script, out_csv, g);
    } catch (const vtcs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code == vtcs::ErrorCode::BadObjectCount ||
                       e.code == vtcs::ErrorCode::OutOfBounds ||
                       e.code == vtcs::ErrorCode::DuplicateHolder ||
                       e.code == vtcs::ErrorCode::MissingColumn
                   ? 2
                   : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
