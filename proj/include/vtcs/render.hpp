#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtcs/control.hpp"

namespace vtcs {

enum class FieldLayer { Ppcf, Uppcf, Wuppcf, Wd };

inline FieldLayer parse_layer(const std::string& name) {
    if (name == "ppcf") return FieldLayer::Ppcf;
    if (name == "uppcf") return FieldLayer::Uppcf;
    if (name == "wuppcf") return FieldLayer::Wuppcf;
    if (name == "w_d" || name == "wd") return FieldLayer::Wd;
    throw Error(ErrorCode::UnknownLayer, "unknown layer '" + name + "'");
}

inline const char* to_string(FieldLayer l) {
    switch (l) {
        case FieldLayer::Ppcf: return "ppcf";
        case FieldLayer::Uppcf: return "uppcf";
        case FieldLayer::Wuppcf: return "wuppcf";
        default: return "w_d";
    }
}

// Dense per-cell raster of one layer. For per-player layers this is the sum
// over one team's players (offense by default), the usual way control fields
// are visualized.
inline std::vector<double> layer_raster(const ControlField& field, const Frame& frame,
                                        FieldLayer layer,
                                        ObjectClass team = ObjectClass::Offense) {
    std::vector<double> raster(field.grid.cells(), 0.0);
    for (std::size_t c = 0; c < field.cells.size(); ++c) {
        double v = 0.0;
        switch (layer) {
            case FieldLayer::Wd:
                v = field.wd[c];
                break;
            case FieldLayer::Ppcf:
            case FieldLayer::Uppcf:
                for (std::size_t i = 0; i < field.player_ids.size(); ++i)
                    if (frame.by_id(field.player_ids[i]).cls == team) v += field.uppcf[i][c];
                break;
            case FieldLayer::Wuppcf:
                for (std::size_t i = 0; i < field.player_ids.size(); ++i)
                    if (frame.by_id(field.player_ids[i]).cls == team) v += field.wuppcf[i][c];
                break;
        }
        raster[field.cells[c]] = v;
    }
    return raster;
}

// Grayscale PGM, one byte per cell, row 0 at the top (y = ny-1). Values are
// clamped to [0,1].
inline void write_pgm(const std::vector<double>& raster, const Grid& grid,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
    for (int iy = grid.ny - 1; iy >= 0; --iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double v = std::clamp(raster[grid.index(ix, iy)], 0.0, 1.0);
            out.put(char(std::uint8_t(v * 255.0 + 0.5)));
        }
}

// Color-mapped PPM with a fixed blue->white->red ramp (warm = high).
inline void write_ppm(const std::vector<double>& raster, const Grid& grid,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << "P6\n" << grid.nx << " " << grid.ny << "\n255\n";
    for (int iy = grid.ny - 1; iy >= 0; --iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double v = std::clamp(raster[grid.index(ix, iy)], 0.0, 1.0);
            double r, g, b;
            if (v < 0.5) {
                const double t = v / 0.5;
                r = t;
                g = t;
                b = 1.0;
            } else {
                const double t = (v - 0.5) / 0.5;
                r = 1.0;
                g = 1.0 - t;
                b = 1.0 - t;
            }
            out.put(char(std::uint8_t(r * 255.0 + 0.5)));
            out.put(char(std::uint8_t(g * 255.0 + 0.5)));
            out.put(char(std::uint8_t(b * 255.0 + 0.5)));
        }
}

// Numeric export: array-of-rows (row 0 = y index 0) with grid metadata.
inline nlohmann::json raster_json(const std::vector<double>& raster, const Grid& grid,
                                  FieldLayer layer, int frame) {
    nlohmann::json rows = nlohmann::json::array();
    for (int iy = 0; iy < grid.ny; ++iy) {
        nlohmann::json row = nlohmann::json::array();
        for (int ix = 0; ix < grid.nx; ++ix) row.push_back(raster[grid.index(ix, iy)]);
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"schema_version", 1},
                          {"layer", to_string(layer)},
                          {"frame", frame},
                          {"grid", {{"cell", grid.cell},
                                    {"nx", grid.nx},
                                    {"ny", grid.ny},
                                    {"origin", {grid.origin.x, grid.origin.y}}}},
                          {"rows", std::move(rows)}};
}

}  // namespace vtcs
