#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rkslab/field.hpp"
#include "rkslab/params.hpp"
#include "rkslab/trajectory.hpp"

namespace rks::io {

using json = nlohmann::ordered_json;

/// Shortest exact decimal representation (round-trips bit-for-bit).
std::string format_double(double x);

/// Write-then-rename so readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

/// Columnar CSV with header "r,value".
void save_field_csv(const ScalarField& f, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

CsvTable load_csv(const std::filesystem::path& path);

json grid_to_json(const RadialGrid& g);
GridPtr grid_from_json(const json& j);
json params_to_json(const ModelParams& p);  // grid inlined
ModelParams params_from_json(const json& j);

/// Field CSV plus a JSON sidecar describing grid and model parameters.
void save_field_with_sidecar(const ScalarField& f, const ModelParams& p,
                             const std::filesystem::path& csv_path);
ScalarField load_field_with_sidecar(const std::filesystem::path& csv_path, ModelParams* p_out);

/// Trajectory directory: manifest.json, diagnostics.csv and one CSV per saved
/// sample (columns r,u,v for transformed runs, r,u,c for original runs).
void save_trajectory(const Trajectory& traj, const std::filesystem::path& dir);

}  // namespace rks::io
