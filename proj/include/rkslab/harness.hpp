#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rkslab/io.hpp"
#include "rkslab/params.hpp"

namespace rks::harness {

/// Everything a campaign needs, CLI- and config-file-fillable. Validation is
/// strict so a bad config dies before any compute.
struct ExperimentConfig {
    // model + grid
    int n = 2;
    double a = 1.0, b = 2.0;
    std::size_t m = 401;
    std::string grid_kind = "uniform";
    double grid_ratio = 4.0;
    double u_bar = 1.0, v_bar1 = 0.0, v_bar2 = 0.0;
    double T = 1.0;
    double dt = 2.5e-4;
    std::string preset = "bump";

    // sweep / layer
    std::vector<double> eps_list = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
    std::vector<double> alphas = {0.3, 0.4};
    double layer_threshold = 1e-2;
    double C0 = 1.0;

    // order studies
    std::vector<std::size_t> mms_spatial_m = {26, 51, 101, 201};
    std::vector<double> mms_temporal_dt = {4e-2, 2e-2, 1e-2, 5e-3};
    double mms_eps = 0.05;
    double mms_vbar = 0.25;
    double mms_spatial_dt0 = 2e-3;
    double mms_spatial_T = 0.2;
    std::size_t mms_temporal_m = 401;
    double mms_temporal_T = 0.5;

    // lemma batch
    std::uint64_t seed = 1;
    int instances = 200;

    // round trip
    std::vector<std::size_t> roundtrip_m = {51, 101, 201};
    double roundtrip_eps = 1e-2;
    double roundtrip_T = 0.5;

    // long-time run
    double longtime_T = 20.0;
    double longtime_dt = 1e-3;

    // execution
    std::string out_dir = "out";
    int jobs = 1;
    std::size_t save_every = 0;
    bool resume = true;

    void validate() const;
    io::json to_json() const;
    std::uint64_t config_hash() const;  // FNV-1a over the canonical JSON dump
    ModelParams to_params(double eps) const;
};

/// Each campaign computes a JSON summary (the single source of truth), writes
/// it under out_dir, then renders CSV and plot-data files from it. The
/// `report` entry point re-renders from stored summaries without recomputing.
io::json run_sweep(const ExperimentConfig& cfg);
io::json run_layer(const ExperimentConfig& cfg);  // sweep + verdict emphasis
io::json run_mms(const ExperimentConfig& cfg);
io::json run_longtime(const ExperimentConfig& cfg);
io::json run_roundtrip(const ExperimentConfig& cfg);
io::json run_lemma_batch(const ExperimentConfig& cfg);
io::json run_single(const ExperimentConfig& cfg, const std::string& kind, double eps);

/// Re-render CSV/plot-data for every summary JSON found under dir.
/// Returns the list of summaries that were rendered.
std::vector<std::string> render_reports(const std::filesystem::path& dir);

}  // namespace rks::harness
