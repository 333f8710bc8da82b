// rkslab — numerical laboratory for a radial chemotaxis system and its
// vanishing-diffusivity limit. Subcommands drive solves, sweeps, convergence
// studies, layer-detection campaigns and ODE-lemma verification batches.

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rkslab/harness.hpp"
#include "rkslab/io.hpp"

namespace {

using rks::harness::ExperimentConfig;
using rks::io::json;

struct Assertions {
    // NaN / negative sentinel = not asserted
    double u_slope_min = -1.0;
    double w_slope_min = -1.0;
    double spatial_order_min = -1.0;
    double temporal_order_min = -1.0;
    double decay_frac_max = -1.0;
    double roundtrip_ratio_min = -1.0;
    bool monotone_u = false;
    bool lemma_all_pass = true;  // verify-lemma asserts by default
};

// Shared model/experiment options live on the root app so a single TOML file
// (flat keys named after the long options) configures every subcommand; the
// subcommands enable fallthrough, so the flags may also follow the subcommand.
void add_config_options(CLI::App& cmd, ExperimentConfig& cfg) {
    cmd.set_config("--config", "", "TOML config file; flags override file values");
    cmd.add_option("--n", cfg.n, "Spatial dimension (>= 2)")->capture_default_str();
    cmd.add_option("--interval-a", cfg.a, "Inner radius a > 0")->capture_default_str();
    cmd.add_option("--interval-b", cfg.b, "Outer radius b > a")->capture_default_str();
    cmd.add_option("--m", cfg.m, "Grid nodes (>= 3)")->capture_default_str();
    cmd.add_option("--grid", cfg.grid_kind, "Grid kind: uniform | boundary-graded")
        ->capture_default_str();
    cmd.add_option("--grid-ratio", cfg.grid_ratio, "Interior/endpoint spacing ratio (graded)")
        ->capture_default_str();
    cmd.add_option("--u-bar", cfg.u_bar, "Boundary density")->capture_default_str();
    cmd.add_option("--v-bar1", cfg.v_bar1, "Boundary datum for v at r = a")
        ->capture_default_str();
    cmd.add_option("--v-bar2", cfg.v_bar2, "Boundary datum for v at r = b")
        ->capture_default_str();
    cmd.add_option("--T", cfg.T, "Final time")->capture_default_str();
    cmd.add_option("--dt", cfg.dt, "Time step")->capture_default_str();
    cmd.add_option("--preset", cfg.preset, "Initial data preset")->capture_default_str();
    cmd.add_option("--eps", cfg.eps_list, "Diffusivity sweep values, strictly decreasing")
        ->expected(-1);
    cmd.add_option("--alpha", cfg.alphas, "Collar exponents, each in (0, 1/2)")->expected(-1);
    cmd.add_option("--layer-threshold", cfg.layer_threshold, "Sup-error layer threshold")
        ->capture_default_str();
    cmd.add_option("--C0", cfg.C0, "Theorem constant C0 in the eps0 formula")
        ->capture_default_str();
    cmd.add_option("--mms-spatial-m", cfg.mms_spatial_m, "Grid sizes of the spatial study")
        ->expected(-1);
    cmd.add_option("--mms-temporal-dt", cfg.mms_temporal_dt, "Step sizes of the temporal study")
        ->expected(-1);
    cmd.add_option("--mms-eps", cfg.mms_eps, "Diffusivity for manufactured runs")
        ->capture_default_str();
    cmd.add_option("--mms-vbar", cfg.mms_vbar, "Robin weight for the manufactured chemical")
        ->capture_default_str();
    cmd.add_option("--mms-spatial-dt0", cfg.mms_spatial_dt0,
                   "Step at the coarsest spatial level (scaled like h^2 below)")
        ->capture_default_str();
    cmd.add_option("--mms-spatial-T", cfg.mms_spatial_T, "Horizon of the spatial study")
        ->capture_default_str();
    cmd.add_option("--mms-temporal-m", cfg.mms_temporal_m, "Grid size of the temporal study")
        ->capture_default_str();
    cmd.add_option("--mms-temporal-T", cfg.mms_temporal_T, "Horizon of the temporal study")
        ->capture_default_str();
    cmd.add_option("--seed", cfg.seed, "Base seed of randomized batches")->capture_default_str();
    cmd.add_option("--instances", cfg.instances, "Randomized instances to check")
        ->capture_default_str();
    cmd.add_option("--roundtrip-m", cfg.roundtrip_m, "Grid sizes of the reconstruction study")
        ->expected(-1);
    cmd.add_option("--roundtrip-eps", cfg.roundtrip_eps, "Diffusivity of the reconstruction study")
        ->capture_default_str();
    cmd.add_option("--roundtrip-T", cfg.roundtrip_T, "Horizon of the reconstruction study")
        ->capture_default_str();
    cmd.add_option("--longtime-T", cfg.longtime_T, "Horizon of the decay run")
        ->capture_default_str();
    cmd.add_option("--longtime-dt", cfg.longtime_dt, "Step of the decay run")
        ->capture_default_str();
    cmd.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--jobs", cfg.jobs, "Concurrent sweep points")->capture_default_str();
    cmd.add_option("--save-every", cfg.save_every, "Sample thinning (0 = auto, >= 100 samples)")
        ->capture_default_str();
    cmd.add_flag("--resume,!--no-resume", cfg.resume, "Reuse finished sweep points on restart")
        ->capture_default_str();
}

int check(bool ok, const char* what, int rc) {
    std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what);
    return ok ? rc : 1;
}

double num(const json& v) { return v.is_null() ? -1.0 : v.get<double>(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rkslab: radial chemotaxis / vanishing-diffusivity laboratory\n"
        "Model/experiment options are global: give them before or after the subcommand."};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    Assertions want;
    std::string run_kind = "limit";
    double run_eps = 0.0;
    std::string report_dir;

    add_config_options(app, cfg);

    CLI::App* c_run = app.add_subcommand("run", "Single solve; writes the trajectory + summary");
    c_run->fallthrough();
    c_run->add_option("--kind", run_kind, "transformed | limit | original")
        ->capture_default_str();
    c_run->add_option("--eps-value", run_eps, "Diffusivity of the run (ignored for limit)")
        ->capture_default_str();

    CLI::App* c_sweep = app.add_subcommand("sweep", "Diffusivity sweep against the limit run");
    c_sweep->fallthrough();
    c_sweep->add_option("--assert-u-slope", want.u_slope_min,
                        "Fail unless the fitted u-rate is at least this");
    c_sweep->add_option("--assert-w-slope", want.w_slope_min,
                        "Fail unless the fitted weighted-gradient rate is at least this");
    c_sweep->add_flag("--assert-monotone-u", want.monotone_u,
                      "Fail unless the u sup-error decreases at every eps");

    CLI::App* c_layer = app.add_subcommand("layer", "Sweep plus per-(eps, alpha) layer verdicts");
    c_layer->fallthrough();

    CLI::App* c_mms = app.add_subcommand("mms", "Manufactured-solution order studies");
    c_mms->fallthrough();
    c_mms->add_option("--assert-spatial-order", want.spatial_order_min,
                      "Fail unless every spatial study meets this order");
    c_mms->add_option("--assert-temporal-order", want.temporal_order_min,
                      "Fail unless every temporal study meets this order");

    CLI::App* c_lemma =
        app.add_subcommand("verify-lemma", "Randomized checks of the comparison-ODE bound");
    c_lemma->fallthrough();
    c_lemma->add_flag("--assert,!--no-assert", want.lemma_all_pass,
                      "Nonzero exit on any failed instance (default on)");

    CLI::App* c_long = app.add_subcommand("longtime", "Long-horizon decay run of the limit system");
    c_long->fallthrough();
    c_long->add_option("--assert-decay-frac", want.decay_frac_max,
                       "Fail unless final/initial sup-deviation is at most this");

    CLI::App* c_round =
        app.add_subcommand("roundtrip", "Original solve vs transform-and-reconstruct");
    c_round->fallthrough();
    c_round->add_option("--assert-ratio", want.roundtrip_ratio_min,
                        "Fail unless every halving shrinks the sup-difference by this factor");

    CLI::App* c_report =
        app.add_subcommand("report", "Re-render CSV and plot-data files from stored summaries");
    c_report->fallthrough();
    c_report->add_option("--out", report_dir, "Directory holding *_summary.json files")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        int rc = 0;
        if (c_run->parsed()) {
            const json s = rks::harness::run_single(cfg, run_kind, run_eps);
            std::printf("%s\n", s.dump(2).c_str());
        } else if (c_sweep->parsed() || c_layer->parsed()) {
            const json s = c_layer->parsed() ? rks::harness::run_layer(cfg)
                                             : rks::harness::run_sweep(cfg);
            const json& sweep = c_layer->parsed()
                                    ? rks::io::json::parse(
                                          std::ifstream(cfg.out_dir + "/sweep_summary.json"))
                                    : s;
            std::printf("eps0 = %s, F integral = %s\n",
                        rks::io::format_double(sweep.at("eps0").get<double>()).c_str(),
                        rks::io::format_double(sweep.at("F_integral").get<double>()).c_str());
            for (const auto& pt : sweep.at("points")) {
                if (pt.at("failed").get<bool>()) {
                    std::printf("eps=%-10s FAILED: %s\n",
                                rks::io::format_double(pt.at("eps").get<double>()).c_str(),
                                pt.at("error").get<std::string>().c_str());
                } else {
                    std::printf("eps=%-10s err_u=%-12s err_v_full=%-12s err_w=%s\n",
                                rks::io::format_double(pt.at("eps").get<double>()).c_str(),
                                rks::io::format_double(pt.at("err_u_sup").get<double>()).c_str(),
                                rks::io::format_double(pt.at("err_v_full").get<double>()).c_str(),
                                rks::io::format_double(pt.at("err_w_weighted").get<double>())
                                    .c_str());
                }
            }
            const json& fits = sweep.at("fits");
            if (!fits.at("u").is_null())
                std::printf("fitted u-rate: %s\n",
                            rks::io::format_double(num(fits.at("u").at("slope"))).c_str());
            else
                std::printf("fitted u-rate: undefined (needs >= 3 successful points)\n");
            if (want.u_slope_min >= 0.0)
                rc = check(!fits.at("u").is_null() &&
                               num(fits.at("u").at("slope")) >= want.u_slope_min,
                           "u-rate slope", rc);
            if (want.w_slope_min >= 0.0)
                rc = check(!fits.at("w").is_null() &&
                               num(fits.at("w").at("slope")) >= want.w_slope_min,
                           "weighted-gradient slope", rc);
            if (want.monotone_u) {
                bool mono = true;
                double prev = -1.0;
                for (const auto& pt : sweep.at("points")) {
                    if (pt.at("failed").get<bool>()) { mono = false; break; }
                    const double e = pt.at("err_u_sup").get<double>();
                    if (prev >= 0.0 && e >= prev) mono = false;
                    prev = e;
                }
                rc = check(mono, "u sup-error monotone decay", rc);
            }
        } else if (c_mms->parsed()) {
            const json s = rks::harness::run_mms(cfg);
            bool sp_ok = true, tm_ok = true;
            for (const auto& st : s.at("studies")) {
                const double order = st.at("observed_order").get<double>();
                std::printf("%-12s %-9s observed order %.3f\n",
                            st.at("stepper").get<std::string>().c_str(),
                            st.at("axis").get<std::string>().c_str(), order);
                if (st.at("axis") == "spatial" && order < want.spatial_order_min) sp_ok = false;
                if (st.at("axis") == "temporal" && order < want.temporal_order_min) tm_ok = false;
            }
            if (want.spatial_order_min >= 0.0) rc = check(sp_ok, "spatial orders", rc);
            if (want.temporal_order_min >= 0.0) rc = check(tm_ok, "temporal orders", rc);
        } else if (c_lemma->parsed()) {
            const json s = rks::harness::run_lemma_batch(cfg);
            for (const auto& row : s.at("instances")) {
                json verdict;
                for (const char* key : {"seed", "k", "gamma", "gamma0", "y_max", "bound", "pass"})
                    verdict[key] = row.at(key);
                std::printf("%s\n", verdict.dump().c_str());
            }
            const int failures = s.at("failures").get<int>();
            std::printf("%d/%d instances pass\n", cfg.instances - failures, cfg.instances);
            if (want.lemma_all_pass) rc = check(failures == 0, "all instances dominated", rc);
        } else if (c_long->parsed()) {
            const json s = rks::harness::run_longtime(cfg);
            std::printf("deviation %s -> %s (fraction %s), entropy max step increase %s\n",
                        rks::io::format_double(s.at("initial_deviation").get<double>()).c_str(),
                        rks::io::format_double(s.at("final_deviation").get<double>()).c_str(),
                        rks::io::format_double(s.at("decay_fraction").get<double>()).c_str(),
                        rks::io::format_double(
                            s.at("entropy_max_step_increase").get<double>())
                            .c_str());
            if (want.decay_frac_max >= 0.0)
                rc = check(s.at("decay_fraction").get<double>() <= want.decay_frac_max,
                           "sup-deviation decay", rc);
        } else if (c_round->parsed()) {
            const json s = rks::harness::run_roundtrip(cfg);
            bool ratios_ok = true;
            for (const auto& lvl : s.at("levels")) {
                std::printf("m=%-6lld sup_diff=%-12s ratio=%s\n",
                            lvl.at("m").get<long long>(),
                            rks::io::format_double(lvl.at("sup_diff").get<double>()).c_str(),
                            lvl.at("ratio_vs_prev").is_null()
                                ? "-"
                                : rks::io::format_double(lvl.at("ratio_vs_prev").get<double>())
                                      .c_str());
                if (!lvl.at("ratio_vs_prev").is_null() &&
                    lvl.at("ratio_vs_prev").get<double>() < want.roundtrip_ratio_min)
                    ratios_ok = false;
            }
            if (want.roundtrip_ratio_min >= 0.0)
                rc = check(ratios_ok, "reconstruction refinement ratios", rc);
        } else if (c_report->parsed()) {
            const auto rendered = rks::harness::render_reports(report_dir);
            if (rendered.empty()) {
                std::fprintf(stderr, "no summary files found under %s\n", report_dir.c_str());
                return 2;
            }
            for (const auto& name : rendered) std::printf("rendered %s\n", name.c_str());
        }
        return rc;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
