#include "rkslab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "rkslab/analysis.hpp"
#include "rkslab/colehopf.hpp"
#include "rkslab/gronwall.hpp"
#include "rkslab/mms.hpp"
#include "rkslab/operators.hpp"
#include "rkslab/presets.hpp"
#include "rkslab/solver.hpp"

namespace rks::harness {

namespace fs = std::filesystem;
using io::format_double;
using io::json;

namespace {

std::string hex_hash(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json fit_to_json(const RateFit& fit) {
    json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["rms_residual"] = fit.rms_residual;
    return j;
}

void write_summary(const fs::path& dir, const std::string& name, const json& summary) {
    io::write_text_atomic(dir / name, summary.dump(2) + "\n");
}

json load_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("harness: cannot open " + path.string());
    return json::parse(in);
}

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return format_double(v.get<double>());
}

// ---------------------------------------------------------------- rendering

void render_sweep(const json& s, const fs::path& dir) {
    const json& points = s.at("points");
    const json& alphas = s.at("config").at("alphas");

    // One row per (eps, delta) pair; headline columns shared across the
    // delta rows of the same eps. slope_so_far is the running log-log slope
    // of err_u_sup over the successful eps values seen so far (blank until
    // three are available).
    std::string csv = "eps,delta,err_u_sup,err_v_interior,err_v_full,err_w_weighted,slope_so_far\n";
    for (const auto& pt : points) {
        if (pt.at("failed").get<bool>()) continue;
        for (const auto& row : pt.at("interior")) {
            csv += csv_cell(pt.at("eps"));
            csv += ',';
            csv += csv_cell(row.at("delta"));
            csv += ',';
            csv += csv_cell(pt.at("err_u_sup"));
            csv += ',';
            csv += csv_cell(row.at("err"));
            csv += ',';
            csv += csv_cell(pt.at("err_v_full"));
            csv += ',';
            csv += csv_cell(pt.at("err_w_weighted"));
            csv += ',';
            csv += csv_cell(pt.at("slope_so_far_u"));
            csv += '\n';
        }
    }
    io::write_text_atomic(dir / "sweep.csv", csv);

    auto plot_rate = [&](const char* file, const char* key) {
        std::string s2;
        for (const auto& pt : points) {
            if (pt.at("failed").get<bool>()) continue;
            s2 += csv_cell(pt.at("eps")) + " " + csv_cell(pt.at(key)) + "\n";
        }
        io::write_text_atomic(dir / file, s2);
    };
    plot_rate("plot_u_rate.dat", "err_u_sup");
    plot_rate("plot_w_rate.dat", "err_w_weighted");
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        std::string s2;
        for (const auto& pt : points) {
            if (pt.at("failed").get<bool>()) continue;
            s2 += csv_cell(pt.at("eps")) + " " +
                  csv_cell(pt.at("interior")[ai].at("err")) + "\n";
        }
        io::write_text_atomic(
            dir / ("plot_v_int_a" + format_double(alphas[ai].get<double>()) + ".dat"), s2);
    }
    {
        std::string s2;
        const json& ft = s.at("flux");
        const json& times = ft.at("times");
        for (std::size_t k = 0; k < times.size(); ++k)
            s2 += csv_cell(times[k]) + " " + csv_cell(ft.at("I_a")[k]) + " " +
                  csv_cell(ft.at("I_b")[k]) + "\n";
        io::write_text_atomic(dir / "plot_flux.dat", s2);
    }
    {
        std::string s2;
        const json& ft = s.at("F_series");
        const json& times = ft.at("times");
        for (std::size_t k = 0; k < times.size(); ++k)
            s2 += csv_cell(times[k]) + " " + csv_cell(ft.at("values")[k]) + "\n";
        io::write_text_atomic(dir / "plot_F.dat", s2);
    }
}

void render_layer(const json& s, const fs::path& dir) {
    std::string csv = "eps,alpha,delta,interior_error,full_error,layer\n";
    for (const auto& row : s.at("verdicts")) {
        csv += csv_cell(row.at("eps")) + ',' + csv_cell(row.at("alpha")) + ',' +
               csv_cell(row.at("delta")) + ',' + csv_cell(row.at("interior_error")) + ',' +
               csv_cell(row.at("full_error")) + ',' + csv_cell(row.at("layer")) + '\n';
    }
    io::write_text_atomic(dir / "layer.csv", csv);
}

void render_mms(const json& s, const fs::path& dir) {
    std::string csv = "stepper,axis,m,dt,error,observed_order\n";
    for (const auto& st : s.at("studies")) {
        for (const auto& lvl : st.at("levels")) {
            csv += csv_cell(st.at("stepper")) + ',' + csv_cell(st.at("axis")) + ',' +
                   csv_cell(lvl.at("m")) + ',' + csv_cell(lvl.at("dt")) + ',' +
                   csv_cell(lvl.at("error")) + ',' + csv_cell(st.at("observed_order")) + '\n';
        }
        std::string s2;
        for (const auto& lvl : st.at("levels")) {
            const std::string x = st.at("axis") == "spatial"
                                      ? csv_cell(lvl.at("h"))
                                      : csv_cell(lvl.at("dt"));
            s2 += x + " " + csv_cell(lvl.at("error")) + "\n";
        }
        io::write_text_atomic(dir / ("plot_mms_" + st.at("stepper").get<std::string>() + "_" +
                                     st.at("axis").get<std::string>() + ".dat"),
                              s2);
    }
    io::write_text_atomic(dir / "mms.csv", csv);
}

void render_longtime(const json& s, const fs::path& dir) {
    std::string csv = "time,sup_u_minus_ubar,entropy_E,entropy_D\n";
    const json& ser = s.at("series");
    const json& times = ser.at("times");
    for (std::size_t k = 0; k < times.size(); ++k) {
        csv += csv_cell(times[k]) + ',' + csv_cell(ser.at("sup_u")[k]) + ',' +
               csv_cell(ser.at("E")[k]) + ',' + csv_cell(ser.at("D")[k]) + '\n';
    }
    io::write_text_atomic(dir / "longtime.csv", csv);
    std::string s2;
    for (std::size_t k = 0; k < times.size(); ++k)
        s2 += csv_cell(times[k]) + " " + csv_cell(ser.at("sup_u")[k]) + "\n";
    io::write_text_atomic(dir / "plot_decay.dat", s2);
    std::string s3;
    for (std::size_t k = 0; k < times.size(); ++k)
        s3 += csv_cell(times[k]) + " " + csv_cell(ser.at("E")[k]) + " " +
              csv_cell(ser.at("D")[k]) + "\n";
    io::write_text_atomic(dir / "plot_entropy.dat", s3);
}

void render_roundtrip(const json& s, const fs::path& dir) {
    std::string csv = "m,h,dt,sup_diff,ratio_vs_prev,robin_residual,min_c_reconstructed\n";
    for (const auto& lvl : s.at("levels")) {
        csv += csv_cell(lvl.at("m")) + ',' + csv_cell(lvl.at("h")) + ',' +
               csv_cell(lvl.at("dt")) + ',' + csv_cell(lvl.at("sup_diff")) + ',' +
               csv_cell(lvl.at("ratio_vs_prev")) + ',' + csv_cell(lvl.at("robin_residual")) +
               ',' + csv_cell(lvl.at("min_c_reconstructed")) + '\n';
    }
    io::write_text_atomic(dir / "roundtrip.csv", csv);
    std::string s2;
    for (const auto& lvl : s.at("levels"))
        s2 += csv_cell(lvl.at("h")) + " " + csv_cell(lvl.at("sup_diff")) + "\n";
    io::write_text_atomic(dir / "plot_roundtrip.dat", s2);
}

void render_lemma(const json& s, const fs::path& dir) {
    std::string csv = "seed,k,T,C0,gamma,gamma0,y_max,bound,bound_margin,blown_up,pass\n";
    for (const auto& row : s.at("instances")) {
        csv += csv_cell(row.at("seed")) + ',' + csv_cell(row.at("k")) + ',' +
               csv_cell(row.at("T")) + ',' + csv_cell(row.at("C0")) + ',' +
               csv_cell(row.at("gamma")) + ',' + csv_cell(row.at("gamma0")) + ',' +
               csv_cell(row.at("y_max")) + ',' + csv_cell(row.at("bound")) + ',' +
               csv_cell(row.at("bound_margin")) + ',' + csv_cell(row.at("blown_up")) + ',' +
               csv_cell(row.at("pass")) + '\n';
    }
    io::write_text_atomic(dir / "lemma.csv", csv);
}

void render_summary(const json& s, const fs::path& dir) {
    const std::string campaign = s.at("campaign").get<std::string>();
    if (campaign == "sweep") render_sweep(s, dir);
    else if (campaign == "layer") render_layer(s, dir);
    else if (campaign == "mms") render_mms(s, dir);
    else if (campaign == "longtime") render_longtime(s, dir);
    else if (campaign == "roundtrip") render_roundtrip(s, dir);
    else if (campaign == "lemma") render_lemma(s, dir);
    // "run" has no CSV view beyond the trajectory directory it already wrote
}

}  // namespace

// ------------------------------------------------------------------- config

void ExperimentConfig::validate() const {
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("config: need 0 < a < b");
    if (m < 3) throw std::invalid_argument("config: m must be >= 3");
    grid_kind_from_string(grid_kind);
    if (grid_kind != "uniform" && !(grid_ratio > 1.0))
        throw std::invalid_argument("config: grading ratio must exceed 1");
    if (!(u_bar >= 0.0)) throw std::invalid_argument("config: u_bar must be >= 0");
    if (!(T >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("config: bad T or dt");
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), preset) == names.end())
        throw std::invalid_argument("config: unknown preset '" + preset + "'");
    if (eps_list.empty()) throw std::invalid_argument("config: eps list is empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || !(eps_list[i] < 1.0))
            throw std::invalid_argument("config: eps values must lie in (0, 1)");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("config: eps values must be strictly decreasing");
    }
    if (alphas.empty()) throw std::invalid_argument("config: alphas list is empty");
    for (double al : alphas)
        if (!(al > 0.0) || !(al < 0.5))
            throw std::invalid_argument("config: alphas must lie in (0, 0.5)");
    if (!(layer_threshold > 0.0)) throw std::invalid_argument("config: bad layer threshold");
    if (!(C0 > 0.0)) throw std::invalid_argument("config: C0 must be positive");
    if (instances < 1) throw std::invalid_argument("config: instances must be >= 1");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    if (out_dir.empty()) throw std::invalid_argument("config: out_dir is empty");
    if (!(mms_eps > 0.0) || !(mms_eps < 1.0))
        throw std::invalid_argument("config: mms_eps must lie in (0, 1)");
    if (!(roundtrip_eps > 0.0) || !(roundtrip_eps < 1.0))
        throw std::invalid_argument("config: roundtrip_eps must lie in (0, 1)");
    if (!(longtime_T > 0.0) || !(longtime_dt > 0.0))
        throw std::invalid_argument("config: bad longtime settings");
}

json ExperimentConfig::to_json() const {
    json j;
    j["n"] = n;
    j["a"] = a;
    j["b"] = b;
    j["m"] = m;
    j["grid_kind"] = grid_kind;
    j["grid_ratio"] = grid_ratio;
    j["u_bar"] = u_bar;
    j["v_bar1"] = v_bar1;
    j["v_bar2"] = v_bar2;
    j["T"] = T;
    j["dt"] = dt;
    j["preset"] = preset;
    j["eps_list"] = eps_list;
    j["alphas"] = alphas;
    j["layer_threshold"] = layer_threshold;
    j["C0"] = C0;
    j["mms_spatial_m"] = mms_spatial_m;
    j["mms_temporal_dt"] = mms_temporal_dt;
    j["mms_eps"] = mms_eps;
    j["mms_vbar"] = mms_vbar;
    j["mms_spatial_dt0"] = mms_spatial_dt0;
    j["mms_spatial_T"] = mms_spatial_T;
    j["mms_temporal_m"] = mms_temporal_m;
    j["mms_temporal_T"] = mms_temporal_T;
    j["seed"] = seed;
    j["instances"] = instances;
    j["roundtrip_m"] = roundtrip_m;
    j["roundtrip_eps"] = roundtrip_eps;
    j["roundtrip_T"] = roundtrip_T;
    j["longtime_T"] = longtime_T;
    j["longtime_dt"] = longtime_dt;
    j["save_every"] = save_every;
    return j;  // out_dir, jobs, resume excluded: they do not affect results
}

std::uint64_t ExperimentConfig::config_hash() const {
    const std::string s = to_json().dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

ModelParams ExperimentConfig::to_params(double eps) const {
    ModelParams p;
    p.n = n;
    p.eps = eps;
    p.u_bar = u_bar;
    p.v_bar1 = v_bar1;
    p.v_bar2 = v_bar2;
    p.T = T;
    p.dt = dt;
    p.grid = make_grid(a, b, m, grid_kind_from_string(grid_kind), grid_ratio);
    return p;
}

// -------------------------------------------------------------------- sweep

namespace {

struct EpsOutcome {
    double eps = 0.0;
    bool failed = false;
    std::string error;
    bool resumed = false;
    double err_u_sup = 0.0;
    double err_v_full = 0.0;
    double err_w = 0.0;
    double max_cfl = 0.0;
    std::vector<LayerReport> interior;  // aligned with cfg.alphas
};

json outcome_to_json(const EpsOutcome& o, const std::vector<double>& alphas,
                     std::uint64_t hash, double eps0) {
    json j;
    j["config_hash"] = hex_hash(hash);
    j["eps"] = o.eps;
    j["failed"] = o.failed;
    j["error"] = o.error;
    j["resumed"] = false;  // rewritten on load
    j["outside_regime"] = o.eps > eps0;
    j["err_u_sup"] = o.err_u_sup;
    j["err_v_full"] = o.err_v_full;
    j["err_w_weighted"] = o.err_w;
    j["max_cfl"] = o.max_cfl;
    json rows = json::array();
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        json row;
        row["alpha"] = alphas[ai];
        if (ai < o.interior.size()) {
            const LayerReport& rep = o.interior[ai];
            row["delta"] = rep.delta;
            row["err"] = rep.interior_error;
            row["full_error"] = rep.full_error;
            row["interior_error"] = rep.interior_error;
            row["layer"] = rep.layer;
        } else {
            row["delta"] = nullptr;
            row["err"] = nullptr;
            row["full_error"] = nullptr;
            row["interior_error"] = nullptr;
            row["layer"] = nullptr;
        }
        rows.push_back(row);
    }
    j["interior"] = rows;
    return j;
}

EpsOutcome outcome_from_json(const json& j) {
    EpsOutcome o;
    o.eps = j.at("eps").get<double>();
    o.failed = j.at("failed").get<bool>();
    o.error = j.at("error").get<std::string>();
    o.resumed = true;
    o.err_u_sup = j.at("err_u_sup").get<double>();
    o.err_v_full = j.at("err_v_full").get<double>();
    o.err_w = j.at("err_w_weighted").get<double>();
    o.max_cfl = j.at("max_cfl").get<double>();
    for (const auto& row : j.at("interior")) {
        LayerReport rep;
        if (!row.at("delta").is_null()) {
            rep.delta = row.at("delta").get<double>();
            rep.interior_error = row.at("interior_error").get<double>();
            rep.full_error = row.at("full_error").get<double>();
            rep.layer = row.at("layer").get<bool>();
        }
        o.interior.push_back(rep);
    }
    return o;
}

EpsOutcome compute_eps_point(const ExperimentConfig& cfg, double eps,
                             const Trajectory& limit_traj) {
    EpsOutcome o;
    o.eps = eps;
    try {
        ModelParams p = cfg.to_params(eps);
        const auto init = initial_data_presets(cfg.preset, p);
        StepControls ctrl;
        ctrl.save_every = cfg.save_every;
        const Trajectory traj = solve(SolveKind::Transformed, init.first, init.second, p, ctrl);

        const auto& g = *p.grid;
        const double a = g.a(), b = g.b();
        for (std::size_t k = 0; k < traj.samples(); ++k) {
            ScalarField du(p.grid), dv(p.grid);
            const ScalarField& ue = traj.u(k);
            const ScalarField& u0 = limit_traj.u(k);
            const ScalarField& ve = traj.second(k);
            const ScalarField& v0 = limit_traj.second(k);
            for (std::size_t i = 0; i < du.size(); ++i) {
                du[i] = ue[i] - u0[i];
                dv[i] = ve[i] - v0[i];
            }
            o.err_u_sup = std::max(o.err_u_sup, sup_norm(du, a, b));
            o.err_v_full = std::max(o.err_v_full, sup_norm(dv, a, b));
            o.err_w =
                std::max(o.err_w, weighted_l2(gradient(dv), WeightKind::AnnulusQuadratic, cfg.n));
        }
        for (double al : cfg.alphas) {
            const double delta = std::pow(eps, al);
            o.interior.push_back(
                detect_layer(traj, limit_traj, delta, cfg.layer_threshold));
        }
        for (double cfl : traj.diagnostics().cfl) o.max_cfl = std::max(o.max_cfl, cfl);
    } catch (const std::exception& e) {
        o.failed = true;
        o.error = e.what();
        o.interior.clear();
    }
    return o;
}

json sweep_summary_impl(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = cfg.out_dir;
    fs::create_directories(dir / "points");
    const std::uint64_t hash = cfg.config_hash();

    ModelParams p0 = cfg.to_params(0.0);
    const auto init0 = initial_data_presets(cfg.preset, p0);
    StepControls ctrl0;
    ctrl0.save_every = cfg.save_every;
    const Trajectory limit_traj = solve(SolveKind::Limit, init0.first, init0.second, p0, ctrl0);
    const FSeries F = compute_F_and_eps0(limit_traj, cfg.C0);
    const FluxSeries flux = boundary_flux_integral(limit_traj);

    const std::size_t NE = cfg.eps_list.size();
    std::vector<EpsOutcome> outcomes(NE);
    std::vector<fs::path> point_files(NE);
    for (std::size_t i = 0; i < NE; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "point_%03zu.json", i);
        point_files[i] = dir / "points" / name;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= NE) return;
            const double eps = cfg.eps_list[i];
            bool reused = false;
            if (cfg.resume && fs::exists(point_files[i])) {
                try {
                    const json j = load_json(point_files[i]);
                    if (j.at("config_hash").get<std::string>() == hex_hash(hash) &&
                        j.at("eps").get<double>() == eps) {
                        outcomes[i] = outcome_from_json(j);
                        reused = true;
                    }
                } catch (const std::exception&) {
                    reused = false;  // unreadable point file: recompute
                }
            }
            if (!reused) {
                outcomes[i] = compute_eps_point(cfg, eps, limit_traj);
                io::write_text_atomic(
                    point_files[i],
                    outcome_to_json(outcomes[i], cfg.alphas, hash, F.eps0).dump(2) + "\n");
            }
        }
    };
    if (cfg.jobs > 1) {
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(cfg.jobs, static_cast<int>(NE));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    // aggregate
    std::vector<double> ok_eps, ok_u, ok_w;
    std::vector<std::vector<double>> ok_vint(cfg.alphas.size());
    for (const EpsOutcome& o : outcomes) {
        if (o.failed) continue;
        ok_eps.push_back(o.eps);
        ok_u.push_back(o.err_u_sup);
        ok_w.push_back(o.err_w);
        for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai)
            ok_vint[ai].push_back(o.interior[ai].interior_error);
    }

    json points = json::array();
    for (std::size_t i = 0; i < NE; ++i) {
        json pt = outcome_to_json(outcomes[i], cfg.alphas, hash, F.eps0);
        pt["resumed"] = outcomes[i].resumed;
        // running fit over the successful points seen so far (needs >= 3)
        std::vector<double> e2, u2;
        for (std::size_t k2 = 0; k2 <= i; ++k2) {
            if (outcomes[k2].failed) continue;
            e2.push_back(outcomes[k2].eps);
            u2.push_back(outcomes[k2].err_u_sup);
        }
        bool pos = true;
        for (double x : u2) pos = pos && x > 0.0;
        if (e2.size() >= 3 && pos)
            pt["slope_so_far_u"] = fit_rate(e2, u2).slope;
        else
            pt["slope_so_far_u"] = nullptr;
        points.push_back(pt);
    }

    json summary;
    summary["campaign"] = "sweep";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = hex_hash(hash);
    summary["compat_mismatch"] = limit_traj.compat_mismatch();
    summary["samples"] = limit_traj.samples();
    summary["dt_effective"] = limit_traj.dt_effective();
    summary["eps0"] = F.eps0;
    summary["log_eps0"] = F.log_eps0;
    summary["F_integral"] = F.integral;
    {
        json fj;
        fj["times"] = F.times;
        fj["values"] = F.values;
        summary["F_series"] = fj;
        json xj;
        xj["times"] = flux.times;
        xj["I_a"] = flux.I_a;
        xj["I_b"] = flux.I_b;
        xj["max_abs_a"] = flux.max_abs_a;
        xj["max_abs_b"] = flux.max_abs_b;
        summary["flux"] = xj;
    }
    summary["points"] = points;

    json fits;
    bool allpos_u = !ok_u.empty(), allpos_w = !ok_w.empty();
    for (double x : ok_u) allpos_u = allpos_u && x > 0.0;
    for (double x : ok_w) allpos_w = allpos_w && x > 0.0;
    fits["u"] = (ok_eps.size() >= 3 && allpos_u) ? fit_to_json(fit_rate(ok_eps, ok_u))
                                                 : json(nullptr);
    fits["w"] = (ok_eps.size() >= 3 && allpos_w) ? fit_to_json(fit_rate(ok_eps, ok_w))
                                                 : json(nullptr);
    json vfits = json::array();
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        json vj;
        vj["alpha"] = cfg.alphas[ai];
        bool pos = ok_vint[ai].size() == ok_eps.size() && !ok_vint[ai].empty();
        for (double x : ok_vint[ai]) pos = pos && x > 0.0;
        vj["fit"] = (ok_eps.size() >= 3 && pos) ? fit_to_json(fit_rate(ok_eps, ok_vint[ai]))
                                                : json(nullptr);
        vfits.push_back(vj);
    }
    fits["v_interior"] = vfits;
    fits["defined"] = ok_eps.size() >= 3;
    summary["fits"] = fits;
    return summary;
}

}  // namespace

json run_sweep(const ExperimentConfig& cfg) {
    const json summary = sweep_summary_impl(cfg);
    const fs::path dir = cfg.out_dir;
    write_summary(dir, "sweep_summary.json", summary);
    render_sweep(summary, dir);
    return summary;
}

json run_layer(const ExperimentConfig& cfg) {
    const json sweep = sweep_summary_impl(cfg);
    const fs::path dir = cfg.out_dir;
    write_summary(dir, "sweep_summary.json", sweep);
    render_sweep(sweep, dir);

    json verdicts = json::array();
    for (const auto& pt : sweep.at("points")) {
        if (pt.at("failed").get<bool>()) continue;
        for (const auto& row : pt.at("interior")) {
            json v;
            v["eps"] = pt.at("eps");
            v["alpha"] = row.at("alpha");
            v["delta"] = row.at("delta");
            v["interior_error"] = row.at("interior_error");
            v["full_error"] = row.at("full_error");
            v["layer"] = row.at("layer");
            verdicts.push_back(v);
        }
    }
    json summary;
    summary["campaign"] = "layer";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = sweep.at("config_hash");
    summary["threshold"] = cfg.layer_threshold;
    summary["flux_max_a"] = sweep.at("flux").at("max_abs_a");
    summary["flux_max_b"] = sweep.at("flux").at("max_abs_b");
    summary["verdicts"] = verdicts;
    write_summary(dir, "layer_summary.json", summary);
    render_layer(summary, dir);
    return summary;
}

// ---------------------------------------------------------------------- mms

json run_mms(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = cfg.out_dir;
    fs::create_directories(dir);

    const mms::ManufacturedCase cases[3] = {
        mms::transformed_case(cfg.n, cfg.a, cfg.b, cfg.mms_eps),
        mms::limit_case(cfg.n, cfg.a, cfg.b),
        mms::original_case(cfg.n, cfg.a, cfg.b, cfg.mms_eps, cfg.mms_vbar),
    };

    json studies = json::array();
    for (const auto& mc : cases) {
        const mms::OrderStudy sp =
            mms::spatial_study(mc, cfg.mms_spatial_m, cfg.mms_spatial_dt0, cfg.mms_spatial_T);
        const mms::OrderStudy tm =
            mms::temporal_study(mc, cfg.mms_temporal_m, cfg.mms_temporal_dt, cfg.mms_temporal_T);
        for (const mms::OrderStudy* st : {&sp, &tm}) {
            json sj;
            sj["stepper"] = st->stepper;
            sj["axis"] = st->axis;
            json lvls = json::array();
            for (const auto& lvl : st->levels) {
                json lj;
                lj["m"] = lvl.m;
                lj["h"] = (cfg.b - cfg.a) / static_cast<double>(lvl.m - 1);
                lj["dt"] = lvl.dt;
                lj["error"] = lvl.error;
                lvls.push_back(lj);
            }
            sj["levels"] = lvls;
            sj["observed_order"] = st->observed_order;
            studies.push_back(sj);
        }
    }
    json summary;
    summary["campaign"] = "mms";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = hex_hash(cfg.config_hash());
    summary["studies"] = studies;
    write_summary(dir, "mms_summary.json", summary);
    render_mms(summary, dir);
    return summary;
}

// ----------------------------------------------------------------- longtime

json run_longtime(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = cfg.out_dir;
    fs::create_directories(dir);

    ModelParams p = cfg.to_params(0.0);
    p.T = cfg.longtime_T;
    p.dt = cfg.longtime_dt;
    const auto init = initial_data_presets(cfg.preset, p);
    StepControls ctrl;
    ctrl.save_every = cfg.save_every;
    const Trajectory traj = solve(SolveKind::Limit, init.first, init.second, p, ctrl);

    const StepDiagnostics& d = traj.diagnostics();
    double max_increase = 0.0;
    for (std::size_t k = 1; k < d.entropy_E.size(); ++k)
        max_increase = std::max(max_increase, d.entropy_E[k] - d.entropy_E[k - 1]);

    auto sup_u_dev = [&](const ScalarField& u) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s = std::max(s, std::abs(u[i] - p.u_bar));
        return s;
    };
    const double dev0 = sup_u_dev(traj.u(0));
    const double devT = sup_u_dev(traj.u(traj.samples() - 1));

    json series;
    {
        std::vector<double> ts, sup, Es, Ds;
        for (std::size_t k = 0; k < traj.samples(); ++k) {
            const double t = traj.time(k);
            ts.push_back(t);
            sup.push_back(sup_u_dev(traj.u(k)));
            const std::size_t idx = static_cast<std::size_t>(
                std::llround(t / traj.dt_effective()));
            const std::size_t safe = std::min(idx, d.entropy_E.size() - 1);
            Es.push_back(d.entropy_E.empty() ? 0.0 : d.entropy_E[safe]);
            Ds.push_back(d.entropy_D.empty() ? 0.0 : d.entropy_D[safe]);
        }
        series["times"] = ts;
        series["sup_u"] = sup;
        series["E"] = Es;
        series["D"] = Ds;
    }

    json summary;
    summary["campaign"] = "longtime";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = hex_hash(cfg.config_hash());
    summary["dt_effective"] = traj.dt_effective();
    summary["initial_deviation"] = dev0;
    summary["final_deviation"] = devT;
    summary["decay_fraction"] = dev0 > 0.0 ? devT / dev0 : 0.0;
    summary["entropy_initial"] = d.entropy_E.empty() ? 0.0 : d.entropy_E.front();
    summary["entropy_final"] = d.entropy_E.empty() ? 0.0 : d.entropy_E.back();
    summary["entropy_max_step_increase"] = max_increase;
    summary["min_u_overall"] = *std::min_element(d.min_u.begin(), d.min_u.end());
    summary["series"] = series;
    write_summary(dir, "longtime_summary.json", summary);
    render_longtime(summary, dir);
    return summary;
}

// ---------------------------------------------------------------- roundtrip

json run_roundtrip(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = cfg.out_dir;
    fs::create_directories(dir);

    json levels = json::array();
    double prev_diff = 0.0;
    for (std::size_t li = 0; li < cfg.roundtrip_m.size(); ++li) {
        const std::size_t m = cfg.roundtrip_m[li];
        ExperimentConfig lc = cfg;
        lc.m = m;
        ModelParams p = lc.to_params(cfg.roundtrip_eps);
        p.T = cfg.roundtrip_T;
        const double h = (cfg.b - cfg.a) / static_cast<double>(m - 1);
        p.dt = h / 8.0;

        const auto init = initial_data_presets(cfg.preset, p);
        // initial chemical consistent with the linear v preset:
        // c0 = exp(g0), g0' = -(v_bar1 + (v_bar2-v_bar1)(r-a)/(b-a))
        const double vb1 = cfg.v_bar1, vb2 = cfg.v_bar2;
        const double a = cfg.a, b = cfg.b;
        const ScalarField c0 = ScalarField::sample(p.grid, [&](double r) {
            const double x = r - a;
            const double g0 = -(vb1 * x + (vb2 - vb1) * x * x / (2.0 * (b - a)));
            return std::exp(g0);
        });

        StepControls ctrl;
        ctrl.save_every = cfg.save_every;
        const Trajectory traj_o = solve(SolveKind::Original, init.first, c0, p, ctrl);
        const Trajectory traj_t = solve(SolveKind::Transformed, init.first, init.second, p, ctrl);
        const std::vector<ScalarField> c_rec = reconstruct_c(c0, traj_t);

        double sup_diff = 0.0, min_c = c_rec.front().min_value();
        for (std::size_t k = 0; k < traj_o.samples(); ++k) {
            const ScalarField& co = traj_o.second(k);
            const ScalarField& cr = c_rec[k];
            for (std::size_t i = 0; i < co.size(); ++i)
                sup_diff = std::max(sup_diff, std::abs(co[i] - cr[i]));
            min_c = std::min(min_c, cr.min_value());
        }
        const RobinResidualReport rob =
            check_robin_consistency(c_rec, traj_t.times(), p.v_bar1, p.v_bar2);

        json lj;
        lj["m"] = m;
        lj["h"] = h;
        lj["dt"] = p.dt;
        lj["sup_diff"] = sup_diff;
        lj["ratio_vs_prev"] =
            li > 0 && sup_diff > 0.0 ? json(prev_diff / sup_diff) : json(nullptr);
        lj["robin_residual"] = std::max(rob.max_res_a, rob.max_res_b);
        lj["min_c_reconstructed"] = min_c;
        levels.push_back(lj);
        prev_diff = sup_diff;
    }

    json summary;
    summary["campaign"] = "roundtrip";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = hex_hash(cfg.config_hash());
    summary["levels"] = levels;
    write_summary(dir, "roundtrip_summary.json", summary);
    render_roundtrip(summary, dir);
    return summary;
}

// -------------------------------------------------------------------- lemma

json run_lemma_batch(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path dir = cfg.out_dir;
    fs::create_directories(dir);

    json rows = json::array();
    int failures = 0, blowups = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.instances; ++i) {
        const LemmaVerdict v = verify_random_instance(cfg.seed + static_cast<std::uint64_t>(i));
        json r;
        r["seed"] = v.seed;
        r["k"] = v.k;
        r["T"] = v.T;
        r["C0"] = v.C0;
        r["gamma"] = v.gamma;
        r["gamma0"] = v.gamma0;
        r["y_max"] = v.y_max;
        r["bound"] = v.bound_at_ymax;
        r["bound_margin"] = v.bound_min;
        r["blown_up"] = v.blown_up;
        r["pass"] = v.pass;
        rows.push_back(r);
        if (!v.pass) ++failures;
        if (v.blown_up) ++blowups;
        worst_margin = std::min(worst_margin, v.bound_min);
    }
    json summary;
    summary["campaign"] = "lemma";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = hex_hash(cfg.config_hash());
    summary["instances"] = rows;
    summary["count"] = cfg.instances;
    summary["failures"] = failures;
    summary["blowups"] = blowups;
    summary["worst_margin"] = worst_margin;
    write_summary(dir, "lemma_summary.json", summary);
    render_lemma(summary, dir);
    return summary;
}

// ---------------------------------------------------------------------- run

json run_single(const ExperimentConfig& cfg, const std::string& kind, double eps) {
    cfg.validate();
    const SolveKind sk = solve_kind_from_string(kind);
    const fs::path dir = cfg.out_dir;

    ModelParams p = cfg.to_params(sk == SolveKind::Limit ? 0.0 : eps);
    const auto init = initial_data_presets(cfg.preset, p);
    StepControls ctrl;
    ctrl.save_every = cfg.save_every;

    Trajectory traj = [&]() {
        if (sk != SolveKind::Original)
            return solve(sk, init.first, init.second, p, ctrl);
        const double vb1 = cfg.v_bar1, vb2 = cfg.v_bar2, a = cfg.a, b = cfg.b;
        const ScalarField c0 = ScalarField::sample(p.grid, [&](double r) {
            const double x = r - a;
            return std::exp(-(vb1 * x + (vb2 - vb1) * x * x / (2.0 * (b - a))));
        });
        return solve(sk, init.first, c0, p, ctrl);
    }();

    io::save_trajectory(traj, dir / "trajectory");

    const StepDiagnostics& d = traj.diagnostics();
    json summary;
    summary["campaign"] = "run";
    summary["config"] = cfg.to_json();
    summary["config_hash"] = hex_hash(cfg.config_hash());
    summary["kind"] = kind;
    summary["eps"] = p.eps;
    summary["samples"] = traj.samples();
    summary["dt_effective"] = traj.dt_effective();
    summary["compat_mismatch"] = traj.compat_mismatch();
    summary["min_u_overall"] = *std::min_element(d.min_u.begin(), d.min_u.end());
    summary["max_cfl"] = *std::max_element(d.cfl.begin(), d.cfl.end());
    if (!d.entropy_E.empty()) {
        summary["entropy_initial"] = d.entropy_E.front();
        summary["entropy_final"] = d.entropy_E.back();
    }
    write_summary(dir, "run_summary.json", summary);
    return summary;
}

// ------------------------------------------------------------------- report

std::vector<std::string> render_reports(const fs::path& dir) {
    static const char* names[] = {"sweep_summary.json",     "layer_summary.json",
                                  "mms_summary.json",       "longtime_summary.json",
                                  "roundtrip_summary.json", "lemma_summary.json"};
    std::vector<std::string> rendered;
    for (const char* name : names) {
        const fs::path path = dir / name;
        if (!fs::exists(path)) continue;
        render_summary(load_json(path), dir);
        rendered.push_back(name);
    }
    return rendered;
}

}  // namespace rks::harness
