#include "rkslab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rks::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("io: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("io: short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void save_field_csv(const ScalarField& f, const fs::path& path) {
    std::string s = "r,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        s += format_double(f.grid()->r(i));
        s += ',';
        s += format_double(f[i]);
        s += '\n';
    }
    write_text_atomic(path, s);
}

CsvTable load_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("io: empty CSV " + path.string());
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    table.columns.assign(table.header.size(), {});
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= table.columns.size())
                throw std::runtime_error("io: ragged CSV row in " + path.string());
            table.columns[col++].push_back(std::stod(cell));
        }
        if (col != table.columns.size())
            throw std::runtime_error("io: ragged CSV row in " + path.string());
    }
    return table;
}

json grid_to_json(const RadialGrid& g) {
    json j;
    j["a"] = g.a();
    j["b"] = g.b();
    j["m"] = g.size();
    j["kind"] = to_string(g.kind());
    j["ratio"] = g.grading_ratio();
    return j;
}

GridPtr grid_from_json(const json& j) {
    const GridKind kind = grid_kind_from_string(j.at("kind").get<std::string>());
    return make_grid(j.at("a").get<double>(), j.at("b").get<double>(),
                     j.at("m").get<std::size_t>(), kind,
                     j.value("ratio", 4.0));
}

json params_to_json(const ModelParams& p) {
    json j;
    j["n"] = p.n;
    j["eps"] = p.eps;
    j["u_bar"] = p.u_bar;
    j["v_bar1"] = p.v_bar1;
    j["v_bar2"] = p.v_bar2;
    j["T"] = p.T;
    j["dt"] = p.dt;
    j["grid"] = grid_to_json(*p.grid);
    return j;
}

ModelParams params_from_json(const json& j) {
    ModelParams p;
    p.n = j.at("n").get<int>();
    p.eps = j.at("eps").get<double>();
    p.u_bar = j.at("u_bar").get<double>();
    p.v_bar1 = j.at("v_bar1").get<double>();
    p.v_bar2 = j.at("v_bar2").get<double>();
    p.T = j.at("T").get<double>();
    p.dt = j.at("dt").get<double>();
    p.grid = grid_from_json(j.at("grid"));
    p.validate();
    return p;
}

void save_field_with_sidecar(const ScalarField& f, const ModelParams& p,
                             const fs::path& csv_path) {
    save_field_csv(f, csv_path);
    json j;
    j["format"] = "rkslab-field";
    j["version"] = 1;
    j["params"] = params_to_json(p);
    fs::path side = csv_path;
    side.replace_extension(".json");
    write_text_atomic(side, j.dump(2) + "\n");
}

ScalarField load_field_with_sidecar(const fs::path& csv_path, ModelParams* p_out) {
    fs::path side = csv_path;
    side.replace_extension(".json");
    std::ifstream in(side);
    if (!in) throw std::runtime_error("io: missing sidecar " + side.string());
    json j = json::parse(in);
    ModelParams p = params_from_json(j.at("params"));
    const CsvTable table = load_csv(csv_path);
    if (table.header.size() != 2 || table.header[0] != "r")
        throw std::runtime_error("io: not a field CSV: " + csv_path.string());
    if (table.columns[0] != p.grid->nodes())
        throw std::runtime_error("io: field nodes disagree with sidecar grid");
    if (p_out) *p_out = p;
    return ScalarField(p.grid, table.columns[1]);
}

void save_trajectory(const Trajectory& traj, const fs::path& dir) {
    traj.validate();
    fs::create_directories(dir / "samples");
    const bool original = traj.variables() == VariableSet::Original;
    const char* second_name = original ? "c" : "v";

    for (std::size_t k = 0; k < traj.samples(); ++k) {
        std::string s = std::string("r,u,") + second_name + "\n";
        const ScalarField& u = traj.u(k);
        const ScalarField& w = traj.second(k);
        for (std::size_t i = 0; i < u.size(); ++i) {
            s += format_double(u.grid()->r(i));
            s += ',';
            s += format_double(u[i]);
            s += ',';
            s += format_double(w[i]);
            s += '\n';
        }
        char name[32];
        std::snprintf(name, sizeof(name), "sample_%06zu.csv", k);
        write_text_atomic(dir / "samples" / name, s);
    }

    {
        const StepDiagnostics& d = traj.diagnostics();
        std::string s = "time,min_u,cfl";
        if (!d.min_c.empty()) s += ",min_c";
        if (!d.entropy_E.empty()) s += ",entropy_E,entropy_D";
        s += '\n';
        for (std::size_t k = 0; k < d.time.size(); ++k) {
            s += format_double(d.time[k]);
            s += ',';
            s += format_double(d.min_u[k]);
            s += ',';
            s += format_double(d.cfl[k]);
            if (!d.min_c.empty()) {
                s += ',';
                s += format_double(d.min_c[k]);
            }
            if (!d.entropy_E.empty()) {
                s += ',';
                s += format_double(d.entropy_E[k]);
                s += ',';
                s += format_double(d.entropy_D[k]);
            }
            s += '\n';
        }
        write_text_atomic(dir / "diagnostics.csv", s);
    }

    json manifest;
    manifest["format"] = "rkslab-trajectory";
    manifest["version"] = 1;
    manifest["variables"] = to_string(traj.variables());
    manifest["params"] = params_to_json(traj.params());
    manifest["dt_effective"] = traj.dt_effective();
    manifest["compat_mismatch"] = traj.compat_mismatch();
    manifest["samples"] = traj.samples();
    manifest["times"] = traj.times();
    write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace rks::io
