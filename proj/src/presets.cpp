#include "rkslab/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace rks {

namespace {

ScalarField linear_v(const ModelParams& p) {
    const auto& g = p.grid;
    const double a = g->a(), b = g->b();
    ScalarField v = ScalarField::sample(g, [&](double r) {
        return p.v_bar1 + (p.v_bar2 - p.v_bar1) * (r - a) / (b - a);
    });
    v[0] = p.v_bar1;
    v[v.size() - 1] = p.v_bar2;
    return v;
}

}  // namespace

std::pair<ScalarField, ScalarField> initial_data_presets(const std::string& name,
                                                         const ModelParams& p) {
    p.validate();
    const auto& g = p.grid;
    const double a = g->a(), b = g->b();
    if (name == "constant" || name == "mismatch-layer") {
        ScalarField u = ScalarField::sample(g, [&](double) { return p.u_bar; });
        return {std::move(u), linear_v(p)};
    }
    if (name == "bump") {
        const double pi = std::acos(-1.0);
        ScalarField u = ScalarField::sample(g, [&](double r) {
            const double s = std::sin(pi * (r - a) / (b - a));
            return p.u_bar + 0.5 * s * s;
        });
        u[0] = p.u_bar;
        u[u.size() - 1] = p.u_bar;
        return {std::move(u), linear_v(p)};
    }
    throw std::invalid_argument("presets: unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"constant", "bump", "mismatch-layer"};
}

double compatibility_mismatch(const ScalarField& u0, const ScalarField& v0,
                              const ModelParams& p, bool check_v) {
    require_same_grid(u0, v0);
    const std::size_t m = u0.size();
    double worst = 0.0;
    auto rel = [](double got, double want) {
        return std::abs(got - want) / (1.0 + std::abs(want));
    };
    worst = std::max(worst, rel(u0[0], p.u_bar));
    worst = std::max(worst, rel(u0[m - 1], p.u_bar));
    if (check_v) {
        worst = std::max(worst, rel(v0[0], p.v_bar1));
        worst = std::max(worst, rel(v0[m - 1], p.v_bar2));
    }
    return worst;
}

}  // namespace rks
