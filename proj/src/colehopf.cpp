#include "rkslab/colehopf.hpp"

#include <cmath>
#include <stdexcept>

#include "rkslab/operators.hpp"

namespace rks {

ScalarField to_v(const ScalarField& c) {
    if (!(c.min_value() > 0.0))
        throw std::invalid_argument("to_v: chemical concentration must be positive");
    const ScalarField cr = gradient(c);
    ScalarField v(c.grid());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = -cr[i] / c[i];
    return v;
}

std::vector<ScalarField> reconstruct_c(const ScalarField& c0, const Trajectory& traj) {
    if (traj.variables() != VariableSet::Transformed)
        throw std::invalid_argument("reconstruct_c: needs a transformed-variables trajectory");
    if (!(c0.min_value() > 0.0))
        throw std::invalid_argument("reconstruct_c: initial chemical must be positive");
    if (!c0.grid()->same_nodes(*traj.params().grid))
        throw std::invalid_argument("reconstruct_c: initial chemical on a different grid");

    const ModelParams& p = traj.params();
    const double eps = p.eps;
    const double nm1 = static_cast<double>(p.n - 1);
    const auto& g = *c0.grid();
    const std::size_t m = g.size();
    const std::size_t K = traj.samples();

    auto integrand = [&](std::size_t k, std::vector<double>& out) {
        const ScalarField& u = traj.u(k);
        const ScalarField& v = traj.second(k);
        const ScalarField vr = gradient(v);
        for (std::size_t i = 0; i < m; ++i) {
            const double r = g.r(i);
            out[i] = -u[i] + eps * (v[i] * v[i] - vr[i] - nm1 * v[i] / r);
        }
    };

    std::vector<ScalarField> series;
    series.reserve(K);
    std::vector<double> acc(m, 0.0), prev(m, 0.0), cur(m, 0.0);
    integrand(0, prev);
    series.push_back(c0);
    for (std::size_t k = 1; k < K; ++k) {
        integrand(k, cur);
        const double dt = traj.time(k) - traj.time(k - 1);
        ScalarField ck(c0.grid());
        for (std::size_t i = 0; i < m; ++i) {
            acc[i] += 0.5 * dt * (prev[i] + cur[i]);
            ck[i] = c0[i] * std::exp(acc[i]);
        }
        series.push_back(std::move(ck));
        std::swap(prev, cur);
    }
    return series;
}

RobinResidualReport check_robin_consistency(const std::vector<ScalarField>& c_series,
                                            const std::vector<double>& times, double v_bar1,
                                            double v_bar2) {
    if (c_series.size() != times.size())
        throw std::invalid_argument("robin check: series and times differ in length");
    if (c_series.empty()) throw std::invalid_argument("robin check: empty series");
    RobinResidualReport rep;
    rep.times = times;
    rep.res_a.reserve(times.size());
    rep.res_b.reserve(times.size());
    for (const ScalarField& c : c_series) {
        const ScalarField cr = gradient(c);
        const std::size_t m = c.size();
        const double ra = std::abs(cr[0] + v_bar1 * c[0]);
        const double rb = std::abs(cr[m - 1] + v_bar2 * c[m - 1]);
        rep.res_a.push_back(ra);
        rep.res_b.push_back(rb);
        rep.max_res_a = std::max(rep.max_res_a, ra);
        rep.max_res_b = std::max(rep.max_res_b, rb);
    }
    return rep;
}

}  // namespace rks
