#include "rkslab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rkslab/operators.hpp"

namespace rks {

namespace {

double ipow(double x, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x;
    return p;
}

std::size_t nearest_node(const RadialGrid& g, double x) {
    const auto& r = g.nodes();
    auto it = std::lower_bound(r.begin(), r.end(), x);
    if (it == r.begin()) return 0;
    if (it == r.end()) return r.size() - 1;
    const std::size_t hi = static_cast<std::size_t>(it - r.begin());
    return (x - r[hi - 1] <= r[hi] - x) ? hi - 1 : hi;
}

void require_matched_samples(const Trajectory& x, const Trajectory& y) {
    if (!x.params().grid->same_nodes(*y.params().grid))
        throw std::invalid_argument("analysis: trajectories on different grids");
    if (x.samples() != y.samples())
        throw std::invalid_argument("analysis: trajectories with different sample counts");
    for (std::size_t k = 0; k < x.samples(); ++k)
        if (std::abs(x.time(k) - y.time(k)) > 1e-12 * (1.0 + std::abs(x.time(k))))
            throw std::invalid_argument("analysis: trajectories sampled at different times");
}

}  // namespace

double weighted_l2(const ScalarField& f, WeightKind kind, int n) {
    if (n < 2) throw std::invalid_argument("weighted_l2: dimension must be >= 2");
    const auto& g = *f.grid();
    const auto tau = trapezoid_weights(g);
    const double a = g.a(), b = g.b();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = g.r(i);
        const double w2 = kind == WeightKind::RadialMeasure
                              ? ipow(r, n - 1)
                              : (r - a) * (b - r) * (r - a) * (b - r);
        s += tau[i] * w2 * f[i] * f[i];
    }
    return std::sqrt(s);
}

double sup_norm(const ScalarField& f, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("sup_norm: empty interval");
    const auto& g = *f.grid();
    std::size_t i0 = nearest_node(g, lo);
    std::size_t i1 = nearest_node(g, hi);
    if (i0 > i1) std::swap(i0, i1);
    double m = 0.0;
    for (std::size_t i = i0; i <= i1; ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

EntropyValue entropy_functional(const ScalarField& u, const ScalarField& v, double u_bar,
                                int n, double u_floor) {
    if (!(u_bar > 0.0)) throw std::invalid_argument("entropy: u_bar must be positive");
    if (!(u_floor > 0.0)) throw std::invalid_argument("entropy: u_floor must be positive");
    require_same_grid(u, v);
    const auto& g = *u.grid();
    const auto tau = trapezoid_weights(g);
    const ScalarField ur = gradient(u);
    EntropyValue out;
    double E = 0.0, D = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double ui = u[i];
        if (ui < u_floor) {
            ui = u_floor;
            ++out.floored_nodes;
        }
        const double w = tau[i] * ipow(g.r(i), n - 1);
        E += w * (ui * std::log(ui / u_bar) - (ui - u_bar));
        E += 0.5 * w * v[i] * v[i];
        D += w * ur[i] * ur[i] / ui;
    }
    out.E = E;
    out.D = D;
    return out;
}

double discrete_sobolev(const ScalarField& f, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("sobolev: order must be 0, 1 or 2");
    const auto& g = *f.grid();
    const auto tau = trapezoid_weights(g);
    auto sq_l2 = [&](const ScalarField& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += tau[i] * x[i] * x[i];
        return s;
    };
    double total = sq_l2(f);
    if (order >= 1) {
        const ScalarField fr = gradient(f);
        total += sq_l2(fr);
        if (order == 2) total += sq_l2(gradient(fr));
    }
    return std::sqrt(total);
}

FSeries compute_F_and_eps0(const Trajectory& limit_traj, double C0) {
    if (!(C0 > 0.0)) throw std::invalid_argument("compute_F: C0 must be positive");
    if (limit_traj.samples() < 2)
        throw std::invalid_argument("compute_F: need at least two saved samples");
    const ModelParams& p = limit_traj.params();
    FSeries out;
    out.times = limit_traj.times();
    out.values.reserve(out.times.size());
    for (std::size_t k = 0; k < limit_traj.samples(); ++k) {
        const double hu = discrete_sobolev(limit_traj.u(k), 2);
        const double hv = discrete_sobolev(limit_traj.second(k), 2);
        out.values.push_back(hu * hu + hv + hv * hv + hv * hv * hv * hv +
                             p.v_bar1 * p.v_bar1 + p.v_bar2 * p.v_bar2 + 1.0);
    }
    double I = 0.0;
    for (std::size_t k = 1; k < out.times.size(); ++k)
        I += 0.5 * (out.values[k] + out.values[k - 1]) * (out.times[k] - out.times[k - 1]);
    out.integral = I;
    out.log_eps0 = log_eps0_from_integral(I, out.times.back(), C0);
    out.eps0 = std::exp(out.log_eps0);
    return out;
}

double log_eps0_from_integral(double I, double T, double C0) {
    if (!(I > 0.0) || !(T > 0.0) || !(C0 > 0.0))
        throw std::invalid_argument("eps0: I, T and C0 must be positive");
    // Both branches in log space: the second carries e^{C0 I}, which overflows
    // a double long before the minimum stops being meaningful.
    const double l1 = -2.0 * std::log(8.0 * C0 * I);
    const double l2 = -2.0 * (std::log(32.0 * C0 * C0 * T * I) + C0 * I);
    return std::min(l1, l2);
}

FluxSeries boundary_flux_integral(const Trajectory& limit_traj) {
    FluxSeries out;
    out.times = limit_traj.times();
    const std::size_t K = out.times.size();
    out.I_a.assign(K, 0.0);
    out.I_b.assign(K, 0.0);
    double prev_a = 0.0, prev_b = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const ScalarField ur = gradient(limit_traj.u(k));
        const double ga = ur[0];
        const double gb = ur[ur.size() - 1];
        if (k > 0) {
            const double dt = out.times[k] - out.times[k - 1];
            out.I_a[k] = out.I_a[k - 1] + 0.5 * dt * (prev_a + ga);
            out.I_b[k] = out.I_b[k - 1] + 0.5 * dt * (prev_b + gb);
        }
        prev_a = ga;
        prev_b = gb;
        out.max_abs_a = std::max(out.max_abs_a, std::abs(out.I_a[k]));
        out.max_abs_b = std::max(out.max_abs_b, std::abs(out.I_b[k]));
    }
    return out;
}

LayerReport detect_layer(const Trajectory& diffusive, const Trajectory& limit_traj,
                         double delta, double threshold) {
    require_matched_samples(diffusive, limit_traj);
    const auto& g = *limit_traj.params().grid;
    const double a = g.a(), b = g.b();
    if (!(delta > 0.0) || !(delta < 0.5 * (b - a)))
        throw std::invalid_argument("detect_layer: delta must lie in (0, (b-a)/2)");
    if (!(threshold > 0.0)) throw std::invalid_argument("detect_layer: threshold must be positive");
    LayerReport rep;
    rep.delta = delta;
    rep.threshold = threshold;
    for (std::size_t k = 0; k < diffusive.samples(); ++k) {
        const ScalarField& ve = diffusive.second(k);
        const ScalarField& v0 = limit_traj.second(k);
        ScalarField diff(ve.grid());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ve[i] - v0[i];
        rep.full_error = std::max(rep.full_error, sup_norm(diff, a, b));
        rep.interior_error = std::max(rep.interior_error, sup_norm(diff, a + delta, b - delta));
    }
    const FluxSeries flux = boundary_flux_integral(limit_traj);
    rep.flux_a = flux.max_abs_a;
    rep.flux_b = flux.max_abs_b;
    rep.layer = rep.full_error >= threshold && rep.interior_error < threshold;
    return rep;
}

RateFit fit_rate(const std::vector<double>& eps_values, const std::vector<double>& errors) {
    if (eps_values.size() != errors.size())
        throw std::invalid_argument("fit_rate: mismatched lengths");
    if (eps_values.size() < 3)
        throw std::invalid_argument("fit_rate: need at least three points");
    for (std::size_t i = 0; i < eps_values.size(); ++i) {
        if (!(eps_values[i] > 0.0) || !(errors[i] > 0.0) || !std::isfinite(errors[i]))
            throw std::invalid_argument("fit_rate: values must be positive and finite");
        if (i > 0 && !(eps_values[i] < eps_values[i - 1]))
            throw std::invalid_argument("fit_rate: eps values must be strictly decreasing");
    }
    const std::size_t N = eps_values.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double x = std::log(eps_values[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(N);
    const double denom = dn * sxx - sx * sx;
    RateFit fit;
    fit.eps_values = eps_values;
    fit.errors = errors;
    fit.slope = (dn * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / dn;
    double ss = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double y = std::log(errors[i]);
        const double yhat = fit.intercept + fit.slope * std::log(eps_values[i]);
        ss += (y - yhat) * (y - yhat);
    }
    fit.rms_residual = std::sqrt(ss / dn);
    return fit;
}

}  // namespace rks
