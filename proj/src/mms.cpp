#include "rkslab/mms.hpp"

#include <cmath>
#include <stdexcept>

#include "rkslab/analysis.hpp"

namespace rks::mms {

namespace {

constexpr double kAmplitude = 0.3;  // log-amplitude of the manufactured chemical

double pi() { return std::acos(-1.0); }

}  // namespace

ManufacturedCase transformed_case(int n, double a, double b, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("mms: transformed case needs eps > 0");
    ManufacturedCase mc;
    mc.kind = SolveKind::Transformed;
    mc.interval_a = a;
    mc.interval_b = b;
    mc.params.n = n;
    mc.params.eps = eps;
    mc.params.u_bar = 1.0;
    mc.params.v_bar1 = 0.0;
    mc.params.v_bar2 = 0.0;
    const double kw = pi() / (b - a);
    const double nm1 = static_cast<double>(n - 1);
    const double ub = mc.params.u_bar;
    mc.u_exact = [=](double r, double t) { return ub + std::sin(kw * (r - a)) * std::exp(-t); };
    mc.w_exact = [=](double r, double t) { return std::cos(t) * (r - a) * (b - r); };
    mc.forcing.fu = [=](double r, double t) {
        const double e = std::exp(-t), s = std::sin(kw * (r - a)), c = std::cos(kw * (r - a));
        const double u = ub + s * e;
        const double ut = -s * e;
        const double ur = kw * c * e;
        const double urr = -kw * kw * s * e;
        const double P = (r - a) * (b - r), Pp = a + b - 2.0 * r;
        const double v = std::cos(t) * P, vr = std::cos(t) * Pp;
        return ut - (urr + nm1 / r * ur) - (ur * v + u * vr + nm1 / r * u * v);
    };
    mc.forcing.fsecond = [=](double r, double t) {
        const double e = std::exp(-t), c = std::cos(kw * (r - a));
        const double ur = kw * c * e;
        const double P = (r - a) * (b - r), Pp = a + b - 2.0 * r;
        const double v = std::cos(t) * P;
        const double vt = -std::sin(t) * P;
        const double vr = std::cos(t) * Pp;
        const double vrr = -2.0 * std::cos(t);
        return vt - eps * (vrr + nm1 / r * vr) + eps * nm1 * v / (r * r) + 2.0 * eps * v * vr -
               ur;
    };
    return mc;
}

ManufacturedCase limit_case(int n, double a, double b) {
    ManufacturedCase mc = transformed_case(n, a, b, 1e-30);
    // same fields with the eps-terms removed
    mc.kind = SolveKind::Limit;
    mc.params.eps = 0.0;
    const double kw = pi() / (b - a);
    mc.forcing.fsecond = [=](double r, double t) {
        const double ur = kw * std::cos(kw * (r - a)) * std::exp(-t);
        const double P = (r - a) * (b - r);
        const double vt = -std::sin(t) * P;
        return vt - ur;
    };
    return mc;
}

ManufacturedCase original_case(int n, double a, double b, double eps, double vbar) {
    ManufacturedCase mc;
    mc.kind = SolveKind::Original;
    mc.interval_a = a;
    mc.interval_b = b;
    mc.params.n = n;
    mc.params.eps = eps;
    mc.params.u_bar = 1.0;
    mc.params.v_bar1 = vbar;
    mc.params.v_bar2 = vbar;
    const double kw = pi() / (b - a);
    const double nm1 = static_cast<double>(n - 1);
    const double ub = mc.params.u_bar;
    const double A = kAmplitude;
    mc.u_exact = [=](double r, double t) { return ub + std::sin(kw * (r - a)) * std::exp(-t); };
    mc.w_exact = [=](double r, double t) {
        return std::exp(-vbar * r + A * std::cos(t) * std::cos(kw * (r - a)));
    };
    mc.forcing.fu = [=](double r, double t) {
        const double e = std::exp(-t), s = std::sin(kw * (r - a)), c = std::cos(kw * (r - a));
        const double u = ub + s * e;
        const double ut = -s * e;
        const double ur = kw * c * e;
        const double urr = -kw * kw * s * e;
        const double gr = -vbar - A * kw * std::cos(t) * s;
        const double grr = -A * kw * kw * std::cos(t) * c;
        return ut - (urr + nm1 / r * ur) + (ur * gr + u * grr + nm1 / r * u * gr);
    };
    mc.forcing.fsecond = [=](double r, double t) {
        const double s = std::sin(kw * (r - a)), c = std::cos(kw * (r - a));
        const double u = ub + s * std::exp(-t);
        const double g = -vbar * r + A * std::cos(t) * c;
        const double gt = -A * std::sin(t) * c;
        const double gr = -vbar - A * kw * std::cos(t) * s;
        const double grr = -A * kw * kw * std::cos(t) * c;
        const double cc = std::exp(g);
        const double lap = cc * (grr + gr * gr + nm1 / r * gr);
        return cc * gt - eps * lap + u * cc;
    };
    return mc;
}

double level_error(const ManufacturedCase& mc, const GridPtr& grid, double dt, double T) {
    ModelParams p = mc.params;
    p.grid = grid;
    p.dt = dt;
    p.T = T;
    const ScalarField u0 = ScalarField::sample(grid, [&](double r) { return mc.u_exact(r, 0.0); });
    const ScalarField w0 = ScalarField::sample(grid, [&](double r) { return mc.w_exact(r, 0.0); });
    StepControls ctrl;
    const Trajectory traj = solve(mc.kind, u0, w0, p, ctrl, &mc.forcing);
    const std::size_t K = traj.samples() - 1;
    const double tf = traj.time(K);
    double err = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const double r = grid->r(i);
        err = std::max(err, std::abs(traj.u(K)[i] - mc.u_exact(r, tf)));
        err = std::max(err, std::abs(traj.second(K)[i] - mc.w_exact(r, tf)));
    }
    return err;
}

OrderStudy spatial_study(const ManufacturedCase& mc, const std::vector<std::size_t>& ms,
                         double dt0, double T) {
    if (ms.size() < 3) throw std::invalid_argument("mms: need >= 3 spatial levels");
    OrderStudy study;
    study.stepper = to_string(mc.kind);
    study.axis = "spatial";
    std::vector<double> hs, errs;
    double h0 = 0.0;
    for (std::size_t li = 0; li < ms.size(); ++li) {
        const std::size_t m = ms[li];
        const GridPtr grid = RadialGrid::uniform(mc.interval_a, mc.interval_b, m);
        const double h = grid->max_spacing();
        if (li == 0) h0 = h;
        const double dt = dt0 * (h / h0) * (h / h0);
        StudyLevel lvl;
        lvl.m = m;
        lvl.dt = dt;
        lvl.error = level_error(mc, grid, dt, T);
        study.levels.push_back(lvl);
        hs.push_back(h);
        errs.push_back(lvl.error);
    }
    study.observed_order = fit_rate(hs, errs).slope;
    return study;
}

OrderStudy temporal_study(const ManufacturedCase& mc, std::size_t m,
                          const std::vector<double>& dts, double T) {
    if (dts.size() < 3) throw std::invalid_argument("mms: need >= 3 temporal levels");
    OrderStudy study;
    study.stepper = to_string(mc.kind);
    study.axis = "temporal";
    const GridPtr grid = RadialGrid::uniform(mc.interval_a, mc.interval_b, m);
    std::vector<double> errs;
    for (double dt : dts) {
        StudyLevel lvl;
        lvl.m = m;
        lvl.dt = dt;
        lvl.error = level_error(mc, grid, dt, T);
        study.levels.push_back(lvl);
        errs.push_back(lvl.error);
    }
    study.observed_order = fit_rate(dts, errs).slope;
    return study;
}

}  // namespace rks::mms
