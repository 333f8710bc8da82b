#include "rkslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rkslab/analysis.hpp"
#include "rkslab/operators.hpp"
#include "rkslab/presets.hpp"

namespace rks {

namespace {

void check_step_inputs(const ScalarField& x, const ScalarField& y, const ModelParams& p,
                       const StepControls& ctrl) {
    p.validate();
    ctrl.validate();
    require_same_grid(x, y);
    if (!x.grid()->same_nodes(*p.grid))
        throw std::invalid_argument("step: fields do not live on the parameter grid");
}

void check_step_outputs(const ScalarField& u_new, const ScalarField& other,
                        const StepControls& ctrl, double t_new, const char* label) {
    if (!u_new.all_finite() || !other.all_finite())
        throw SolverError(std::string(label) + ": non-finite state after step", t_new);
    if (u_new.min_value() < -ctrl.tol_pos)
        throw SolverError(std::string(label) + ": density dropped below tolerance", t_new);
}

/// Backward-Euler style density update shared by all three steppers:
/// (I - theta dt Lap) u' = u + dt * explicit + (1-theta) dt Lap u.
ScalarField advance_density(const ScalarField& u, const ScalarField& explicit_part,
                            const ModelParams& p, double dt, double theta, double t_new,
                            const Forcing* forcing) {
    const auto& g = *u.grid();
    const std::size_t m = g.size();
    TridiagonalSystem sys = assemble_implicit_diffusion(g, 1.0, theta * dt, p.n, p.u_bar, p.u_bar);
    ScalarField lap(u.grid());
    if (theta < 1.0) lap = radial_laplacian(u, p.n);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        double rhs = u[i] + dt * explicit_part[i] + (1.0 - theta) * dt * lap[i];
        if (forcing && forcing->fu) rhs += dt * forcing->fu(g.r(i), t_new);
        sys.rhs[i] = rhs;
    }
    return ScalarField(u.grid(), sys.solve());
}

}  // namespace

std::pair<ScalarField, ScalarField> step_transformed(const ScalarField& u, const ScalarField& v,
                                                     const ModelParams& p,
                                                     const StepControls& ctrl, double t,
                                                     const Forcing* forcing) {
    check_step_inputs(u, v, p, ctrl);
    if (!(p.eps > 0.0))
        throw std::invalid_argument("step_transformed: eps must be positive (use step_limit)");
    const double dt = ctrl.effective_dt(p);
    const double theta = ctrl.theta;
    const double t_new = t + dt;
    const auto& g = *u.grid();
    const std::size_t m = g.size();

    // Density: aggregation flux u*v under the conservative divergence.
    ScalarField flux(u.grid());
    for (std::size_t i = 0; i < m; ++i) flux[i] = u[i] * v[i];
    const ScalarField div_uv = radial_divergence(flux, p.n);
    ScalarField u_new = advance_density(u, div_uv, p, dt, theta, t_new, forcing);

    // Gradient variable: implicit eps-diffusion, explicit geometric sink,
    // explicit quadratic transport, explicit density coupling, Dirichlet data.
    TridiagonalSystem sys_v =
        assemble_implicit_diffusion(g, p.eps, theta * dt, p.n, p.v_bar1, p.v_bar2);
    const ScalarField grad_u = gradient(u);
    ScalarField v2(v.grid());
    for (std::size_t i = 0; i < m; ++i) v2[i] = v[i] * v[i];
    const ScalarField grad_v2 = gradient(v2);
    ScalarField lap_v(v.grid());
    if (theta < 1.0) lap_v = radial_laplacian(v, p.n);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double r = g.r(i);
        double rhs = v[i] +
                     dt * (grad_u[i] - p.eps * grad_v2[i] -
                           p.eps * static_cast<double>(p.n - 1) * v[i] / (r * r)) +
                     (1.0 - theta) * dt * p.eps * lap_v[i];
        if (forcing && forcing->fsecond) rhs += dt * forcing->fsecond(r, t_new);
        sys_v.rhs[i] = rhs;
    }
    ScalarField v_new(v.grid(), sys_v.solve());

    check_step_outputs(u_new, v_new, ctrl, t_new, "transformed");
    return {std::move(u_new), std::move(v_new)};
}

std::pair<ScalarField, ScalarField> step_limit(const ScalarField& u, const ScalarField& v,
                                               const ModelParams& p, const StepControls& ctrl,
                                               double t, const Forcing* forcing) {
    check_step_inputs(u, v, p, ctrl);
    const double dt = ctrl.effective_dt(p);
    const double t_new = t + dt;
    const auto& g = *u.grid();
    const std::size_t m = g.size();

    ScalarField flux(u.grid());
    for (std::size_t i = 0; i < m; ++i) flux[i] = u[i] * v[i];
    const ScalarField div_uv = radial_divergence(flux, p.n);
    ScalarField u_new = advance_density(u, div_uv, p, dt, ctrl.theta, t_new, forcing);

    // v_t = u_r pointwise, trapezoid in time, no boundary condition.
    const ScalarField gu_old = gradient(u);
    const ScalarField gu_new = gradient(u_new);
    ScalarField v_new(v.grid());
    for (std::size_t i = 0; i < m; ++i) {
        double inc = 0.5 * dt * (gu_old[i] + gu_new[i]);
        if (forcing && forcing->fsecond)
            inc += 0.5 * dt * (forcing->fsecond(g.r(i), t) + forcing->fsecond(g.r(i), t_new));
        v_new[i] = v[i] + inc;
    }

    check_step_outputs(u_new, v_new, ctrl, t_new, "limit");
    return {std::move(u_new), std::move(v_new)};
}

std::pair<ScalarField, ScalarField> step_original(const ScalarField& u, const ScalarField& c,
                                                  const ModelParams& p, const StepControls& ctrl,
                                                  double t, const Forcing* forcing) {
    check_step_inputs(u, c, p, ctrl);
    if (!(c.min_value() > 0.0))
        throw SolverError("original: chemical concentration must stay positive", t);
    const double dt = ctrl.effective_dt(p);
    const double theta = ctrl.theta;
    const double t_new = t + dt;
    const auto& g = *u.grid();
    const std::size_t m = g.size();

    // Density: chemotactic drift flux -u c_r / c (the aggregation term enters
    // with opposite sign relative to the transformed variables).
    const ScalarField grad_c = gradient(c);
    ScalarField chem_flux(u.grid());
    for (std::size_t i = 0; i < m; ++i) chem_flux[i] = -u[i] * grad_c[i] / c[i];
    const ScalarField div_chem = radial_divergence(chem_flux, p.n);
    ScalarField u_new = advance_density(u, div_chem, p, dt, theta, t_new, forcing);

    // Chemical: implicit eps-diffusion, explicit consumption -u c, Robin rows.
    TridiagonalSystem sys_c = assemble_implicit_diffusion(g, p.eps, theta * dt, p.n, 0.0, 0.0);
    ScalarField lap_c(c.grid());
    if (theta < 1.0 && p.eps > 0.0) lap_c = radial_laplacian(c, p.n);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        double rhs = c[i] - dt * u[i] * c[i] + (1.0 - theta) * dt * p.eps * lap_c[i];
        if (forcing && forcing->fsecond) rhs += dt * forcing->fsecond(g.r(i), t_new);
        sys_c.rhs[i] = rhs;
    }
    const EdgeRow lo = robin_row_lo(g, p.v_bar1);
    const EdgeRow hi = robin_row_hi(g, p.v_bar2);
    ScalarField c_new(c.grid(), solve_with_edge_rows(sys_c, lo, hi));

    check_step_outputs(u_new, c_new, ctrl, t_new, "original");
    if (!(c_new.min_value() > ctrl.c_floor))
        throw SolverError("original: chemical reached its positivity floor", t_new);
    return {std::move(u_new), std::move(c_new)};
}

std::string to_string(SolveKind k) {
    switch (k) {
        case SolveKind::Transformed: return "transformed";
        case SolveKind::Limit: return "limit";
        default: return "original";
    }
}

SolveKind solve_kind_from_string(const std::string& s) {
    if (s == "transformed") return SolveKind::Transformed;
    if (s == "limit") return SolveKind::Limit;
    if (s == "original") return SolveKind::Original;
    throw std::invalid_argument("solver: unknown kind '" + s + "'");
}

Trajectory solve(SolveKind kind, const ScalarField& first, const ScalarField& second,
                 const ModelParams& p, const StepControls& ctrl, const Forcing* forcing) {
    check_step_inputs(first, second, p, ctrl);
    if (kind == SolveKind::Transformed && !(p.eps > 0.0))
        throw std::invalid_argument("solve: transformed runs need eps > 0; use the limit kind");
    if (kind == SolveKind::Limit && p.eps != 0.0)
        throw std::invalid_argument("solve: limit runs must carry eps = 0");

    const double dt_req = ctrl.effective_dt(p);
    const long long N =
        p.T > 0.0 ? std::max<long long>(1, std::llround(p.T / dt_req)) : 0;
    const double dt_eff = N > 0 ? p.T / static_cast<double>(N) : dt_req;
    StepControls ctrl_eff = ctrl;
    ctrl_eff.dt = dt_eff;
    const std::size_t save_every =
        ctrl.save_every > 0 ? ctrl.save_every
                            : static_cast<std::size_t>(std::max<long long>(1, N / 100));

    Trajectory traj(p, ctrl_eff, kind == SolveKind::Original ? VariableSet::Original
                                                             : VariableSet::Transformed);
    traj.set_dt_effective(dt_eff);
    traj.set_compat_mismatch(
        compatibility_mismatch(first, second, p, /*check_v=*/kind != SolveKind::Original));

    const bool track_entropy =
        kind == SolveKind::Limit && p.u_bar > 0.0 && ctrl.record_entropy;
    StepDiagnostics& diag = traj.diagnostics();
    auto record = [&](double t, const ScalarField& u, const ScalarField& other, double cfl) {
        diag.time.push_back(t);
        diag.min_u.push_back(u.min_value());
        diag.cfl.push_back(cfl);
        if (kind == SolveKind::Original) diag.min_c.push_back(other.min_value());
        if (track_entropy) {
            const EntropyValue e = entropy_functional(u, other, p.u_bar, p.n);
            diag.entropy_E.push_back(e.E);
            diag.entropy_D.push_back(e.D);
        }
    };

    ScalarField u = first;
    ScalarField other = second;
    traj.append(0.0, u, other);
    record(0.0, u, other, 0.0);

    const double hmin = p.grid->min_spacing();
    for (long long k = 0; k < N; ++k) {
        const double t = dt_eff * static_cast<double>(k);
        double speed = 0.0;
        if (kind == SolveKind::Original) {
            const ScalarField gc = gradient(other);
            for (std::size_t i = 0; i < other.size(); ++i)
                speed = std::max(speed, std::abs(gc[i] / other[i]));
        } else {
            speed = other.max_abs();
        }
        const double cfl = dt_eff * speed / hmin;

        std::pair<ScalarField, ScalarField> next =
            kind == SolveKind::Transformed ? step_transformed(u, other, p, ctrl_eff, t, forcing)
            : kind == SolveKind::Limit     ? step_limit(u, other, p, ctrl_eff, t, forcing)
                                           : step_original(u, other, p, ctrl_eff, t, forcing);
        u = std::move(next.first);
        other = std::move(next.second);

        const double t_new = dt_eff * static_cast<double>(k + 1);
        record(t_new, u, other, cfl);
        if ((k + 1) % static_cast<long long>(save_every) == 0 || k + 1 == N)
            traj.append(t_new, u, other);
    }
    traj.validate();
    return traj;
}

}  // namespace rks
