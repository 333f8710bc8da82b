#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "rkslab/field.hpp"
#include "rkslab/params.hpp"
#include "rkslab/trajectory.hpp"

namespace rks {

/// Thrown when a time step is rejected (non-finite output, density below
/// -tol_pos, chemical at or below its floor, or a singular linear solve).
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Optional source terms for manufactured-solution runs: fu feeds the density
/// equation, fsecond the v (or c) equation. Each takes (r, t).
struct Forcing {
    std::function<double(double, double)> fu;
    std::function<double(double, double)> fsecond;
};

/// One step of the transformed system (u, v) from time t to t + dt:
/// implicit diffusion in both equations, explicit transport and coupling,
/// Dirichlet data on u at both ends and on v when eps > 0.
std::pair<ScalarField, ScalarField> step_transformed(const ScalarField& u, const ScalarField& v,
                                                     const ModelParams& p,
                                                     const StepControls& ctrl, double t,
                                                     const Forcing* forcing = nullptr);

/// One step of the vanishing-diffusivity limit system: u as above; v updated
/// pointwise by the trapezoid rule in time from the gradient of u, with no
/// boundary condition on v.
std::pair<ScalarField, ScalarField> step_limit(const ScalarField& u, const ScalarField& v,
                                               const ModelParams& p, const StepControls& ctrl,
                                               double t, const Forcing* forcing = nullptr);

/// One step of the original system (u, c): implicit diffusion, explicit
/// chemotactic transport and reaction, Dirichlet u, Robin rows
/// [c_r + v_bar c] = 0 at both ends. Requires c > 0 everywhere.
std::pair<ScalarField, ScalarField> step_original(const ScalarField& u, const ScalarField& c,
                                                  const ModelParams& p, const StepControls& ctrl,
                                                  double t, const Forcing* forcing = nullptr);

enum class SolveKind { Transformed, Limit, Original };

std::string to_string(SolveKind k);
SolveKind solve_kind_from_string(const std::string& s);

/// Run a full time loop from (first, second) at t = 0 up to t = T, landing on
/// T exactly by rounding the step count. Saved samples are thinned by
/// save_every (auto: >= 100 samples). Per-step diagnostics are always kept.
Trajectory solve(SolveKind kind, const ScalarField& first, const ScalarField& second,
                 const ModelParams& p, const StepControls& ctrl,
                 const Forcing* forcing = nullptr);

}  // namespace rks
