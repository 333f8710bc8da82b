#pragma once

#include <cstddef>

#include "rkslab/grid.hpp"

namespace rks {

/// Physical and numerical parameters of the annulus model.
///
/// The same structure serves the transformed system (density u and chemical
/// gradient variable v), its vanishing-diffusivity limit, and the original
/// system (density u and chemical concentration c).
struct ModelParams {
    int n = 2;            // spatial dimension (>= 2); n-1 is the radial weight power
    double eps = 0.0;     // chemical diffusivity, in [0, 1)
    double u_bar = 1.0;   // constant boundary density, >= 0
    double v_bar1 = 0.0;  // boundary datum for v at r = a (Robin weight for c)
    double v_bar2 = 0.0;  // boundary datum for v at r = b
    double T = 1.0;       // final time, > 0 (0 allowed: initial state only)
    double dt = 2.5e-4;   // time step, > 0
    GridPtr grid;

    void validate() const;  // throws std::invalid_argument on any violation
};

/// Knobs of the time loop, separate from the model so one parameter set can
/// be run under several stepping policies.
struct StepControls {
    double dt = 0.0;            // 0 inherits ModelParams::dt; > 0 overrides
    double cfl_safety = 0.9;    // in (0, 1]; advective CFL is diagnostic only
    double theta = 1.0;         // diffusion implicitness; 1 = backward Euler baseline
    std::size_t save_every = 0; // 0: pick so a run keeps >= 100 samples
    double tol_pos = 1e-10;     // reject a step whose density dips below -tol_pos
    double c_floor = 1e-12;     // positivity floor for the chemical concentration
    bool record_entropy = true; // per-step energy/dissipation series on limit runs

    void validate() const;
    double effective_dt(const ModelParams& p) const;
};

}  // namespace rks
