#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rkslab/solver.hpp"

namespace rks::mms {

/// A manufactured pair (u*, w*) with matching source terms, boundary data and
/// initial data, used to measure observed convergence orders of one stepper.
/// w* is v* for transformed/limit runs and c* for original runs.
struct ManufacturedCase {
    SolveKind kind = SolveKind::Limit;
    ModelParams params;  // grid left empty; filled per study level
    double interval_a = 1.0, interval_b = 2.0;
    std::function<double(double, double)> u_exact;
    std::function<double(double, double)> w_exact;
    Forcing forcing;
};

/// u* = u_bar + sin(pi (r-a)/(b-a)) e^{-t}, v* = cos(t) (r-a)(b-r).
/// Boundary-compatible with u_bar and v_bar1 = v_bar2 = 0.
ManufacturedCase transformed_case(int n, double a, double b, double eps);
ManufacturedCase limit_case(int n, double a, double b);

/// Same u*; c* = exp(-vbar r + A cos(t) cos(pi (r-a)/(b-a))) with A = 0.3,
/// which satisfies both Robin conditions exactly.
ManufacturedCase original_case(int n, double a, double b, double eps, double vbar);

/// Run one level: solve on the given grid/step and return the larger of the
/// two final-time sup errors against the exact fields.
double level_error(const ManufacturedCase& mc, const GridPtr& grid, double dt, double T);

struct StudyLevel {
    std::size_t m = 0;
    double dt = 0.0;
    double error = 0.0;
};

struct OrderStudy {
    std::string stepper;  // "transformed" | "limit" | "original"
    std::string axis;     // "spatial" | "temporal"
    std::vector<StudyLevel> levels;
    double observed_order = 0.0;
};

/// Halve the spacing level to level, with dt scaled like the spacing squared
/// so the first-order-in-time error stays subordinate.
OrderStudy spatial_study(const ManufacturedCase& mc, const std::vector<std::size_t>& ms,
                         double dt0, double T);

/// Fixed grid, halved time steps.
OrderStudy temporal_study(const ManufacturedCase& mc, std::size_t m,
                          const std::vector<double>& dts, double T);

}  // namespace rks::mms
