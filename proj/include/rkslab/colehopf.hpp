#pragma once

#include <vector>

#include "rkslab/field.hpp"
#include "rkslab/trajectory.hpp"

namespace rks {

/// v = -c_r / c with the shared gradient stencils. Requires c > 0 everywhere.
ScalarField to_v(const ScalarField& c);

/// Rebuild the chemical concentration from a transformed-variables (or limit)
/// trajectory and the initial chemical c0 > 0:
///   c(r, t) = c0(r) * exp Int_0^t [ -u + eps v^2 - eps v_r - eps (n-1) v / r ].
/// The time integral is the cumulative trapezoid over the saved samples, so
/// the result is positive by construction. Returns one field per sample.
std::vector<ScalarField> reconstruct_c(const ScalarField& c0, const Trajectory& traj);

/// Residuals of the Robin conditions c_r + v_bar1 c = 0 at r = a and
/// c_r + v_bar2 c = 0 at r = b, per sample, with the one-sided stencils.
struct RobinResidualReport {
    std::vector<double> times;
    std::vector<double> res_a, res_b;  // absolute residuals
    double max_res_a = 0.0, max_res_b = 0.0;
};

RobinResidualReport check_robin_consistency(const std::vector<ScalarField>& c_series,
                                            const std::vector<double>& times, double v_bar1,
                                            double v_bar2);

}  // namespace rks
