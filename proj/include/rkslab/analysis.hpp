#pragma once

#include <cstddef>
#include <vector>

#include "rkslab/field.hpp"
#include "rkslab/trajectory.hpp"

namespace rks {

/// Spatial weight applied inside the L2 norm.
///  - RadialMeasure:    w(r) = r^{(n-1)/2}, the annular volume weight.
///  - AnnulusQuadratic: w(r) = (r-a)(b-r), vanishing at both ends; used for
///    interior gradient bounds that tolerate boundary layers.
enum class WeightKind { RadialMeasure, AnnulusQuadratic };

/// sqrt( sum_i tau_i w(r_i)^2 f_i^2 ) with trapezoid weights tau.
double weighted_l2(const ScalarField& f, WeightKind kind, int n = 2);

/// max |f| over grid nodes inside [lo, hi]; the interval ends snap to the
/// nearest grid nodes. Throws if lo > hi.
double sup_norm(const ScalarField& f, double lo, double hi);

struct EntropyValue {
    double E = 0.0;                // relative entropy + kinetic part
    double D = 0.0;                // Fisher-type dissipation
    std::size_t floored_nodes = 0; // nodes clamped to u_floor inside the log
};

/// Relative entropy of (u, v) against the constant boundary state u_bar:
///   E = Int r^{n-1} [ u ln(u/u_bar) - (u - u_bar) ] + 1/2 Int r^{n-1} v^2,
///   D = Int r^{n-1} u_r^2 / u.
/// Nodes with u below u_floor enter the logarithm clamped and are counted.
EntropyValue entropy_functional(const ScalarField& u, const ScalarField& v, double u_bar,
                                int n, double u_floor = 1e-12);

/// Plain (unweighted) Sobolev norm over [a, b] of order 0, 1 or 2, built from
/// repeated application of the gradient stencil and trapezoid quadrature.
double discrete_sobolev(const ScalarField& f, int order);

/// The theorem-constant machinery evaluated on a limit trajectory.
struct FSeries {
    std::vector<double> times;
    std::vector<double> values;  // F(t) at each saved sample
    double integral = 0.0;       // trapezoid of F over [0, T]
    double eps0 = 0.0;           // admissible-diffusivity threshold
    double log_eps0 = 0.0;       // natural log of eps0 (finite even when eps0 underflows)
};

/// F(t) = |u|_{H2}^2 + |v|_{H2} + |v|_{H2}^2 + |v|_{H2}^4 + v_bar1^2 + v_bar2^2 + 1
/// evaluated on the saved samples of a limit run, its time integral, and the
/// threshold eps0 = min{ (8 C0 I)^-2, (32 C0^2 T e^{C0 I} I)^-2 }, I = Int F.
/// The second branch is formed in log space to survive large C0 I.
FSeries compute_F_and_eps0(const Trajectory& limit_traj, double C0);

/// The threshold formula alone, ln eps0 as a function of I = Int_0^T F.
double log_eps0_from_integral(double I, double T, double C0);

/// Cumulative boundary flux integrals of a limit run:
/// I_a(t) = Int_0^t u_r(a, tau) dtau and likewise I_b, by the trapezoid rule
/// over the saved samples.
struct FluxSeries {
    std::vector<double> times;
    std::vector<double> I_a, I_b;
    double max_abs_a = 0.0, max_abs_b = 0.0;
};

FluxSeries boundary_flux_integral(const Trajectory& limit_traj);

/// Boundary-layer verdict for one diffusive run against the limit run.
struct LayerReport {
    double delta = 0.0;           // excluded collar width
    double threshold = 0.0;       // detection threshold on sup errors
    double interior_error = 0.0;  // sup over [a+delta, b-delta] and all samples
    double full_error = 0.0;      // sup over [a, b] and all samples
    double flux_a = 0.0;          // max_t |I_a| of the limit run
    double flux_b = 0.0;
    bool layer = false;           // full >= threshold while interior < threshold
};

/// Compares v across two trajectories sampled at the same times on the same
/// grid. delta must lie in (0, (b-a)/2).
LayerReport detect_layer(const Trajectory& diffusive, const Trajectory& limit_traj,
                         double delta, double threshold);

/// Log-log least-squares fit err ~ C * eps^slope.
struct RateFit {
    std::vector<double> eps_values;  // strictly decreasing, positive
    std::vector<double> errors;      // positive
    double slope = 0.0;
    double intercept = 0.0;  // ln C
    double rms_residual = 0.0;
};

RateFit fit_rate(const std::vector<double>& eps_values, const std::vector<double>& errors);

}  // namespace rks
