#pragma once

#include <string>
#include <vector>

#include "rkslab/field.hpp"
#include "rkslab/params.hpp"

namespace rks {

/// Which pair of state variables a trajectory stores.
///  - Transformed: (u, v); also used for limit runs (eps = 0).
///  - Original:    (u, c).
enum class VariableSet { Transformed, Original };

/// Scalar series recorded at every time step (not only at saved samples).
/// Entries are aligned; index 0 corresponds to t = 0.
struct StepDiagnostics {
    std::vector<double> time;
    std::vector<double> min_u;
    std::vector<double> cfl;        // advective CFL number of the step just taken
    std::vector<double> min_c;      // original runs only, else empty
    std::vector<double> entropy_E;  // limit runs with u_bar > 0, else empty
    std::vector<double> entropy_D;
};

/// Time-stamped sequence of saved states plus run metadata.
class Trajectory {
public:
    Trajectory(ModelParams params, StepControls controls, VariableSet vars);

    void append(double t, ScalarField u, ScalarField second);

    /// Throws std::logic_error if any structural invariant is broken:
    /// strictly increasing times starting at 0, matching sample counts,
    /// all fields on the run's grid.
    void validate() const;

    const ModelParams& params() const { return params_; }
    const StepControls& controls() const { return controls_; }
    VariableSet variables() const { return vars_; }

    std::size_t samples() const { return times_.size(); }
    double time(std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }
    const ScalarField& u(std::size_t k) const { return u_[k]; }
    const ScalarField& second(std::size_t k) const { return second_[k]; }
    const ScalarField& v(std::size_t k) const;  // requires Transformed
    const ScalarField& c(std::size_t k) const;  // requires Original

    StepDiagnostics& diagnostics() { return diag_; }
    const StepDiagnostics& diagnostics() const { return diag_; }

    double dt_effective() const { return dt_eff_; }
    void set_dt_effective(double dt) { dt_eff_ = dt; }

    /// Largest relative mismatch between initial data and boundary data,
    /// recorded by the solver for reporting (0 when fully compatible).
    double compat_mismatch() const { return compat_; }
    void set_compat_mismatch(double x) { compat_ = x; }

private:
    ModelParams params_;
    StepControls controls_;
    VariableSet vars_;
    std::vector<double> times_;
    std::vector<ScalarField> u_;
    std::vector<ScalarField> second_;
    StepDiagnostics diag_;
    double dt_eff_ = 0.0;
    double compat_ = 0.0;
};

std::string to_string(VariableSet v);

}  // namespace rks
