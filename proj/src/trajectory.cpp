#include "rkslab/trajectory.hpp"

#include <stdexcept>

namespace rks {

Trajectory::Trajectory(ModelParams params, StepControls controls, VariableSet vars)
    : params_(std::move(params)), controls_(controls), vars_(vars) {
    params_.validate();
    controls_.validate();
}

void Trajectory::append(double t, ScalarField u, ScalarField second) {
    require_same_grid(u, second);
    if (!u.grid()->same_nodes(*params_.grid))
        throw std::invalid_argument("trajectory: sample on a different grid than the run");
    if (!times_.empty() && !(t > times_.back()))
        throw std::invalid_argument("trajectory: sample times must be strictly increasing");
    if (times_.empty() && t != 0.0)
        throw std::invalid_argument("trajectory: first sample must be at t = 0");
    times_.push_back(t);
    u_.push_back(std::move(u));
    second_.push_back(std::move(second));
}

void Trajectory::validate() const {
    if (times_.size() != u_.size() || times_.size() != second_.size())
        throw std::logic_error("trajectory: sample arrays out of step");
    if (!times_.empty() && times_.front() != 0.0)
        throw std::logic_error("trajectory: first sample time is not 0");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1]))
            throw std::logic_error("trajectory: times not strictly increasing");
    for (std::size_t k = 0; k < u_.size(); ++k) {
        if (!u_[k].grid()->same_nodes(*params_.grid) ||
            !second_[k].grid()->same_nodes(*params_.grid))
            throw std::logic_error("trajectory: sample grid mismatch");
    }
}

const ScalarField& Trajectory::v(std::size_t k) const {
    if (vars_ != VariableSet::Transformed)
        throw std::logic_error("trajectory: v() requested on an original-variables run");
    return second_[k];
}

const ScalarField& Trajectory::c(std::size_t k) const {
    if (vars_ != VariableSet::Original)
        throw std::logic_error("trajectory: c() requested on a transformed-variables run");
    return second_[k];
}

std::string to_string(VariableSet v) {
    return v == VariableSet::Transformed ? "transformed" : "original";
}

}  // namespace rks
