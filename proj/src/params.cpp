#include "rkslab/params.hpp"

#include <cmath>
#include <stdexcept>

namespace rks {

void ModelParams::validate() const {
    if (n < 2) throw std::invalid_argument("params: dimension n must be >= 2");
    if (!(eps >= 0.0) || !(eps < 1.0))
        throw std::invalid_argument("params: eps must lie in [0, 1)");
    if (!(u_bar >= 0.0)) throw std::invalid_argument("params: u_bar must be >= 0");
    if (!std::isfinite(v_bar1) || !std::isfinite(v_bar2))
        throw std::invalid_argument("params: boundary data must be finite");
    if (!(T >= 0.0)) throw std::invalid_argument("params: final time must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("params: dt must be positive");
    if (!grid) throw std::invalid_argument("params: grid is not set");
}

void StepControls::validate() const {
    if (dt < 0.0) throw std::invalid_argument("controls: dt override must be >= 0");
    if (!(cfl_safety > 0.0) || !(cfl_safety <= 1.0))
        throw std::invalid_argument("controls: cfl_safety must lie in (0, 1]");
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("controls: theta must lie in (0, 1]");
    if (!(tol_pos >= 0.0)) throw std::invalid_argument("controls: tol_pos must be >= 0");
    if (!(c_floor > 0.0)) throw std::invalid_argument("controls: c_floor must be positive");
}

double StepControls::effective_dt(const ModelParams& p) const {
    return dt > 0.0 ? dt : p.dt;
}

}  // namespace rks
