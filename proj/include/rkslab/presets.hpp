#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rkslab/field.hpp"
#include "rkslab/params.hpp"

namespace rks {

/// Named initial data for (u, v) on the grid in `p`:
///  - "constant":       u0 = u_bar, v0 linear from v_bar1 to v_bar2.
///  - "bump":           u0 = u_bar + 0.5 sin^2(pi (r-a)/(b-a)), v0 linear.
///  - "mismatch-layer": u0 = u_bar, v0 linear; intended for runs whose limit
///                      keeps v constant in time while the boundary data pull.
/// All presets take the boundary nodes exactly from the boundary data, so the
/// compatibility mismatch is zero to rounding.
std::pair<ScalarField, ScalarField> initial_data_presets(const std::string& name,
                                                         const ModelParams& p);

std::vector<std::string> preset_names();

/// Largest relative mismatch between (u0, v0) and the boundary data of `p`:
/// max over the four corner conditions of |difference| / (1 + |datum|).
/// For limit and transformed runs alike; callers decide whether v matters.
double compatibility_mismatch(const ScalarField& u0, const ScalarField& v0,
                              const ModelParams& p, bool check_v);

}  // namespace rks
