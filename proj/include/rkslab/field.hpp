#pragma once

#include <functional>
#include <vector>

#include "rkslab/grid.hpp"

namespace rks {

/// One real value per grid node. Value-semantic; carries a shared pointer to
/// its grid so operators can verify that operands live on the same nodes.
class ScalarField {
public:
    explicit ScalarField(GridPtr grid);  // zero-filled
    ScalarField(GridPtr grid, std::vector<double> values);

    /// Pointwise sampling of f(r) at the grid nodes.
    static ScalarField sample(const GridPtr& grid, const std::function<double(double)>& f);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    const GridPtr& grid() const { return grid_; }

    double min_value() const;
    double max_value() const;
    double max_abs() const;
    bool all_finite() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// Throws std::invalid_argument unless both fields share the same grid nodes.
void require_same_grid(const ScalarField& x, const ScalarField& y);

}  // namespace rks
