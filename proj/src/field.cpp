#include "rkslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rks {

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)) {
    if (!grid_) throw std::invalid_argument("field: null grid");
    values_.assign(grid_->size(), 0.0);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("field: null grid");
    if (values_.size() != grid_->size())
        throw std::invalid_argument("field: value count does not match grid node count");
}

ScalarField ScalarField::sample(const GridPtr& grid, const std::function<double(double)>& f) {
    ScalarField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid->r(i));
    return out;
}

double ScalarField::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

bool ScalarField::all_finite() const {
    for (double x : values_)
        if (!std::isfinite(x)) return false;
    return true;
}

void require_same_grid(const ScalarField& x, const ScalarField& y) {
    if (x.grid() == y.grid()) return;
    if (x.grid()->same_nodes(*y.grid())) return;
    throw std::invalid_argument("fields live on different grids");
}

}  // namespace rks
