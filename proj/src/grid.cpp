#include "rkslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rks {

namespace {

void check_interval(double a, double b, std::size_t m) {
    if (!(a > 0.0)) throw std::invalid_argument("grid: inner radius must be positive");
    if (!(b > a)) throw std::invalid_argument("grid: outer radius must exceed inner radius");
    if (m < 3) throw std::invalid_argument("grid: need at least 3 nodes");
}

}  // namespace

RadialGrid::RadialGrid(std::vector<double> r, GridKind kind, double ratio)
    : r_(std::move(r)), kind_(kind), ratio_(ratio) {}

std::shared_ptr<const RadialGrid> RadialGrid::uniform(double a, double b, std::size_t m) {
    check_interval(a, b, m);
    std::vector<double> r(m);
    const double h = (b - a) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) r[i] = a + h * static_cast<double>(i);
    r.front() = a;
    r.back() = b;
    return std::shared_ptr<const RadialGrid>(new RadialGrid(std::move(r), GridKind::Uniform, 1.0));
}

std::shared_ptr<const RadialGrid> RadialGrid::boundary_graded(double a, double b, std::size_t m,
                                                              double ratio) {
    check_interval(a, b, m);
    if (!(ratio > 1.0)) throw std::invalid_argument("grid: grading ratio must exceed 1");
    const std::size_t intervals = m - 1;
    // Unnormalized spacings grow geometrically from both ends toward the middle,
    // reaching `ratio` times the endpoint spacing at the central interval.
    const std::size_t half = (intervals - 1) / 2;
    std::vector<double> w(intervals, 1.0);
    if (half >= 1) {
        const double g = std::pow(ratio, 1.0 / static_cast<double>(half));
        for (std::size_t j = 0; j < intervals; ++j) {
            const std::size_t depth = std::min(j, intervals - 1 - j);
            w[j] = std::pow(g, static_cast<double>(depth));
        }
    }
    double total = 0.0;
    for (double x : w) total += x;
    std::vector<double> r(m);
    r[0] = a;
    double acc = 0.0;
    for (std::size_t j = 0; j < intervals; ++j) {
        acc += w[j];
        r[j + 1] = a + (b - a) * (acc / total);
    }
    r.back() = b;
    return std::shared_ptr<const RadialGrid>(
        new RadialGrid(std::move(r), GridKind::BoundaryGraded, half >= 1 ? ratio : 1.0));
}

double RadialGrid::min_spacing() const {
    double s = spacing(0);
    for (std::size_t i = 1; i + 1 < r_.size(); ++i) s = std::min(s, spacing(i));
    return s;
}

double RadialGrid::max_spacing() const {
    double s = spacing(0);
    for (std::size_t i = 1; i + 1 < r_.size(); ++i) s = std::max(s, spacing(i));
    return s;
}

bool RadialGrid::same_nodes(const RadialGrid& other) const {
    return r_ == other.r_;
}

std::string to_string(GridKind kind) {
    return kind == GridKind::Uniform ? "uniform" : "boundary-graded";
}

GridKind grid_kind_from_string(const std::string& s) {
    if (s == "uniform") return GridKind::Uniform;
    if (s == "boundary-graded" || s == "graded") return GridKind::BoundaryGraded;
    throw std::invalid_argument("grid: unknown kind '" + s + "'");
}

GridPtr make_grid(double a, double b, std::size_t m, GridKind kind, double ratio) {
    return kind == GridKind::Uniform ? RadialGrid::uniform(a, b, m)
                                     : RadialGrid::boundary_graded(a, b, m, ratio);
}

}  // namespace rks
