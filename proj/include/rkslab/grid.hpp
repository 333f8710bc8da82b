#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace rks {

enum class GridKind { Uniform, BoundaryGraded };

/// Node-centered grid on an annulus [a, b] with 0 < a < b, endpoints included.
/// Nodes are strictly increasing. Immutable after construction; meant to be
/// shared between fields through GridPtr so grid identity can be checked cheaply.
class RadialGrid {
public:
    /// Equispaced nodes, m >= 3.
    static std::shared_ptr<const RadialGrid> uniform(double a, double b, std::size_t m);

    /// Geometrically stretched toward both endpoints: the largest (interior)
    /// spacing exceeds the endpoint spacing by `ratio` (> 1). Falls back to
    /// uniform spacing when m is too small to grade (fewer than 5 nodes).
    static std::shared_ptr<const RadialGrid> boundary_graded(double a, double b, std::size_t m,
                                                             double ratio);

    double a() const { return r_.front(); }
    double b() const { return r_.back(); }
    std::size_t size() const { return r_.size(); }
    double r(std::size_t i) const { return r_[i]; }
    const std::vector<double>& nodes() const { return r_; }
    GridKind kind() const { return kind_; }
    double grading_ratio() const { return ratio_; }

    /// Spacing of interval i, i.e. r(i+1) - r(i), for i < size()-1.
    double spacing(std::size_t i) const { return r_[i + 1] - r_[i]; }
    double min_spacing() const;
    double max_spacing() const;

    bool same_nodes(const RadialGrid& other) const;

private:
    RadialGrid(std::vector<double> r, GridKind kind, double ratio);

    std::vector<double> r_;
    GridKind kind_;
    double ratio_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

std::string to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string& s);

/// Convenience front end used by the harness and bindings.
GridPtr make_grid(double a, double b, std::size_t m, GridKind kind = GridKind::Uniform,
                  double ratio = 4.0);

}  // namespace rks
