#pragma once

#include <vector>

#include "rkslab/field.hpp"

namespace rks {

/// Tridiagonal linear system. sub[0] and sup[size-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> sub, diag, sup, rhs;

    std::size_t size() const { return diag.size(); }

    /// Strict row dominance: |diag_i| > |sub_i| + |sup_i| for every row.
    bool strictly_diagonally_dominant() const;

    /// Thomas algorithm. Throws std::runtime_error on a vanishing pivot.
    std::vector<double> solve() const;
};

/// Three-point gradient: centered (nonuniform-aware) at interior nodes,
/// second-order one-sided at both endpoints.
ScalarField gradient(const ScalarField& f);

/// Conservative radial Laplacian r^{1-n} (r^{n-1} f_r)_r using half-node
/// radii. Interior nodes only; boundary entries are set to 0.
ScalarField radial_laplacian(const ScalarField& f, int n);

/// Conservative radial divergence r^{1-n} (r^{n-1} F)_r of a node flux F,
/// using arithmetic half-node flux averages. Boundary entries are 0.
ScalarField radial_divergence(const ScalarField& flux, int n);

/// Matrix of (I - dt * coeff * Lap_r) with Dirichlet rows at both ends.
/// Interior rhs entries are left at 0 for the caller to fill; the Dirichlet
/// rows carry bc_lo / bc_hi in rhs. Strictly diagonally dominant whenever
/// dt * coeff >= 0.
TridiagonalSystem assemble_implicit_diffusion(const RadialGrid& g, double coeff, double dt,
                                              int n, double bc_lo, double bc_hi);

/// Boundary row coupling the three nodes nearest one endpoint. For the low
/// end, (c0, c1, c2) multiply nodes (0, 1, 2); for the high end, nodes
/// (m-1, m-2, m-3).
struct EdgeRow {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double rhs = 0.0;
};

/// Row enforcing f_r + w * f = 0 at r = a (resp. r = b) with the same
/// second-order one-sided stencil used by gradient().
EdgeRow robin_row_lo(const RadialGrid& g, double w);
EdgeRow robin_row_hi(const RadialGrid& g, double w);

/// Solve the system whose interior rows (1 .. m-2) come from `sys` and whose
/// boundary rows are `lo` and `hi`. The boundary rows reach two nodes into
/// the interior; they are reduced to tridiagonal form by exact elimination
/// against the adjacent interior row. Rows 0 and m-1 of `sys` are ignored.
std::vector<double> solve_with_edge_rows(const TridiagonalSystem& sys, const EdgeRow& lo,
                                         const EdgeRow& hi);

/// Trapezoid quadrature weights of the grid (integral of nodal data over [a, b]).
std::vector<double> trapezoid_weights(const RadialGrid& g);

}  // namespace rks
