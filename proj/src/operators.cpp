#include "rkslab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace rks {

namespace {

double ipow(double x, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x;
    return p;
}

}  // namespace

bool TridiagonalSystem::strictly_diagonally_dominant() const {
    const std::size_t m = size();
    for (std::size_t i = 0; i < m; ++i) {
        const double off = (i > 0 ? std::abs(sub[i]) : 0.0) +
                           (i + 1 < m ? std::abs(sup[i]) : 0.0);
        if (!(std::abs(diag[i]) > off)) return false;
    }
    return true;
}

std::vector<double> TridiagonalSystem::solve() const {
    const std::size_t m = size();
    if (sub.size() != m || sup.size() != m || rhs.size() != m)
        throw std::invalid_argument("tridiagonal: ragged system");
    if (m == 0) return {};
    std::vector<double> c(m), d(m), x(m);
    double piv = diag[0];
    if (piv == 0.0) throw std::runtime_error("tridiagonal: zero pivot at row 0");
    c[0] = (m > 1 ? sup[0] : 0.0) / piv;
    d[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < m; ++i) {
        piv = diag[i] - sub[i] * c[i - 1];
        if (piv == 0.0) throw std::runtime_error("tridiagonal: zero pivot");
        c[i] = (i + 1 < m ? sup[i] : 0.0) / piv;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / piv;
    }
    x[m - 1] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

ScalarField gradient(const ScalarField& f) {
    const auto& g = *f.grid();
    const std::size_t m = g.size();
    ScalarField out(f.grid());
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double hm = g.r(i) - g.r(i - 1);
        const double hp = g.r(i + 1) - g.r(i);
        out[i] = (hm * hm * f[i + 1] - hp * hp * f[i - 1] + (hp * hp - hm * hm) * f[i]) /
                 (hm * hp * (hm + hp));
    }
    {
        const double h1 = g.r(1) - g.r(0);
        const double h2 = g.r(2) - g.r(1);
        out[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
                 h1 / (h2 * (h1 + h2)) * f[2];
    }
    {
        const double h1 = g.r(m - 1) - g.r(m - 2);
        const double h2 = g.r(m - 2) - g.r(m - 3);
        out[m - 1] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[m - 1] -
                     (h1 + h2) / (h1 * h2) * f[m - 2] + h1 / (h2 * (h1 + h2)) * f[m - 3];
    }
    return out;
}

ScalarField radial_laplacian(const ScalarField& f, int n) {
    if (n < 2) throw std::invalid_argument("laplacian: dimension must be >= 2");
    const auto& g = *f.grid();
    const std::size_t m = g.size();
    ScalarField out(f.grid());
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double hm = g.r(i) - g.r(i - 1);
        const double hp = g.r(i + 1) - g.r(i);
        const double rm = 0.5 * (g.r(i) + g.r(i - 1));
        const double rp = 0.5 * (g.r(i) + g.r(i + 1));
        const double am = ipow(rm, n - 1) / hm;
        const double ap = ipow(rp, n - 1) / hp;
        const double w = ipow(g.r(i), n - 1) * 0.5 * (hm + hp);
        out[i] = (ap * (f[i + 1] - f[i]) - am * (f[i] - f[i - 1])) / w;
    }
    return out;
}

ScalarField radial_divergence(const ScalarField& flux, int n) {
    if (n < 2) throw std::invalid_argument("divergence: dimension must be >= 2");
    const auto& g = *flux.grid();
    const std::size_t m = g.size();
    ScalarField out(flux.grid());
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double hm = g.r(i) - g.r(i - 1);
        const double hp = g.r(i + 1) - g.r(i);
        const double rm = 0.5 * (g.r(i) + g.r(i - 1));
        const double rp = 0.5 * (g.r(i) + g.r(i + 1));
        const double fm = 0.5 * (flux[i] + flux[i - 1]);
        const double fp = 0.5 * (flux[i] + flux[i + 1]);
        const double w = ipow(g.r(i), n - 1) * 0.5 * (hm + hp);
        out[i] = (ipow(rp, n - 1) * fp - ipow(rm, n - 1) * fm) / w;
    }
    return out;
}

TridiagonalSystem assemble_implicit_diffusion(const RadialGrid& g, double coeff, double dt,
                                              int n, double bc_lo, double bc_hi) {
    if (n < 2) throw std::invalid_argument("diffusion: dimension must be >= 2");
    if (coeff < 0.0 || dt < 0.0)
        throw std::invalid_argument("diffusion: coeff and dt must be >= 0");
    const std::size_t m = g.size();
    TridiagonalSystem sys;
    sys.sub.assign(m, 0.0);
    sys.diag.assign(m, 1.0);
    sys.sup.assign(m, 0.0);
    sys.rhs.assign(m, 0.0);
    const double k = dt * coeff;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double hm = g.r(i) - g.r(i - 1);
        const double hp = g.r(i + 1) - g.r(i);
        const double rm = 0.5 * (g.r(i) + g.r(i - 1));
        const double rp = 0.5 * (g.r(i) + g.r(i + 1));
        const double am = ipow(rm, n - 1) / hm;
        const double ap = ipow(rp, n - 1) / hp;
        const double w = ipow(g.r(i), n - 1) * 0.5 * (hm + hp);
        sys.sub[i] = -k * am / w;
        sys.sup[i] = -k * ap / w;
        sys.diag[i] = 1.0 + k * (am + ap) / w;
    }
    sys.rhs[0] = bc_lo;
    sys.rhs[m - 1] = bc_hi;
    return sys;
}

EdgeRow robin_row_lo(const RadialGrid& g, double w) {
    const double h1 = g.r(1) - g.r(0);
    const double h2 = g.r(2) - g.r(1);
    EdgeRow row;
    row.c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) + w;
    row.c1 = (h1 + h2) / (h1 * h2);
    row.c2 = -h1 / (h2 * (h1 + h2));
    row.rhs = 0.0;
    return row;
}

EdgeRow robin_row_hi(const RadialGrid& g, double w) {
    const std::size_t m = g.size();
    const double h1 = g.r(m - 1) - g.r(m - 2);
    const double h2 = g.r(m - 2) - g.r(m - 3);
    EdgeRow row;
    row.c0 = (2.0 * h1 + h2) / (h1 * (h1 + h2)) + w;
    row.c1 = -(h1 + h2) / (h1 * h2);
    row.c2 = h1 / (h2 * (h1 + h2));
    row.rhs = 0.0;
    return row;
}

std::vector<double> solve_with_edge_rows(const TridiagonalSystem& sys, const EdgeRow& lo,
                                         const EdgeRow& hi) {
    const std::size_t m = sys.size();
    if (m < 4) throw std::invalid_argument("edge rows: need at least 4 nodes");

    const bool decoupled = sys.sup[1] == 0.0 && sys.sub[m - 2] == 0.0;
    if (decoupled) {
        // Interior rows do not touch the boundary unknowns (e.g. no diffusion):
        // solve them on their own, then read the boundary values off the edge rows.
        if (sys.sub[1] != 0.0 || sys.sup[m - 2] != 0.0)
            throw std::logic_error("edge rows: one-sided coupling in interior rows");
        TridiagonalSystem inner;
        const std::size_t mi = m - 2;
        inner.sub.assign(mi, 0.0);
        inner.diag.assign(mi, 0.0);
        inner.sup.assign(mi, 0.0);
        inner.rhs.assign(mi, 0.0);
        for (std::size_t i = 0; i < mi; ++i) {
            inner.sub[i] = i > 0 ? sys.sub[i + 1] : 0.0;
            inner.diag[i] = sys.diag[i + 1];
            inner.sup[i] = i + 1 < mi ? sys.sup[i + 1] : 0.0;
            inner.rhs[i] = sys.rhs[i + 1];
        }
        std::vector<double> xi = inner.solve();
        std::vector<double> x(m);
        for (std::size_t i = 0; i < mi; ++i) x[i + 1] = xi[i];
        if (lo.c0 == 0.0 || hi.c0 == 0.0)
            throw std::runtime_error("edge rows: degenerate boundary row");
        x[0] = (lo.rhs - lo.c1 * x[1] - lo.c2 * x[2]) / lo.c0;
        x[m - 1] = (hi.rhs - hi.c1 * x[m - 2] - hi.c2 * x[m - 3]) / hi.c0;
        return x;
    }

    if (sys.sup[1] == 0.0 || sys.sub[m - 2] == 0.0)
        throw std::logic_error("edge rows: inconsistent interior coupling");

    TridiagonalSystem full = sys;
    {
        const double f = lo.c2 / sys.sup[1];
        full.diag[0] = lo.c0 - f * sys.sub[1];
        full.sup[0] = lo.c1 - f * sys.diag[1];
        full.rhs[0] = lo.rhs - f * sys.rhs[1];
        full.sub[0] = 0.0;
    }
    {
        const double f = hi.c2 / sys.sub[m - 2];
        full.diag[m - 1] = hi.c0 - f * sys.sup[m - 2];
        full.sub[m - 1] = hi.c1 - f * sys.diag[m - 2];
        full.rhs[m - 1] = hi.rhs - f * sys.rhs[m - 2];
        full.sup[m - 1] = 0.0;
    }
    return full.solve();
}

std::vector<double> trapezoid_weights(const RadialGrid& g) {
    const std::size_t m = g.size();
    std::vector<double> w(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double h = g.spacing(i);
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

}  // namespace rks
