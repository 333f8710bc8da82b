#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rkslab/mms.hpp"
#include "rkslab/presets.hpp"
#include "rkslab/solver.hpp"

using namespace rks;

namespace {

ModelParams base_params(double eps, std::size_t m = 51) {
    ModelParams p;
    p.n = 2;
    p.eps = eps;
    p.u_bar = 1.0;
    p.v_bar1 = 0.0;
    p.v_bar2 = 0.0;
    p.T = 0.1;
    p.dt = 1e-3;
    p.grid = RadialGrid::uniform(1.0, 2.0, m);
    return p;
}

}  // namespace

TEST_CASE("step count and effective dt: T is hit exactly") {
    ModelParams p = base_params(0.0);
    p.T = 1.0;
    p.dt = 0.3;  // does not divide T; solver rounds to N = 3 equal steps
    const auto init = initial_data_presets("constant", p);
    const Trajectory traj = solve(SolveKind::Limit, init.first, init.second, p, {});
    CHECK(traj.dt_effective() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(traj.times().back() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(traj.diagnostics().time.size() == 4);  // t = 0 plus three steps
}

TEST_CASE("constant data is a fixed point of the transformed and limit steppers") {
    for (SolveKind kind : {SolveKind::Transformed, SolveKind::Limit}) {
        ModelParams p = base_params(kind == SolveKind::Transformed ? 1e-2 : 0.0);
        const auto init = initial_data_presets("constant", p);
        const Trajectory traj = solve(kind, init.first, init.second, p, {});
        const std::size_t last = traj.samples() - 1;
        for (std::size_t i = 0; i < p.grid->size(); ++i) {
            CHECK(std::abs(traj.u(last)[i] - 1.0) <= 1e-12);
            CHECK(std::abs(traj.v(last)[i]) <= 1e-12);
        }
    }
}

TEST_CASE("uniform chemical with flat density decays geometrically") {
    // With u = u_bar and c constant in r, the implicit diffusion does nothing
    // and the explicit consumption gives c_{k+1} = (1 - dt u_bar) c_k exactly.
    ModelParams p = base_params(1e-2);
    p.T = 0.1;
    p.dt = 0.025;  // exactly 4 steps
    const ScalarField u0 = ScalarField::sample(p.grid, [](double) { return 1.0; });
    const ScalarField c0 = ScalarField::sample(p.grid, [](double) { return 2.0; });
    const Trajectory traj = solve(SolveKind::Original, u0, c0, p, {});
    const double expected = 2.0 * std::pow(1.0 - 0.025, 4);
    const std::size_t last = traj.samples() - 1;
    for (std::size_t i = 0; i < p.grid->size(); ++i) {
        CHECK(traj.c(last)[i] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(traj.u(last)[i] - 1.0) <= 1e-12);
    }
    CHECK(traj.diagnostics().min_c.size() == traj.diagnostics().time.size());
}

TEST_CASE("boundary handling: v pinned when diffusive, free in the limit") {
    ModelParams p = base_params(1e-2);
    p.v_bar1 = 0.5;
    p.v_bar2 = -0.5;
    const auto init = initial_data_presets("mismatch-layer", p);
    const Trajectory diff = solve(SolveKind::Transformed, init.first, init.second, p, {});
    const std::size_t m = p.grid->size();
    for (std::size_t k = 0; k < diff.samples(); ++k) {
        CHECK(std::abs(diff.v(k)[0] - 0.5) <= 1e-10);
        CHECK(std::abs(diff.v(k)[m - 1] + 0.5) <= 1e-10);
        CHECK(std::abs(diff.u(k)[0] - 1.0) <= 1e-12);
        CHECK(std::abs(diff.u(k)[m - 1] - 1.0) <= 1e-12);
    }

    // limit runs with a nonflat u develop motion of v at the boundary
    ModelParams pl = base_params(0.0);
    pl.v_bar1 = 0.5;
    pl.v_bar2 = -0.5;
    const auto initl = initial_data_presets("bump", pl);
    const Trajectory lim = solve(SolveKind::Limit, initl.first, initl.second, pl, {});
    const std::size_t last = lim.samples() - 1;
    CHECK(std::abs(lim.v(last)[0] - 0.5) > 1e-4);
}

TEST_CASE("solve rejects inconsistent kind/eps combinations") {
    ModelParams p = base_params(0.0);
    const auto init = initial_data_presets("constant", p);
    CHECK_THROWS_AS(solve(SolveKind::Transformed, init.first, init.second, p, {}),
                    std::invalid_argument);
    ModelParams pd = base_params(1e-2);
    CHECK_THROWS_AS(solve(SolveKind::Limit, init.first, init.second, pd, {}),
                    std::invalid_argument);
}

TEST_CASE("solver reports blow-up through SolverError with a time stamp") {
    ModelParams p = base_params(1e-2);
    p.dt = 1e-2;
    const ScalarField u0 = ScalarField::sample(p.grid, [](double) { return 1.0; });
    const ScalarField v0 = ScalarField::sample(p.grid, [](double) { return 1e6; });
    try {
        solve(SolveKind::Transformed, u0, v0, p, {});
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.time() >= 0.0);
        CHECK(std::string(e.what()).size() > 0);
    }
}

TEST_CASE("save_every thins samples but never drops the final state") {
    ModelParams p = base_params(0.0);
    p.T = 0.1;
    p.dt = 5e-3;  // 20 steps
    StepControls ctrl;
    ctrl.save_every = 5;
    const auto init = initial_data_presets("bump", p);
    const Trajectory traj = solve(SolveKind::Limit, init.first, init.second, p, ctrl);
    CHECK(traj.samples() == 5);  // t = 0, .025, .05, .075, .1
    CHECK(traj.times().front() == 0.0);
    CHECK(traj.times().back() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(traj.diagnostics().time.size() == 21);
}

TEST_CASE("three-dimensional radial runs work end to end") {
    ModelParams p = base_params(1e-2);
    p.n = 3;
    const auto init = initial_data_presets("bump", p);
    const Trajectory traj = solve(SolveKind::Transformed, init.first, init.second, p, {});
    CHECK(traj.u(traj.samples() - 1).all_finite());
    CHECK(traj.v(traj.samples() - 1).all_finite());
}

TEST_CASE("trajectory accessors enforce the variable set") {
    ModelParams p = base_params(1e-2);
    const auto init = initial_data_presets("constant", p);
    const Trajectory tr = solve(SolveKind::Transformed, init.first, init.second, p, {});
    CHECK_NOTHROW(tr.v(0));
    CHECK_THROWS_AS(tr.c(0), std::logic_error);

    const ScalarField c0 = ScalarField::sample(p.grid, [](double) { return 1.0; });
    const Trajectory orr = solve(SolveKind::Original, init.first, c0, p, {});
    CHECK_NOTHROW(orr.c(0));
    CHECK_THROWS_AS(orr.v(0), std::logic_error);
}

TEST_CASE("solve kind round trips through strings") {
    CHECK(solve_kind_from_string("transformed") == SolveKind::Transformed);
    CHECK(solve_kind_from_string("limit") == SolveKind::Limit);
    CHECK(solve_kind_from_string("original") == SolveKind::Original);
    CHECK_THROWS_AS(solve_kind_from_string("implicit"), std::invalid_argument);
    CHECK(to_string(SolveKind::Limit) == "limit");
}

TEST_CASE("initial-data presets: formulas and boundary compatibility") {
    ModelParams p = base_params(1e-2);
    p.v_bar1 = 0.25;
    p.v_bar2 = -0.75;

    const auto flat = initial_data_presets("constant", p);
    for (std::size_t i = 0; i < p.grid->size(); ++i)
        CHECK(flat.first[i] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.second[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(flat.second[p.grid->size() - 1] == doctest::Approx(-0.75).epsilon(1e-15));

    const auto bump = initial_data_presets("bump", p);
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < p.grid->size(); ++i) {
        const double s = std::sin(pi * (p.grid->r(i) - 1.0));
        CHECK(bump.first[i] == doctest::Approx(1.0 + 0.5 * s * s).epsilon(1e-13));
    }
    CHECK(compatibility_mismatch(bump.first, bump.second, p, true) <= 1e-14);

    CHECK_THROWS_AS(initial_data_presets("vortex", p), std::invalid_argument);
    CHECK(preset_names().size() == 3);

    // deliberately incompatible boundary data is reported as a mismatch
    ModelParams q = p;
    q.v_bar1 = 5.0;
    CHECK(compatibility_mismatch(bump.first, bump.second, q, true) > 0.5);
}

TEST_CASE("manufactured cases drive the error to zero with refinement") {
    const mms::ManufacturedCase mc = mms::limit_case(2, 1.0, 2.0);
    const double e1 = mms::level_error(mc, RadialGrid::uniform(1.0, 2.0, 26), 1e-3, 0.1);
    const double e2 = mms::level_error(mc, RadialGrid::uniform(1.0, 2.0, 51), 2.5e-4, 0.1);
    CHECK(e1 > 0.0);
    CHECK(e2 < e1);
    CHECK(e1 / e2 > 2.5);  // about fourfold for a second-order stencil
}
