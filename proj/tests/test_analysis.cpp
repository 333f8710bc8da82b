#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rkslab/analysis.hpp"
#include "rkslab/presets.hpp"
#include "rkslab/solver.hpp"

using namespace rks;

TEST_CASE("weighted L2 with the radial measure: exact on flat data") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 41);
    const ScalarField one = ScalarField::sample(g, [](double) { return 1.0; });
    // weight^2 = r integrates to 3/2 on [1,2]; trapezoid is exact on linears
    CHECK(weighted_l2(one, WeightKind::RadialMeasure, 2) ==
          doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));
}

TEST_CASE("weighted L2 with the vanishing collar weight matches the quartic integral") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 101);
    const ScalarField one = ScalarField::sample(g, [](double) { return 1.0; });
    const double val = weighted_l2(one, WeightKind::AnnulusQuadratic);
    // integral of (r-1)^2 (2-r)^2 over [1,2] is 1/30
    CHECK(val * val == doctest::Approx(1.0 / 30.0).epsilon(1e-3));
    // the weight kills boundary values: a field supported on the two end
    // nodes has zero weighted norm
    ScalarField ends(g);
    ends[0] = 100.0;
    ends[g->size() - 1] = -100.0;
    CHECK(weighted_l2(ends, WeightKind::AnnulusQuadratic) == 0.0);
}

TEST_CASE("sup norm snaps the window to grid nodes") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 11);  // h = 0.1
    const ScalarField f = ScalarField::sample(g, [](double r) { return r; });
    CHECK(sup_norm(f, 1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    // 1.24 snaps to node 1.2, 1.76 snaps to node 1.8
    CHECK(sup_norm(f, 1.24, 1.76) == doctest::Approx(1.8).epsilon(1e-13));
    CHECK_THROWS_AS(sup_norm(f, 1.9, 1.1), std::invalid_argument);
}

TEST_CASE("entropy of the flat state is zero; kinetic part is quadratic") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 81);
    const ScalarField u = ScalarField::sample(g, [](double) { return 1.0; });
    const ScalarField v0(g);
    const EntropyValue flat = entropy_functional(u, v0, 1.0, 2);
    CHECK(std::abs(flat.E) <= 1e-14);
    CHECK(std::abs(flat.D) <= 1e-14);
    CHECK(flat.floored_nodes == 0);

    const ScalarField v1 = ScalarField::sample(g, [](double) { return 1.0; });
    const EntropyValue kin = entropy_functional(u, v1, 1.0, 2);
    // E = 1/2 int r dr = 3/4 on [1,2] (trapezoid exact on linears)
    CHECK(kin.E == doctest::Approx(0.75).epsilon(1e-13));

    ScalarField u_low = u;
    u_low[40] = 0.0;  // forces the positivity clamp inside the logarithm
    const EntropyValue clamped = entropy_functional(u_low, v0, 1.0, 2);
    CHECK(clamped.floored_nodes >= 1);

    CHECK_THROWS_AS(entropy_functional(u, v0, 0.0, 2), std::invalid_argument);
}

TEST_CASE("plain Sobolev norms: flat field and ordering") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 41);
    const ScalarField one = ScalarField::sample(g, [](double) { return 1.0; });
    CHECK(discrete_sobolev(one, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(discrete_sobolev(one, 1) == doctest::Approx(1.0).epsilon(1e-12));

    const ScalarField f = ScalarField::sample(g, [](double r) { return std::sin(3.0 * r); });
    const double s0 = discrete_sobolev(f, 0);
    const double s1 = discrete_sobolev(f, 1);
    const double s2 = discrete_sobolev(f, 2);
    CHECK(s0 < s1);
    CHECK(s1 < s2);
    CHECK_THROWS_AS(discrete_sobolev(f, 3), std::invalid_argument);
}

TEST_CASE("admissible-diffusivity threshold formula hits the closed-form anchor") {
    // I = 2, T = 1, C0 = 1: second branch wins and gives (64 e^2)^{-2}
    const double le = log_eps0_from_integral(2.0, 1.0, 1.0);
    const double expect = std::pow(64.0 * std::exp(2.0), -2.0);
    CHECK(std::exp(le) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(std::exp(le) - 4.4716e-6) / 4.4716e-6 < 1e-4);

    // first branch wins for tiny C0 I
    const double le1 = log_eps0_from_integral(0.001, 1.0, 0.001);
    CHECK(le1 == doctest::Approx(-2.0 * std::log(8.0 * 0.001 * 0.001)).epsilon(1e-12));

    CHECK_THROWS_AS(log_eps0_from_integral(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(log_eps0_from_integral(1.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("threshold series on a flat limit run stays finite and consistent") {
    ModelParams p;
    p.eps = 0.0;
    p.T = 0.1;
    p.dt = 1e-3;
    p.grid = RadialGrid::uniform(1.0, 2.0, 51);
    const auto init = initial_data_presets("constant", p);
    StepControls ctrl;
    ctrl.save_every = 10;
    const Trajectory traj = solve(SolveKind::Limit, init.first, init.second, p, ctrl);

    const FSeries F = compute_F_and_eps0(traj, 1.0);
    REQUIRE(F.times.size() == traj.samples());
    for (double fv : F.values) {
        CHECK(std::isfinite(fv));
        CHECK(fv >= 1.0);  // the constant offset term keeps F >= 1
    }
    CHECK(F.integral > 0.0);
    CHECK(F.eps0 > 0.0);
    CHECK(std::exp(F.log_eps0) == doctest::Approx(F.eps0).epsilon(1e-12));
    CHECK(F.log_eps0 == doctest::Approx(log_eps0_from_integral(F.integral, p.T, 1.0))
                            .epsilon(1e-12));

    // flat data: boundary derivative of u is identically zero
    const FluxSeries flux = boundary_flux_integral(traj);
    CHECK(flux.max_abs_a <= 1e-12);
    CHECK(flux.max_abs_b <= 1e-12);
    REQUIRE(flux.times.size() == traj.samples());
    CHECK(flux.I_a.front() == 0.0);
}

TEST_CASE("layer detector: identical runs have zero error, mismatched grids throw") {
    ModelParams p;
    p.eps = 0.0;
    p.T = 0.05;
    p.dt = 1e-3;
    p.grid = RadialGrid::uniform(1.0, 2.0, 51);
    const auto init = initial_data_presets("bump", p);
    const Trajectory tl = solve(SolveKind::Limit, init.first, init.second, p, {});

    const LayerReport same = detect_layer(tl, tl, 0.1, 1e-2);
    CHECK(same.full_error == 0.0);
    CHECK(same.interior_error == 0.0);
    CHECK_FALSE(same.layer);
    CHECK(same.delta == doctest::Approx(0.1));

    CHECK_THROWS_AS(detect_layer(tl, tl, 0.0, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(detect_layer(tl, tl, 0.6, 1e-2), std::invalid_argument);

    ModelParams p2 = p;
    p2.dt = 2e-3;  // different sample times
    const Trajectory tl2 = solve(SolveKind::Limit, init.first, init.second, p2, {});
    CHECK_THROWS_AS(detect_layer(tl2, tl, 0.1, 1e-2), std::invalid_argument);
}

TEST_CASE("rate fitting recovers an exact power law and validates input") {
    std::vector<double> eps = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::vector<double> errs;
    for (double e : eps) errs.push_back(3.0 * std::pow(e, 0.25));
    const RateFit fit = fit_rate(eps, errs);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.rms_residual <= 1e-12);

    CHECK_THROWS_AS(fit_rate({1e-2, 5e-3}, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({5e-3, 1e-2, 2e-2}, {1.0, 0.5, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({1e-2, 5e-3, 2.5e-3}, {1.0, -0.5, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({1e-2, 5e-3, 2.5e-3}, {1.0, 0.5}), std::invalid_argument);
}
