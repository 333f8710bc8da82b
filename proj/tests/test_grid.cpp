#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rkslab/field.hpp"
#include "rkslab/grid.hpp"
#include "rkslab/params.hpp"

using namespace rks;

TEST_CASE("uniform grid nodes, spacing, endpoints") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 11);
    CHECK(g->size() == 11);
    CHECK(g->a() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g->b() == doctest::Approx(2.0).epsilon(1e-15));
    for (std::size_t i = 0; i < 11; ++i)
        CHECK(g->r(i) == doctest::Approx(1.0 + 0.1 * double(i)).epsilon(1e-14));
    CHECK(g->min_spacing() == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(g->max_spacing() == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(g->kind() == GridKind::Uniform);
}

TEST_CASE("uniform grid rejects degenerate inputs") {
    CHECK_THROWS_AS(RadialGrid::uniform(1.0, 2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::uniform(2.0, 1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::uniform(1.0, 1.0, 11), std::invalid_argument);
}

TEST_CASE("boundary-graded grid: endpoints exact, symmetric, monotone, graded") {
    const double ratio = 4.0;
    const auto g = RadialGrid::boundary_graded(1.0, 2.0, 41, ratio);
    CHECK(g->size() == 41);
    CHECK(g->a() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g->b() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g->kind() == GridKind::BoundaryGraded);
    CHECK(g->grading_ratio() == doctest::Approx(ratio));

    const std::size_t m = g->size();
    for (std::size_t i = 0; i + 1 < m; ++i) CHECK(g->spacing(i) > 0.0);
    // mirror symmetry of the spacing sequence
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double left = g->spacing(i);
        const double right = g->spacing(m - 2 - i);
        CHECK(left == doctest::Approx(right).epsilon(1e-10));
    }
    // central interval about `ratio` times wider than the endpoint interval
    double hmid = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) hmid = std::max(hmid, g->spacing(i));
    CHECK(hmid / g->spacing(0) == doctest::Approx(ratio).epsilon(0.05));
    // finer near boundaries than the uniform grid of the same node count
    CHECK(g->min_spacing() < 1.0 / 40.0);
}

TEST_CASE("boundary-graded grid rejects ratio <= 1") {
    CHECK_THROWS_AS(RadialGrid::boundary_graded(1.0, 2.0, 41, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::boundary_graded(1.0, 2.0, 41, 0.5), std::invalid_argument);
}

TEST_CASE("make_grid dispatch and kind parsing") {
    CHECK(make_grid(1.0, 2.0, 21, GridKind::Uniform)->kind() == GridKind::Uniform);
    CHECK(make_grid(1.0, 2.0, 21, GridKind::BoundaryGraded, 3.0)->kind() ==
          GridKind::BoundaryGraded);
    CHECK(grid_kind_from_string("uniform") == GridKind::Uniform);
    CHECK(grid_kind_from_string("graded") == GridKind::BoundaryGraded);
    CHECK_THROWS_AS(grid_kind_from_string("hexagonal"), std::invalid_argument);
}

TEST_CASE("same_nodes compares geometry, not identity") {
    const auto g1 = RadialGrid::uniform(1.0, 2.0, 11);
    const auto g2 = RadialGrid::uniform(1.0, 2.0, 11);
    const auto g3 = RadialGrid::uniform(1.0, 2.0, 12);
    CHECK(g1->same_nodes(*g2));
    CHECK_FALSE(g1->same_nodes(*g3));
}

TEST_CASE("scalar field sampling and reductions") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 11);
    const ScalarField f = ScalarField::sample(g, [](double r) { return r * r; });
    CHECK(f.size() == 11);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[10] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(f.min_value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.max_value() == doctest::Approx(4.0).epsilon(1e-15));

    ScalarField h = ScalarField::sample(g, [](double r) { return -r; });
    CHECK(h.max_abs() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(h.all_finite());
    h[3] = std::nan("");
    CHECK_FALSE(h.all_finite());
}

TEST_CASE("field constructors validate their inputs") {
    const auto g = RadialGrid::uniform(1.0, 2.0, 5);
    CHECK_THROWS_AS(ScalarField(nullptr), std::invalid_argument);
    CHECK_THROWS_AS(ScalarField(g, std::vector<double>(4, 0.0)), std::invalid_argument);
    const ScalarField zero(g);
    CHECK(zero.size() == 5);
    CHECK(zero.max_abs() == 0.0);
}

TEST_CASE("require_same_grid accepts equal nodes, rejects different ones") {
    const auto g1 = RadialGrid::uniform(1.0, 2.0, 11);
    const auto g2 = RadialGrid::uniform(1.0, 2.0, 11);
    const auto g3 = RadialGrid::uniform(1.0, 2.0, 21);
    const ScalarField f1(g1), f2(g2), f3(g3);
    CHECK_NOTHROW(require_same_grid(f1, f2));
    CHECK_THROWS_AS(require_same_grid(f1, f3), std::invalid_argument);
}

TEST_CASE("model parameter validation") {
    ModelParams p;
    p.grid = RadialGrid::uniform(1.0, 2.0, 11);
    CHECK_NOTHROW(p.validate());

    ModelParams bad = p;
    bad.n = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.eps = -1e-3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.eps = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.u_bar = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.grid = nullptr;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("step control validation and dt override") {
    StepControls c;
    CHECK_NOTHROW(c.validate());
    ModelParams p;
    p.dt = 0.25;
    CHECK(c.effective_dt(p) == doctest::Approx(0.25));
    c.dt = 0.125;
    CHECK(c.effective_dt(p) == doctest::Approx(0.125));

    StepControls bad;
    bad.theta = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = StepControls{};
    bad.cfl_safety = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = StepControls{};
    bad.c_floor = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
