#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rkslab/gronwall.hpp"

using namespace rks;

namespace {

LemmaInputs ones_inputs(int k, double T, double C0, double gamma) {
    LemmaInputs in;
    in.k = k;
    in.T = T;
    in.C0 = C0;
    in.gamma = gamma;
    in.f1 = TimeFunction::from_callable([](double) { return 1.0; });
    in.f2 = TimeFunction::from_callable([](double) { return 1.0; });
    return in;
}

}  // namespace

TEST_CASE("time functions: tabulated evaluation and exact integration") {
    const TimeFunction f = TimeFunction::tabulated({0.0, 1.0, 3.0}, {2.0, 4.0, 0.0});
    CHECK(f(0.0) == doctest::Approx(2.0));
    CHECK(f(0.5) == doctest::Approx(3.0));
    CHECK(f(2.0) == doctest::Approx(2.0));
    CHECK(f.is_tabulated());
    // piecewise-linear integral: trapezoid areas 3 + 4
    CHECK(f.integrate(0.0, 3.0) == doctest::Approx(7.0).epsilon(1e-13));
    CHECK(f.integrate(0.5, 1.0) == doctest::Approx(1.75).epsilon(1e-13));

    const TimeFunction s = TimeFunction::from_callable([](double t) { return std::sin(t); });
    const double pi = std::acos(-1.0);
    CHECK(s.integrate(0.0, pi) == doctest::Approx(2.0).epsilon(1e-10));

    CHECK_THROWS_AS(TimeFunction::tabulated({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeFunction::tabulated({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeFunction::from_callable(nullptr), std::invalid_argument);
}

TEST_CASE("input validation for the comparison problem") {
    CHECK_NOTHROW(ones_inputs(2, 1.0, 1.0, 0.0).validate());
    CHECK_THROWS_AS(ones_inputs(1, 1.0, 1.0, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ones_inputs(2, 0.0, 1.0, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ones_inputs(2, 1.0, 0.0, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ones_inputs(2, 1.0, 1.0, -1.0).validate(), std::invalid_argument);

    LemmaInputs neg = ones_inputs(2, 1.0, 1.0, 0.0);
    neg.f2 = TimeFunction::from_callable([](double) { return -1.0; });
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}

TEST_CASE("smallness threshold: closed-form anchor and degenerate source") {
    // k = 3, C0 = 2, f1 = f2 = 1 on [0, 1]: G = 2 e^2 and
    // gamma0 = min{1/8, 1/(64 e^2)} = 1/(64 e^2)
    const double g0 = gamma0(ones_inputs(3, 1.0, 2.0, 0.0));
    const double expect = 1.0 / (64.0 * std::exp(2.0));
    CHECK(std::abs(g0 - expect) <= 1e-12 * expect);
    CHECK(g0 == doctest::Approx(2.1146e-3).epsilon(1e-4));

    LemmaInputs zero_f1 = ones_inputs(2, 1.0, 1.0, 0.0);
    zero_f1.f1 = TimeFunction::from_callable([](double) { return 0.0; });
    CHECK(std::isinf(gamma0(zero_f1)));
}

TEST_CASE("certified bound: zero at t = 0, monotone, rejects large gamma") {
    LemmaInputs in = ones_inputs(2, 1.0, 1.0, 0.0);
    in.gamma = 0.5 * gamma0(in);
    CHECK(bound_value(in, 0.0) == 0.0);
    double prev = 0.0;
    for (double t : {0.1, 0.2, 0.5, 1.0}) {
        const double b = bound_value(in, t);
        CHECK(b >= prev);
        prev = b;
    }
    CHECK_THROWS_AS(bound_value(in, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(bound_value(in, 1.1), std::invalid_argument);

    LemmaInputs big = in;
    big.gamma = 2.0 * gamma0(in);
    CHECK_THROWS_AS(bound_value(big, 0.5), std::invalid_argument);
}

TEST_CASE("extremal problem with gamma = 0 stays at zero") {
    const LemmaInputs in = ones_inputs(2, 1.0, 1.0, 0.0);
    const ExtremalResult sol = integrate_extremal(in);
    CHECK(sol.converged);
    CHECK_FALSE(sol.blown_up);
    for (double y : sol.values) CHECK(std::abs(y) <= 1e-14);
}

TEST_CASE("quadratic case agrees with the closed-form solution") {
    // y' = gamma + y + y^2, y(0) = 0, with roots r12 of the right-hand side:
    // y(t) = (r1 - Q r2) / (1 - Q), Q = (r1/r2) e^{(r1 - r2) t}
    LemmaInputs in = ones_inputs(2, 1.0, 1.0, 0.0);
    in.gamma = 0.8 * gamma0(in);
    const ExtremalResult sol = integrate_extremal(in);
    REQUIRE(sol.converged);
    REQUIRE_FALSE(sol.blown_up);

    const double disc = std::sqrt(1.0 - 4.0 * in.gamma);
    const double r1 = (-1.0 + disc) / 2.0;
    const double r2 = (-1.0 - disc) / 2.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        const double q = (r1 / r2) * std::exp((r1 - r2) * sol.times[i]);
        const double exact = (r1 - q * r2) / (1.0 - q);
        worst = std::max(worst, std::abs(sol.values[i] - exact));
    }
    CHECK(worst <= 1e-10);

    // and the certified bound dominates it everywhere
    for (std::size_t i = 0; i < sol.times.size(); ++i)
        CHECK(sol.values[i] <= bound_value(in, sol.times[i]) + 1e-12);
}

TEST_CASE("super-threshold forcing blows up at the analytic time") {
    // y' = 100 + y + y^2 escapes to infinity at
    // t* = (pi/2 - atan(0.5/s)) / s with s = sqrt(99.75)
    LemmaInputs in = ones_inputs(2, 1.0, 1.0, 100.0);
    const ExtremalResult sol = integrate_extremal(in);
    CHECK(sol.blown_up);
    const double s = std::sqrt(99.75);
    const double t_star = (std::acos(-1.0) / 2.0 - std::atan(0.5 / s)) / s;
    CHECK(std::abs(sol.blowup_time - t_star) <= 5e-3);
}

TEST_CASE("randomized dominance checks are deterministic and pass") {
    const LemmaVerdict v1 = verify_random_instance(7);
    const LemmaVerdict v2 = verify_random_instance(7);
    CHECK(v1.seed == v2.seed);
    CHECK(v1.k == v2.k);
    CHECK(v1.T == v2.T);
    CHECK(v1.C0 == v2.C0);
    CHECK(v1.gamma == v2.gamma);
    CHECK(v1.y_max == v2.y_max);
    CHECK(v1.bound_min == v2.bound_min);
    CHECK(v1.pass == v2.pass);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const LemmaVerdict v = verify_random_instance(seed);
        CHECK(v.pass);
        CHECK(v.gamma <= v.gamma0);
        CHECK(v.bound_min >= 0.0);
        CHECK(v.y_max <= v.bound_at_ymax + 1e-12);
    }
}
