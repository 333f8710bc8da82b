#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rks {

/// Nonnegative scalar function of time, either a callable or a tabulated
/// piecewise-linear interpolant. Integration is exact for tabulated data and
/// adaptive Simpson for callables.
class TimeFunction {
public:
    static TimeFunction from_callable(std::function<double(double)> f);
    static TimeFunction tabulated(std::vector<double> t, std::vector<double> values);

    double operator()(double t) const;
    double integrate(double t0, double t1, double tol = 1e-12) const;
    bool is_tabulated() const { return !knots_t_.empty(); }

private:
    TimeFunction() = default;
    std::function<double(double)> f_;
    std::vector<double> knots_t_, knots_v_;
};

/// Data of the scalar comparison problem
///   y' <= gamma f1(t) + f2(t) y + C0 (y^2 + ... + y^k),  y(0) = 0,
/// on [0, T], with f1, f2 >= 0, C0 > 0, k >= 2.
struct LemmaInputs {
    int k = 2;
    double T = 1.0;
    double C0 = 1.0;
    double gamma = 0.0;
    TimeFunction f1 = TimeFunction::from_callable([](double) { return 1.0; });
    TimeFunction f2 = TimeFunction::from_callable([](double) { return 0.0; });

    void validate() const;
};

/// Smallness threshold on gamma:
///   gamma0 = min{ 1/(4(k-1) If1), 1/(8 T G (k-1)^2 If1) },
/// G = C0 (e^{If2})^{k-1}, If = Int_0^T f. Infinite when If1 = 0.
double gamma0(const LemmaInputs& in);

/// Certified bound valid for gamma <= gamma0:
///   y(t) <= e^{Int_0^t f2} * min{ 3, 3/(2 T (k-1) G), 12 (k-1) gamma Int_0^t f1 }.
/// Throws std::invalid_argument when gamma exceeds gamma0.
double bound_value(const LemmaInputs& in, double t);

/// Numerical solution of the extremal problem (inequality replaced by
/// equality) by RK4 with step doubling until two refinements agree to 1e-8.
struct ExtremalResult {
    std::vector<double> times;
    std::vector<double> values;
    bool blown_up = false;
    double blowup_time = 0.0;  // first time |y| exceeded the blow-up guard
    bool converged = false;
    int refinements = 0;
};

ExtremalResult integrate_extremal(const LemmaInputs& in);

/// One randomized dominance check: draw (k, T, C0, f1, f2) and gamma in
/// (0, gamma0] from the seed, integrate the extremal problem, and compare
/// max_t y(t) against the certified bound at the same times.
struct LemmaVerdict {
    std::uint64_t seed = 0;
    int k = 2;
    double T = 0.0, C0 = 0.0, gamma = 0.0, gamma0 = 0.0;
    double y_max = 0.0;         // max over time of the extremal solution
    double bound_at_ymax = 0.0; // certified bound at the time y attains its max
    double bound_min = 0.0;     // min over time of (bound - y), should be >= 0
    bool blown_up = false;
    bool pass = false;
};

LemmaVerdict verify_random_instance(std::uint64_t seed);

}  // namespace rks
