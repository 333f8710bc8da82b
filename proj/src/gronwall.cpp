#include "rkslab/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace rks {

namespace {

double simpson(const std::function<double(double)>& f, double a, double m, double b, double fa,
               double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, lm, m, fa, flm, fm);
    const double right = simpson(f, m, rm, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TimeFunction TimeFunction::from_callable(std::function<double(double)> f) {
    if (!f) throw std::invalid_argument("time function: null callable");
    TimeFunction tf;
    tf.f_ = std::move(f);
    return tf;
}

TimeFunction TimeFunction::tabulated(std::vector<double> t, std::vector<double> values) {
    if (t.size() != values.size() || t.size() < 2)
        throw std::invalid_argument("time function: need >= 2 matched knots");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("time function: knots must be strictly increasing");
    TimeFunction tf;
    tf.knots_t_ = std::move(t);
    tf.knots_v_ = std::move(values);
    return tf;
}

double TimeFunction::operator()(double t) const {
    if (knots_t_.empty()) return f_(t);
    if (t <= knots_t_.front()) return knots_v_.front();
    if (t >= knots_t_.back()) return knots_v_.back();
    const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - knots_t_.begin());
    const double t0 = knots_t_[hi - 1], t1 = knots_t_[hi];
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * knots_v_[hi - 1] + w * knots_v_[hi];
}

double TimeFunction::integrate(double t0, double t1, double tol) const {
    if (t0 > t1) return -integrate(t1, t0, tol);
    if (t0 == t1) return 0.0;
    if (knots_t_.empty()) {
        const double m = 0.5 * (t0 + t1);
        const double fa = f_(t0), fm = f_(m), fb = f_(t1);
        const double whole = simpson(f_, t0, m, t1, fa, fm, fb);
        return adaptive_simpson(f_, t0, t1, fa, fm, fb, whole, tol, 28);
    }
    // Piecewise linear: trapezoid across every knot inside (t0, t1) is exact.
    std::vector<double> pts{t0};
    for (double k : knots_t_)
        if (k > t0 && k < t1) pts.push_back(k);
    pts.push_back(t1);
    double acc = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        acc += 0.5 * ((*this)(pts[i - 1]) + (*this)(pts[i])) * (pts[i] - pts[i - 1]);
    return acc;
}

void LemmaInputs::validate() const {
    if (k < 2) throw std::invalid_argument("lemma: k must be >= 2");
    if (!(T > 0.0)) throw std::invalid_argument("lemma: T must be positive");
    if (!(C0 > 0.0)) throw std::invalid_argument("lemma: C0 must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("lemma: gamma must be >= 0");
    for (int i = 0; i <= 64; ++i) {
        const double t = T * static_cast<double>(i) / 64.0;
        if (f1(t) < 0.0 || f2(t) < 0.0)
            throw std::invalid_argument("lemma: f1 and f2 must be nonnegative");
    }
}

double gamma0(const LemmaInputs& in) {
    in.validate();
    const double If1 = in.f1.integrate(0.0, in.T);
    const double If2 = in.f2.integrate(0.0, in.T);
    if (If1 == 0.0) return std::numeric_limits<double>::infinity();
    const double km1 = static_cast<double>(in.k - 1);
    // log-space to keep the growth factor G = C0 e^{(k-1) If2} from overflowing
    const double lg1 = -std::log(4.0 * km1 * If1);
    const double lg2 = -(std::log(8.0 * in.T * km1 * km1 * If1) + std::log(in.C0) + km1 * If2);
    return std::exp(std::min(lg1, lg2));
}

double bound_value(const LemmaInputs& in, double t) {
    in.validate();
    if (t < 0.0 || t > in.T) throw std::invalid_argument("bound: t outside [0, T]");
    const double g0 = gamma0(in);
    if (in.gamma > g0) throw std::invalid_argument("bound: gamma exceeds gamma0");
    const double km1 = static_cast<double>(in.k - 1);
    const double If2T = in.f2.integrate(0.0, in.T);
    const double lnG = std::log(in.C0) + km1 * If2T;
    const double If1t = in.f1.integrate(0.0, t);
    const double If2t = in.f2.integrate(0.0, t);
    // min of three branches evaluated on logarithms; If1t or gamma equal to 0
    // produce -inf there and a clean 0 after exponentiation.
    const double b1 = std::log(3.0);
    const double b2 = std::log(3.0 / (2.0 * in.T * km1)) - lnG;
    const double b3 = std::log(12.0 * km1) + std::log(in.gamma) + std::log(If1t);
    return std::exp(If2t + std::min({b1, b2, b3}));
}

namespace {

struct RawSolution {
    std::vector<double> times, values;
    bool blown_up = false;
    double blowup_time = 0.0;
};

RawSolution rk4_solve(const LemmaInputs& in, std::size_t N) {
    const double blowup_guard = 1e8;
    auto rhs = [&](double t, double y) {
        double poly = 0.0, pw = y * y;
        for (int j = 2; j <= in.k; ++j) {
            poly += pw;
            pw *= y;
        }
        return in.gamma * in.f1(t) + in.f2(t) * y + in.C0 * poly;
    };
    RawSolution sol;
    sol.times.reserve(N + 1);
    sol.values.reserve(N + 1);
    const double h = in.T / static_cast<double>(N);
    double y = 0.0;
    sol.times.push_back(0.0);
    sol.values.push_back(0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double t = h * static_cast<double>(i);
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_new = h * static_cast<double>(i + 1);
        if (!std::isfinite(y) || std::abs(y) > blowup_guard) {
            sol.blown_up = true;
            sol.blowup_time = t_new;
            return sol;
        }
        sol.times.push_back(t_new);
        sol.values.push_back(y);
    }
    return sol;
}

}  // namespace

ExtremalResult integrate_extremal(const LemmaInputs& in) {
    in.validate();
    const double rtol = 1e-11;
    std::size_t N = 64;
    RawSolution coarse = rk4_solve(in, N);
    ExtremalResult out;
    for (int ref = 1; ref <= 16; ++ref) {
        const std::size_t N2 = 2 * N;
        RawSolution fine = rk4_solve(in, N2);
        out.refinements = ref;
        if (coarse.blown_up && fine.blown_up) {
            const double agree = std::abs(coarse.blowup_time - fine.blowup_time);
            if (agree <= 1e-4 * in.T) {
                out.blown_up = true;
                out.blowup_time = fine.blowup_time;
                out.times = std::move(fine.times);
                out.values = std::move(fine.values);
                out.converged = true;
                return out;
            }
        } else if (!coarse.blown_up && !fine.blown_up) {
            double worst = 0.0;
            for (std::size_t i = 0; i < coarse.values.size(); ++i) {
                const double d = std::abs(fine.values[2 * i] - coarse.values[i]);
                worst = std::max(worst, d / (1.0 + std::abs(fine.values[2 * i])));
            }
            if (worst <= rtol) {
                out.times = std::move(fine.times);
                out.values = std::move(fine.values);
                out.converged = true;
                return out;
            }
        }
        coarse = std::move(fine);
        N = N2;
    }
    out.blown_up = coarse.blown_up;
    out.blowup_time = coarse.blowup_time;
    out.times = std::move(coarse.times);
    out.values = std::move(coarse.values);
    out.converged = false;
    return out;
}

LemmaVerdict verify_random_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LemmaInputs in;
    in.k = 2 + static_cast<int>(rng() % 4);
    in.T = 0.5 + 1.5 * uniform01(rng);
    in.C0 = 1.0 + 2.0 * (1.0 - uniform01(rng));
    auto draw_knots = [&](double T) {
        std::vector<double> t{0.0, 0.25 * T, 0.5 * T, 0.75 * T, T};
        std::vector<double> v(5);
        for (double& x : v) x = 1.5 * uniform01(rng);
        return TimeFunction::tabulated(std::move(t), std::move(v));
    };
    in.f1 = draw_knots(in.T);
    in.f2 = draw_knots(in.T);
    const double g0 = gamma0(in);
    in.gamma = std::isfinite(g0) ? (1.0 - uniform01(rng)) * g0 : 1.0;

    LemmaVerdict verdict;
    verdict.seed = seed;
    verdict.k = in.k;
    verdict.T = in.T;
    verdict.C0 = in.C0;
    verdict.gamma = in.gamma;
    verdict.gamma0 = g0;

    const ExtremalResult sol = integrate_extremal(in);
    verdict.blown_up = sol.blown_up;
    double margin = std::numeric_limits<double>::infinity();
    bool dominated = true;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        const double b = bound_value(in, sol.times[i]);
        if (sol.values[i] >= verdict.y_max) {
            verdict.y_max = sol.values[i];
            verdict.bound_at_ymax = b;
        }
        margin = std::min(margin, b - sol.values[i]);
        if (sol.values[i] > b + 1e-9 * (1.0 + std::abs(b))) dominated = false;
    }
    verdict.bound_min = margin;
    verdict.pass = dominated && !sol.blown_up && sol.converged;
    return verdict;
}

}  // namespace rks
