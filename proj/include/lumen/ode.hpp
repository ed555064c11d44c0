// ode.hpp - adaptive Dormand-Prince 5(4) integrator on complex state vectors.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lumen {

struct OdeOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step = 0.0;  // 0 = auto
    double min_step = 1e-13;    // relative to the span being integrated
    long max_steps = 50'000'000;
};

struct OdeStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
};

// Integrates dy/dt = f(t, y, dydt) in place from t0 to t1, invoking
// sample(t, y) at t0, t1 and every accepted step in between when provided.
class DormandPrince5 {
  public:
    using State = std::vector<std::complex<double>>;
    using Rhs = std::function<void(double, const State&, State&)>;

    explicit DormandPrince5(Rhs rhs, OdeOptions opt = {}) : rhs_(std::move(rhs)), opt_(opt) {}

    const OdeStats& stats() const { return stats_; }

    void integrate(double t0, double t1, State& y,
                   const std::function<void(double, const State&)>& sample = nullptr) {
        if (t1 <= t0) throw std::invalid_argument("DormandPrince5: t1 must exceed t0");
        const std::size_t n = y.size();
        for (auto& k : k_) k.assign(n, 0.0);
        y_try_.assign(n, 0.0);
        y_err_.assign(n, 0.0);

        double t = t0;
        if (sample) sample(t, y);

        rhs_(t, y, k_[0]);
        ++stats_.rhs_evaluations;

        double h = opt_.initial_step > 0.0 ? opt_.initial_step : (t1 - t0) * 1e-4;
        const double h_floor = opt_.min_step * (t1 - t0);

        while (t < t1) {
            if (stats_.steps + stats_.rejected >= opt_.max_steps)
                throw std::runtime_error("DormandPrince5: step budget exhausted");
            h = std::min(h, t1 - t);
            if (h < h_floor) throw std::runtime_error("DormandPrince5: step size underflow");

            const double err = attempt_step(t, h, y);
            if (err <= 1.0) {
                t += h;
                y.swap(y_try_);
                k_[0].swap(k_[6]);  // FSAL
                ++stats_.steps;
                if (sample) sample(t, y);
            } else {
                ++stats_.rejected;
            }
            const double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(factor, 0.2, 5.0);
        }
    }

  private:
    // Returns the normalized error of the trial step; fills y_try_ and k_[6].
    double attempt_step(double t, double h, const State& y) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                                e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                                e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        const std::size_t n = y.size();
        auto stage = [&](int ki, double tc, auto&&... terms) {
            for (std::size_t i = 0; i < n; ++i) y_try_[i] = y[i] + h * (... + terms(i));
            rhs_(t + tc * h, y_try_, k_[ki]);
            ++stats_.rhs_evaluations;
        };

        stage(1, c2, [&](std::size_t i) { return a21 * k_[0][i]; });
        stage(2, c3, [&](std::size_t i) { return a31 * k_[0][i]; },
              [&](std::size_t i) { return a32 * k_[1][i]; });
        stage(3, c4, [&](std::size_t i) { return a41 * k_[0][i]; },
              [&](std::size_t i) { return a42 * k_[1][i]; },
              [&](std::size_t i) { return a43 * k_[2][i]; });
        stage(4, c5, [&](std::size_t i) { return a51 * k_[0][i]; },
              [&](std::size_t i) { return a52 * k_[1][i]; },
              [&](std::size_t i) { return a53 * k_[2][i]; },
              [&](std::size_t i) { return a54 * k_[3][i]; });
        stage(5, 1.0, [&](std::size_t i) { return a61 * k_[0][i]; },
              [&](std::size_t i) { return a62 * k_[1][i]; },
              [&](std::size_t i) { return a63 * k_[2][i]; },
              [&](std::size_t i) { return a64 * k_[3][i]; },
              [&](std::size_t i) { return a65 * k_[4][i]; });

        for (std::size_t i = 0; i < n; ++i)
            y_try_[i] = y[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] +
                                    b5 * k_[4][i] + b6 * k_[5][i]);
        rhs_(t + h, y_try_, k_[6]);
        ++stats_.rhs_evaluations;

        double err2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::complex<double> e = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                                                e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
            const double scale =
                opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y[i]), std::abs(y_try_[i]));
            const double r = std::abs(e) / scale;
            err2 += r * r;
        }
        return std::sqrt(err2 / static_cast<double>(n));
    }

    Rhs rhs_;
    OdeOptions opt_;
    OdeStats stats_;
    State k_[7];
    State y_try_, y_err_;
};

}  // namespace lumen
