// quadrature.hpp - globally adaptive Gauss-Kronrod 7-15 integration.
//
// Works on double, complex or any small value type with zero init, +=, -,
// scalar multiply, and a norm_of overload. Oscillatory integrands are
// handled by seeding the interval list with enough panels to resolve the
// shortest phase period (the caller passes the count) and letting the
// worst-interval refinement do the rest.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lumen {

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(const std::complex<double>& v) { return std::abs(v); }

namespace qk15 {

// QUADPACK 15-point Kronrod rule with embedded 7-point Gauss rule.
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class T, class F>
void evaluate(const F& f, double a, double b, T& kronrod, double& error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    T fc = f(center);
    T gauss{};
    gauss += fc * wg[3];
    kronrod = fc * wgk[7];

    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        T lo = f(center - dx);
        T hi = f(center + dx);
        T sum = lo + hi;
        kronrod += sum * wgk[j];
        if (j % 2 == 1) gauss += sum * wg[j / 2];
    }
    kronrod = kronrod * half;
    gauss = gauss * half;
    error = norm_of(kronrod - gauss);
}

}  // namespace qk15

struct QuadratureOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int initial_panels = 1;
    int max_panels = 20000;
    bool throw_on_failure = true;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

template <class T, class F>
QuadratureResult<T> integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
    if (!(b > a)) {
        if (a == b) return {T{}, 0.0, 0, true};
        throw std::invalid_argument("integrate: bad interval");
    }

    struct Panel {
        double a, b, error;
        T value;
        bool operator<(const Panel& o) const { return error < o.error; }
    };

    std::priority_queue<Panel> panels;
    T total{};
    double total_error = 0.0;

    const int n0 = std::max(1, opt.initial_panels);
    const double w = (b - a) / n0;
    for (int i = 0; i < n0; ++i) {
        Panel p;
        p.a = a + i * w;
        p.b = (i == n0 - 1) ? b : a + (i + 1) * w;
        qk15::evaluate(f, p.a, p.b, p.value, p.error);
        total += p.value;
        total_error += p.error;
        panels.push(p);
    }

    int count = n0;
    auto tolerance = [&]() { return std::max(opt.abs_tol, opt.rel_tol * norm_of(total)); };

    while (total_error > tolerance() && count < opt.max_panels) {
        Panel worst = panels.top();
        panels.pop();
        total += worst.value * (-1.0);
        total_error -= worst.error;

        const double mid = 0.5 * (worst.a + worst.b);
        for (int half = 0; half < 2; ++half) {
            Panel p;
            p.a = half == 0 ? worst.a : mid;
            p.b = half == 0 ? mid : worst.b;
            qk15::evaluate(f, p.a, p.b, p.value, p.error);
            total += p.value;
            total_error += p.error;
            panels.push(p);
        }
        ++count;
    }

    QuadratureResult<T> r;
    r.value = total;
    r.error = total_error;
    r.panels = count;
    r.converged = total_error <= tolerance();
    if (!r.converged && opt.throw_on_failure)
        throw std::runtime_error("integrate: requested accuracy not reached");
    return r;
}

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_nodes(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_nodes: order must be positive");
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

// Semi-infinite integral of f over [a, inf) via the map r = a / u, u in (0, 1].
// Requires a > 0 and an integrand decaying faster than 1/r^2.
template <class T, class F>
QuadratureResult<T> integrate_to_infinity(const F& f, double a, const QuadratureOptions& opt = {}) {
    if (!(a > 0.0)) throw std::invalid_argument("integrate_to_infinity: lower bound must be positive");
    auto mapped = [&](double u) {
        const double r = a / u;
        return f(r) * (r / u);
    };
    return integrate<T>(mapped, 0.0, 1.0, opt);
}

}  // namespace lumen
