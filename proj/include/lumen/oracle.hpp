// oracle.hpp - brute-force validation paths that share no code with the
// analytic kernels: direct integration of the coupled mode equations on a
// discretized k-grid, an exponential-decay fit, and numeric reconstruction
// of the transverse field from the radial mode integral.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lumen/coupling.hpp"
#include "lumen/fields.hpp"
#include "lumen/geometry.hpp"
#include "lumen/kernels.hpp"
#include "lumen/ode.hpp"
#include "lumen/quadrature.hpp"
#include "lumen/source.hpp"
#include "lumen/transition.hpp"

namespace lumen {

// ---------------------------------------------------------------------------
// Mode grid: composite Gauss-Legendre radial nodes around resonance times a
// product angular rule (Gauss-Legendre in cos(theta), uniform in phi) with a
// fixed polarization pair per direction.
// ---------------------------------------------------------------------------

struct ModeGridOptions {
    double center = 1.0;      // kappa of resonance
    double half_width = 0.0;  // 0 = choose 40 * gamma_ratio
    int radial_panels = 40;
    int n_theta = 4;
    int n_phi = 4;

    static ModeGridOptions preset(const std::string& name) {
        ModeGridOptions o;
        if (name == "coarse") {
            o.radial_panels = 40;
        } else if (name == "fine") {
            o.radial_panels = 160;
        } else {
            throw std::invalid_argument("ModeGridOptions: unknown preset '" + name + "'");
        }
        return o;
    }
};

struct ModeGrid {
    struct Direction {
        Vec3 k_hat, eps1, eps2;
        double weight = 0.0;  // angular measure; all weights sum to 4 pi
    };

    std::vector<double> kappa;           // radial nodes
    std::vector<double> radial_weight;   // plain dk weights (no kappa^2)
    std::vector<Direction> directions;
    double center = 1.0, half_width = 0.0;

    std::size_t mode_count() const { return kappa.size() * directions.size() * 2; }

    double angular_weight_sum() const {
        double s = 0.0;
        for (const auto& d : directions) s += d.weight;
        return s;
    }

    static ModeGrid build(const ModeGridOptions& opt, double gamma_ratio) {
        ModeGrid g;
        g.center = opt.center;
        g.half_width = opt.half_width > 0.0 ? opt.half_width : 40.0 * gamma_ratio;
        if (g.half_width < 20.0 * gamma_ratio)
            throw std::invalid_argument("ModeGrid: radial window narrower than 20 gamma");
        const double lo = std::max(0.0, g.center - g.half_width);
        const double hi = g.center + g.half_width;

        // 4-point Gauss-Legendre per panel
        static constexpr double gl_x[2] = {0.3399810435848563, 0.8611363115940526};
        static constexpr double gl_w[2] = {0.6521451548625461, 0.3478548451374538};
        const int panels = std::max(1, opt.radial_panels);
        const double dw = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double c = lo + (p + 0.5) * dw;
            const double h = 0.5 * dw;
            for (int j = 0; j < 2; ++j) {
                for (double s : {-1.0, 1.0}) {
                    g.kappa.push_back(c + s * h * gl_x[j]);
                    g.radial_weight.push_back(h * gl_w[j]);
                }
            }
        }

        if (opt.n_theta < 1 || opt.n_phi < 1)
            throw std::invalid_argument("ModeGrid: angular rule needs at least one node");
        const auto [mu_nodes, mu_weights] = gauss_legendre_nodes(opt.n_theta);
        for (int it = 0; it < opt.n_theta; ++it) {
            const double mu = mu_nodes[it];
            const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            for (int ip = 0; ip < opt.n_phi; ++ip) {
                const double phi = 2.0 * pi * (ip + 0.5) / opt.n_phi;
                Direction d;
                d.k_hat = Vec3{st * std::cos(phi), st * std::sin(phi), mu};
                std::tie(d.eps1, d.eps2) = polarization_basis(d.k_hat);
                d.weight = mu_weights[it] * (2.0 * pi / opt.n_phi);
                g.directions.push_back(d);
            }
        }
        return g;
    }
};

// Dimensionless coupling amplitude of one mode. The overall strength is
// calibrated so the resonant golden-rule rate reproduces the configured
// gamma: eta = sqrt(3 gamma_ratio) / (4 pi). The kappa dependence follows
// the model: sqrt(kappa) (E.r), 1/sqrt(kappa) (A.p dipolar), and the
// momentum rolloff on top for the exact coupling.
inline complexd mode_coupling_internal(CouplingModel model, double kappa, const Vec3& eps,
                                       const Vec3c& mu_dir, double gamma_ratio,
                                       double a0_ratio) {
    if (!(kappa > 0.0)) throw std::invalid_argument("mode_coupling_internal: kappa must be positive");
    const double eta = std::sqrt(3.0 * gamma_ratio) / (4.0 * pi);
    double shape = 0.0;
    switch (model) {
        case CouplingModel::ErDipole: shape = std::sqrt(kappa); break;
        case CouplingModel::ApDipole: shape = 1.0 / std::sqrt(kappa); break;
        case CouplingModel::ApExact:
            shape = coupling_cutoff(kappa, a0_ratio) / std::sqrt(kappa);
            break;
    }
    return -iu * eta * shape * hdot(eps, mu_dir);
}

// ---------------------------------------------------------------------------
// Trajectory of the coupled system in internal time.
// ---------------------------------------------------------------------------

struct Trajectory {
    std::vector<double> times;                          // tau samples
    std::vector<complexd> ce;                           // excited amplitude
    std::vector<std::vector<complexd>> cg;              // per sample, per mode
    std::vector<double> norm;                           // |c_e|^2 + sum w |c_g|^2
    std::size_t mode_count = 0;

    double max_norm_drift() const {
        double d = 0.0;
        for (double n : norm) d = std::max(d, std::abs(n - 1.0));
        return d;
    }
};

struct SimulateOptions {
    double t_max = 0.0;       // internal time; required
    double tol = 1e-8;        // integrator relative tolerance
    int samples = 61;
    bool store_modes = true;
};

inline Trajectory simulate_modes(CouplingModel model, const ModeGrid& grid,
                                 const InternalUnits& units, const SimulateOptions& opt) {
    if (!(opt.t_max > 0.0)) throw std::invalid_argument("simulate_modes: t_max must be positive");
    if (!(opt.tol > 0.0)) throw std::invalid_argument("simulate_modes: tolerance must be positive");

    const std::size_t n_modes = grid.mode_count();
    std::vector<double> delta(n_modes);
    std::vector<complexd> g_weighted(n_modes);  // sqrt(w_j) * g_j

    std::size_t j = 0;
    for (std::size_t r = 0; r < grid.kappa.size(); ++r) {
        const double kappa = grid.kappa[r];
        const double wk = grid.radial_weight[r] * kappa * kappa;
        for (const auto& d : grid.directions) {
            for (int lambda = 0; lambda < 2; ++lambda, ++j) {
                const Vec3& eps = lambda == 0 ? d.eps1 : d.eps2;
                const complexd g = mode_coupling_internal(model, kappa, eps, units.mu_dir,
                                                          units.gamma_ratio, units.a0_ratio);
                delta[j] = kappa - 1.0;
                g_weighted[j] = std::sqrt(wk * d.weight) * g;
            }
        }
    }

    auto rhs = [&](double tau, const DormandPrince5::State& y, DormandPrince5::State& dy) {
        complexd acc = 0.0;
        const complexd ce = y[0];
        for (std::size_t m = 0; m < n_modes; ++m) {
            const double phase = delta[m] * tau;
            const complexd rot{std::cos(phase), std::sin(phase)};
            acc += std::conj(g_weighted[m] * rot) * y[m + 1];
            dy[m + 1] = -iu * (g_weighted[m] * rot) * ce;
        }
        dy[0] = -iu * acc;
    };

    OdeOptions ode_opt;
    ode_opt.rel_tol = opt.tol;
    ode_opt.abs_tol = opt.tol * 1e-4;
    DormandPrince5 stepper(rhs, ode_opt);

    DormandPrince5::State y(n_modes + 1, 0.0);
    y[0] = 1.0;

    Trajectory traj;
    traj.mode_count = n_modes;
    auto record = [&](double tau, const DormandPrince5::State& state) {
        traj.times.push_back(tau);
        traj.ce.push_back(state[0]);
        double n = std::norm(state[0]);
        for (std::size_t m = 0; m < n_modes; ++m) n += std::norm(state[m + 1]);
        traj.norm.push_back(n);
        if (opt.store_modes) {
            std::vector<complexd> snapshot(n_modes);
            std::size_t k = 0;
            for (std::size_t r = 0; r < grid.kappa.size(); ++r) {
                const double wk = grid.radial_weight[r] * grid.kappa[r] * grid.kappa[r];
                for (const auto& d : grid.directions) {
                    for (int lambda = 0; lambda < 2; ++lambda, ++k)
                        snapshot[k] = state[k + 1] / std::sqrt(wk * d.weight);
                }
            }
            traj.cg.push_back(std::move(snapshot));
        }
    };

    record(0.0, y);
    const int segments = std::max(1, opt.samples - 1);
    for (int s = 1; s <= segments; ++s) {
        const double t0 = opt.t_max * (s - 1) / segments;
        const double t1 = opt.t_max * s / segments;
        stepper.integrate(t0, t1, y);
        record(t1, y);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Exponential-decay fit: log|c_e| against time (slope -gamma_eff/2) and the
// unwrapped phase (slope -omega_shift).
// ---------------------------------------------------------------------------

struct DecayFit {
    double gamma_eff = 0.0;    // internal units (ratio to omega0)
    double omega_shift = 0.0;  // internal units
    double r_squared = 0.0;    // of the log-magnitude fit
    double residual_rms = 0.0;
};

inline DecayFit fit_decay(const Trajectory& traj, double t_fit_max = 0.0) {
    std::vector<double> t, logmag, phase;
    double prev_arg = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (t_fit_max > 0.0 && traj.times[i] > t_fit_max) break;
        const complexd c = traj.ce[i];
        if (std::abs(c) <= 0.0) break;
        const double a = std::arg(c);
        if (!t.empty()) {
            double d = a - prev_arg;
            while (d > pi) { d -= 2.0 * pi; offset -= 2.0 * pi; }
            while (d < -pi) { d += 2.0 * pi; offset += 2.0 * pi; }
        }
        prev_arg = a;
        t.push_back(traj.times[i]);
        logmag.push_back(std::log(std::abs(c)));
        phase.push_back(a + offset);
    }
    if (t.size() < 3) throw std::runtime_error("fit_decay: not enough usable samples");
    if (logmag.front() - logmag.back() < 1.0)
        throw std::runtime_error("fit_decay: trajectory does not decay enough to fit");

    auto least_squares = [&](const std::vector<double>& yv) {
        const double n = static_cast<double>(t.size());
        double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            st += t[i];
            sy += yv[i];
            stt += t[i] * t[i];
            sty += t[i] * yv[i];
        }
        const double slope = (n * sty - st * sy) / (n * stt - st * st);
        const double intercept = (sy - slope * st) / n;
        return std::pair{slope, intercept};
    };

    const auto [m_slope, m_icept] = least_squares(logmag);
    const auto [p_slope, p_icept] = least_squares(phase);

    double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
    for (double v : logmag) mean += v;
    mean /= static_cast<double>(logmag.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double fit = m_icept + m_slope * t[i];
        ss_res += (logmag[i] - fit) * (logmag[i] - fit);
        ss_tot += (logmag[i] - mean) * (logmag[i] - mean);
    }

    DecayFit f;
    f.gamma_eff = -2.0 * m_slope;
    f.omega_shift = -p_slope;
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    f.residual_rms = std::sqrt(ss_res / static_cast<double>(t.size()));
    if (f.gamma_eff <= 0.0) throw std::runtime_error("fit_decay: non-decaying trajectory");
    return f;
}

// ---------------------------------------------------------------------------
// Field reconstruction: radial quadrature of the mode integral with the
// decay-time integral done analytically,
//   psi(x, tau) = (i / 2 pi) int dkappa kappa^2 cut(kappa) M(kappa, x)
//                 [e^{-i Omega0 tau} - e^{-i kappa tau}] / (i (kappa - Omega0))
//                 mu_dir.
// The angular integral is the dyadic M itself, so only kappa is numeric.
// ---------------------------------------------------------------------------

struct ReconstructOptions {
    bool cutoff_on = false;
    bool extend_negative_k = true;  // symmetric window; pair with cutoff_on = false
    unsigned zones = ZoneAll;
    double window = 2.5;            // half-width of the kappa window around resonance
    double rel_tol = 1e-6;
    int max_panels = 200000;
    double taper_fraction = 0.2;    // smooth roll-off at hard window edges
};

namespace detail {

struct Complex2 {
    complexd t{}, s{};
    Complex2 operator+(const Complex2& o) const { return {t + o.t, s + o.s}; }
    Complex2 operator-(const Complex2& o) const { return {t - o.t, s - o.s}; }
    Complex2 operator*(double f) const { return {t * f, s * f}; }
    Complex2& operator+=(const Complex2& o) {
        t += o.t;
        s += o.s;
        return *this;
    }
};

inline double norm_of2(const Complex2& v) { return std::abs(v.t) + std::abs(v.s); }

}  // namespace detail

inline double norm_of(const detail::Complex2& v) { return detail::norm_of2(v); }

inline Vec3c reconstruct_field(const InternalUnits& units, CouplingModel model, const Vec3& x,
                               double tau, const ReconstructOptions& opt = {}) {
    const double rho = x.norm();
    if (rho <= 0.0) throw std::invalid_argument("reconstruct_field: evaluation at the source point");
    if (!(tau > 0.0)) throw std::invalid_argument("reconstruct_field: time must be positive");
    if (model == CouplingModel::ApExact)
        throw std::invalid_argument("reconstruct_field: pass ApDipole and cutoff_on instead");

    const complexd omega0c = units.omega0_complex();
    const double a0r = units.a0_ratio;
    const double lo = opt.extend_negative_k ? -(1.0 + opt.window) : 0.0;
    const double hi = 1.0 + opt.window;

    auto taper = [&](double kappa) {
        if (opt.taper_fraction <= 0.0) return 1.0;
        const double edge = (hi - 1.0) * opt.taper_fraction;  // roll-off length
        double w = 1.0;
        if (kappa > hi - edge) {
            const double u = (kappa - (hi - edge)) / edge;
            w *= 0.5 * (1.0 + std::cos(pi * std::clamp(u, 0.0, 1.0)));
        }
        if (opt.extend_negative_k && kappa < lo + edge) {
            const double u = ((lo + edge) - kappa) / edge;
            w *= 0.5 * (1.0 + std::cos(pi * std::clamp(u, 0.0, 1.0)));
        }
        return w;
    };

    auto integrand = [&](double kappa) -> detail::Complex2 {
        const auto w = k2_mode_dyadic_weights(kappa, rho);
        double cut = 1.0;
        if (opt.cutoff_on) {
            const double u = (2.0 / 3.0) * a0r * kappa;
            const double dd = 1.0 + u * u;
            cut = 1.0 / (dd * dd);
        }
        cut *= taper(kappa);
        // e^{-i kappa tau} * (e^{i (kappa - Omega0) tau} - 1) / (i (kappa - Omega0))
        const complexd d = kappa - omega0c;
        const complexd time_factor =
            std::exp(-iu * kappa * tau) * cexpm1(iu * d * tau) / (iu * d) * cut;
        detail::Complex2 out;
        if (opt.zones & ZoneFar) out.t += w.far_t * time_factor;
        if (opt.zones & ZoneMid) out.s += w.mid_s * time_factor;
        if (opt.zones & ZoneNear) out.s += w.near_s * time_factor;
        return out;
    };

    QuadratureOptions qopt;
    qopt.rel_tol = opt.rel_tol;
    qopt.abs_tol = 1e-12 * (1.0 + 1.0 / (rho * rho * rho));
    qopt.max_panels = opt.max_panels;
    const double phase_scale = std::max({rho, tau, 1.0});
    qopt.initial_panels =
        static_cast<int>(std::clamp((hi - lo) * phase_scale / pi, 32.0, 4096.0));
    qopt.throw_on_failure = false;

    const auto result = integrate<detail::Complex2>(integrand, lo, hi, qopt);
    if (!result.converged)
        throw std::runtime_error("reconstruct_field: quadrature did not reach requested accuracy");

    const Vec3 x_hat = x * (1.0 / rho);
    const auto [p_t, p_s] = projectors(x_hat);
    return (p_t.apply(units.mu_dir) * result.value.t + p_s.apply(units.mu_dir) * result.value.s) *
           (iu / (2.0 * pi));
}

// ---------------------------------------------------------------------------
// Scan comparison
// ---------------------------------------------------------------------------

struct CompareTolerances {
    double rms_rel = 0.02;
    double max_rel = 0.10;
};

struct CompareReport {
    struct Entry {
        std::size_t count = 0;
        double rms_rel = 0.0;  // sqrt(sum |a-b|^2 / sum |b|^2), b the reference
        double max_rel = 0.0;
    };
    Entry inside, outside, all;
    bool pass = false;
};

inline CompareReport compare(const FieldScan& candidate, const FieldScan& reference,
                             const CompareTolerances& tol = {}) {
    if (candidate.points.size() != reference.points.size())
        throw std::invalid_argument("compare: scans have different sizes");

    double ref_scale = 0.0;
    for (const auto& p : reference.points) ref_scale = std::max(ref_scale, hnorm(p.psi));
    const double floor = 1e-12 * ref_scale;

    struct Acc {
        double num = 0.0, den = 0.0, max_rel = 0.0;
        std::size_t count = 0;
    } acc[3];

    for (std::size_t i = 0; i < candidate.points.size(); ++i) {
        const auto& a = candidate.points[i];
        const auto& b = reference.points[i];
        if ((a.x - b.x).norm() > 1e-12 * (1.0 + b.x.norm()) ||
            std::abs(a.tau - b.tau) > 1e-12 * (1.0 + std::abs(b.tau)))
            throw std::invalid_argument("compare: scans sample different grids");

        const Vec3c diff = a.psi - b.psi;
        const double d2 = std::real(hdot(diff, diff));
        const double r2 = std::real(hdot(b.psi, b.psi));
        const double rel = std::sqrt(d2) / std::max(std::sqrt(r2), floor);

        const int region = b.region == ConeRegion::Inside ? 0 : (b.region == ConeRegion::Outside ? 1 : -1);
        for (int slot : {region, 2}) {
            if (slot < 0) continue;
            acc[slot].num += d2;
            acc[slot].den += r2;
            acc[slot].max_rel = std::max(acc[slot].max_rel, rel);
            ++acc[slot].count;
        }
    }

    auto entry = [](const Acc& a) {
        CompareReport::Entry e;
        e.count = a.count;
        e.rms_rel = a.den > 0.0 ? std::sqrt(a.num / a.den) : (a.num > 0.0 ? HUGE_VAL : 0.0);
        e.max_rel = a.max_rel;
        return e;
    };

    CompareReport rep;
    rep.inside = entry(acc[0]);
    rep.outside = entry(acc[1]);
    rep.all = entry(acc[2]);
    rep.pass = rep.all.rms_rel <= tol.rms_rel && rep.all.max_rel <= tol.max_rel;
    return rep;
}

}  // namespace lumen
