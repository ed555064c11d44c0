// transition.hpp - two-level transition parameters, the derived complex
// dipole vector, and the SI <-> internal unit conversions.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "lumen/constants.hpp"
#include "lumen/geometry.hpp"

namespace lumen {

// Weighted sum over the spherical dipole basis; linear in the weights,
// no normalization requirement. Weight order is m2 = -1, 0, +1.
inline Vec3c weighted_xi_sum(const std::array<complexd, 3>& m2_weights) {
    Vec3c s;
    s += m2_weights[0] * xi(-1);
    s += m2_weights[1] * xi(0);
    s += m2_weights[2] * xi(+1);
    return s;
}

// Complex dipole moment of the transition for normalized sublevel weights.
// Hermitian norm is sqrt(2) * (2^7/3^5) * e * a0 regardless of the weights.
inline Vec3c dipole_moment(const std::array<complexd, 3>& m2_weights,
                           const PhysicalConstants& constants) {
    double w2 = 0.0;
    for (const auto& w : m2_weights) w2 += std::norm(w);
    if (std::abs(w2 - 1.0) > 1e-12)
        throw std::invalid_argument("dipole_moment: sublevel weights must be normalized");
    return transition_dipole_norm(constants) * weighted_xi_sum(m2_weights);
}

struct TransitionSpec {
    double omega_e = 0.0;                   // rad/s
    double omega_g = 0.0;                   // rad/s
    double gamma = 0.0;                     // rad/s, decay rate of |c_e|^2
    std::array<complexd, 3> m2_weights{};   // amplitudes for m2 = -1, 0, +1
    Vec3c mu;                               // derived dipole vector, C m
    PhysicalConstants constants;

    double omega0() const { return omega_e - omega_g; }
};

inline TransitionSpec make_transition(double omega0, double gamma,
                                      const std::array<complexd, 3>& m2_weights,
                                      const PhysicalConstants& constants = {}) {
    constants.validate();
    if (!(omega0 > 0.0)) throw std::invalid_argument("make_transition: omega0 must be positive");
    if (!(gamma > 0.0 && gamma < omega0))
        throw std::invalid_argument("make_transition: gamma must satisfy 0 < gamma < omega0");
    TransitionSpec t;
    t.omega_e = omega0;
    t.omega_g = 0.0;
    t.gamma = gamma;
    t.m2_weights = m2_weights;
    t.constants = constants;
    t.mu = dipole_moment(m2_weights, constants);
    return t;
}

// Named presets. The hydrogen Lyman-alpha frequency is fixed by
// lambda0 = 121.567 nm; the decay rate is a free parameter:
//   hydrogen-paper      omega0 / gamma = 1e3 (desk-scale runs)
//   hydrogen-literature gamma = 6.2649e8 s^-1 (measured 2p lifetime)
inline constexpr double hydrogen_lyman_alpha_wavelength = 121.567e-9;  // m

inline TransitionSpec make_preset(const std::string& name,
                                  const PhysicalConstants& constants = {}) {
    const double omega0 = 2.0 * pi * constants.c / hydrogen_lyman_alpha_wavelength;
    const std::array<complexd, 3> weights = {0.0, 1.0, 0.0};  // dipole along z
    if (name == "hydrogen-paper") return make_transition(omega0, omega0 / 1.0e3, weights, constants);
    if (name == "hydrogen-literature")
        return make_transition(omega0, 6.2649e8, weights, constants);
    throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Internal dimensionless units of a given transition.
// ---------------------------------------------------------------------------

struct InternalUnits {
    double omega0 = 0.0;       // rad/s
    double gamma_ratio = 0.0;  // gamma / omega0
    double a0_ratio = 0.0;     // a0 * omega0 / c
    double c = 0.0;            // m/s
    double field_scale = 0.0;  // |mu| omega0^3 / (4 pi eps0 c^3), V/m
    double mu_norm = 0.0;      // C m
    Vec3c mu_dir;              // unit Hermitian norm dipole direction

    static InternalUnits from_transition(const TransitionSpec& t) {
        InternalUnits u;
        const auto& k = t.constants;
        u.omega0 = t.omega0();
        u.gamma_ratio = t.gamma / u.omega0;
        u.a0_ratio = k.a0 * u.omega0 / k.c;
        u.c = k.c;
        u.mu_norm = hnorm(t.mu);
        u.mu_dir = (1.0 / u.mu_norm) * t.mu;
        u.field_scale = u.mu_norm * u.omega0 * u.omega0 * u.omega0 /
                        (4.0 * pi * k.eps0 * k.c * k.c * k.c);
        return u;
    }

    // complex transition frequency in internal units: 1 - i * gamma_ratio / 2
    complexd omega0_complex() const { return {1.0, -0.5 * gamma_ratio}; }

    double tau_from_time(double t_seconds) const { return omega0 * t_seconds; }
    double time_from_tau(double tau) const { return tau / omega0; }
    double rho_from_length(double x_meters) const { return omega0 * x_meters / c; }
    double length_from_rho(double rho) const { return rho * c / omega0; }
    double kappa_from_wavenumber(double k_per_meter) const { return c * k_per_meter / omega0; }
    double wavenumber_from_kappa(double kappa) const { return kappa * omega0 / c; }
    double field_si_from_internal(double psi) const { return psi * field_scale; }
};

}  // namespace lumen
