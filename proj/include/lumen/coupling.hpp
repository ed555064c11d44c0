// coupling.hpp - atom-field matrix elements for the three interaction models,
// the exact-coupling high-frequency rolloff, and the exponential-decay
// amplitudes they drive.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "lumen/constants.hpp"
#include "lumen/geometry.hpp"
#include "lumen/transition.hpp"

namespace lumen {

enum class CouplingModel { ErDipole, ApDipole, ApExact };

inline const char* to_string(CouplingModel m) {
    switch (m) {
        case CouplingModel::ErDipole: return "er-dip";
        case CouplingModel::ApDipole: return "ap-dip";
        case CouplingModel::ApExact: return "ap-exact";
    }
    throw std::invalid_argument("to_string: unknown coupling model");
}

inline CouplingModel coupling_model_from_string(const std::string& s) {
    if (s == "er-dip") return CouplingModel::ErDipole;
    if (s == "ap-dip") return CouplingModel::ApDipole;
    if (s == "ap-exact") return CouplingModel::ApExact;
    throw std::invalid_argument("unknown coupling model '" + s + "' (er-dip|ap-dip|ap-exact)");
}

struct ModeIndex {
    Vec3 k;          // wave vector, 1/m
    int lambda = 1;  // polarization index, 1 or 2
};

// Momentum rolloff of the exact coupling: [1 + ((2/3) a0 k)^2]^-2.
// Monotone decreasing, equals 1 at k = 0.
inline double coupling_cutoff(double k_norm, double a0) {
    if (k_norm < 0.0) throw std::invalid_argument("coupling_cutoff: negative wavenumber");
    const double u = (2.0 / 3.0) * a0 * k_norm;
    const double d = 1.0 + u * u;
    return 1.0 / (d * d);
}

inline double coupling_cutoff(double k_norm, const PhysicalConstants& constants) {
    return coupling_cutoff(k_norm, constants.a0);
}

// Matrix element G_lambda(k) in SI units (J m^{3/2}):
//   ErDipole  -i sqrt(hbar c k / (16 pi^3 eps0)) <eps, mu>
//   ApDipole  -i omega0 sqrt(hbar / (16 pi^3 eps0 c k)) <eps, mu>
//   ApExact   ApDipole expression with the momentum rolloff denominator
// The two dipolar forms differ by the dimensionless factor c k / omega0.
inline complexd coupling(CouplingModel model, const ModeIndex& mode, const TransitionSpec& t) {
    if (mode.lambda != 1 && mode.lambda != 2)
        throw std::invalid_argument("coupling: polarization index must be 1 or 2");
    const auto& k = t.constants;
    const double k_norm = mode.k.norm();
    if (k_norm <= 0.0)
        throw std::invalid_argument("coupling: wave vector must be nonzero");

    const auto [eps1, eps2] = polarization_basis(mode.k);
    const complexd overlap = hdot(mode.lambda == 1 ? eps1 : eps2, t.mu);
    const double prefactor_common = 16.0 * pi * pi * pi * k.eps0;

    switch (model) {
        case CouplingModel::ErDipole:
            return -iu * std::sqrt(k.hbar * k.c * k_norm / prefactor_common) * overlap;
        case CouplingModel::ApDipole:
            return -iu * t.omega0() * std::sqrt(k.hbar / (prefactor_common * k.c * k_norm)) *
                   overlap;
        case CouplingModel::ApExact: {
            const double u = (2.0 / 3.0) * k.a0 * k_norm;
            const double d = 1.0 + u * u;
            return -iu * t.omega0() * std::sqrt(k.hbar / (prefactor_common * k.c * k_norm)) *
                   overlap / (d * d);
        }
    }
    throw std::invalid_argument("coupling: unknown model");
}

// Bare excited-state amplitude under exponential decay: Theta(t) e^{-gamma t/2}.
// The full amplitude c_e(t) e^{-i omega0 t} then equals e^{-i Omega0 t}.
inline complexd excited_amplitude(double t, const TransitionSpec& transition) {
    if (t < 0.0) return 0.0;
    return std::exp(-0.5 * transition.gamma * t);
}

// One-photon amplitude of mode (k, lambda) at time t, from integrating the
// mode equation of motion with the exponential excited amplitude:
//   c_g(k,t) = (-i/hbar) G_lambda(k) [e^{(i(ck-omega0)-gamma/2) t} - 1]
//              / (i(ck-omega0) - gamma/2)
inline complexd ground_amplitude(const ModeIndex& mode, double t, CouplingModel model,
                                 const TransitionSpec& transition) {
    if (t <= 0.0) return 0.0;
    const complexd g = coupling(model, mode, transition);
    const double detuning = transition.constants.c * mode.k.norm() - transition.omega0();
    const complexd rate = iu * detuning - 0.5 * transition.gamma;  // never zero: gamma > 0
    return (-iu / transition.constants.hbar) * g * (std::exp(rate * t) - 1.0) / rate;
}

}  // namespace lumen
