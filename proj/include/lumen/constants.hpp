// constants.hpp - SI physical constants (CODATA 2018) and the unit strategy.
//
// All field evaluation inside the library runs in dimensionless internal
// units: tau = omega0 * t, rho = omega0 * |x| / c, kappa = c * |k| / omega0,
// fields scaled by |mu| * omega0^3 / (4 pi eps0 c^3). SI values appear only
// at I/O boundaries. This keeps intermediates O(1) instead of mixing
// magnitudes like a0 ~ 1e-10 m with eps0 ~ 1e-11 F/m.

#pragma once

#include <cmath>
#include <stdexcept>

#include "lumen/geometry.hpp"

namespace lumen {

struct PhysicalConstants {
    double hbar = 1.054571817e-34;       // J s
    double c = 299792458.0;              // m / s
    double eps0 = 8.8541878128e-12;      // F / m
    double e_charge = 1.602176634e-19;   // C
    double m_e = 9.1093837015e-31;       // kg
    // Bohr radius, derived so the defining relation holds to machine precision.
    double a0 = 4.0 * pi * 8.8541878128e-12 * 1.054571817e-34 * 1.054571817e-34 /
                (9.1093837015e-31 * 1.602176634e-19 * 1.602176634e-19);

    void validate() const {
        if (!(hbar > 0.0 && c > 0.0 && eps0 > 0.0 && e_charge > 0.0 && m_e > 0.0 && a0 > 0.0))
            throw std::invalid_argument("PhysicalConstants: all entries must be positive");
    }
};

// Dipole norm of a 2p-1s transition: sqrt(2) * (2^7 / 3^5) * e * a0.
inline double transition_dipole_norm(const PhysicalConstants& k) {
    return std::sqrt(2.0) * (128.0 / 243.0) * k.e_charge * k.a0;
}

}  // namespace lumen
