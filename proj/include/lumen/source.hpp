// source.hpp - the decaying dipole source in internal units:
//   s(tau) = Theta(tau) * exp(-i Omega0 tau),  Omega0 = 1 - i gamma/2.
// Derivatives of any nonnegative order are analytic; the primitive carries an
// integration constant fixed so Prim(s)(0) = 0 (field continuity at switch-on).

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lumen/geometry.hpp"

namespace lumen {

// e^z - 1 without cancellation for small |z|
inline complexd cexpm1(complexd z) {
    const double x = z.real(), y = z.imag();
    const double ex1 = std::expm1(x);
    const double sy2 = std::sin(0.5 * y);
    return {ex1 * std::cos(y) - 2.0 * sy2 * sy2, (ex1 + 1.0) * std::sin(y)};
}

struct SourceSignal {
    complexd omega0_complex{1.0, 0.0};  // internal Omega0 = 1 - i gamma/2
    double support_start = 0.0;
    complexd primitive_constant{0.0, 0.0};  // = -i / Omega0, see make()

    static SourceSignal make(complexd omega0_complex_internal) {
        SourceSignal s;
        s.omega0_complex = omega0_complex_internal;
        s.primitive_constant = -iu / omega0_complex_internal;
        return s;
    }

    complexd value(double tau) const {
        if (tau < support_start) return 0.0;
        return std::exp(-iu * omega0_complex * tau);
    }

    // n-th derivative for n >= 0, the anchored primitive for n = -1
    complexd derivative(int n, double tau) const {
        if (n == -1) return primitive(tau);
        if (n < -1) throw std::invalid_argument("SourceSignal: derivative order below -1");
        if (tau < support_start) return 0.0;
        complexd factor = 1.0;
        for (int i = 0; i < n; ++i) factor *= -iu * omega0_complex;
        return factor * std::exp(-iu * omega0_complex * tau);
    }

    // Prim(s)(tau) = (i / Omega0) (exp(-i Omega0 tau) - 1), zero before switch-on
    complexd primitive(double tau) const {
        if (tau < support_start) return 0.0;
        return (iu / omega0_complex) * cexpm1(-iu * omega0_complex * tau);
    }

    // Antiderivative with integration constant zero instead of the continuity
    // anchor; this is the alternative longitudinal source convention.
    complexd primitive_unanchored(double tau) const {
        if (tau < support_start) return 0.0;
        return (iu / omega0_complex) * std::exp(-iu * omega0_complex * tau);
    }
};

}  // namespace lumen
