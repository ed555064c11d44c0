// kernels.hpp - dyadic Green functions as structured distributional kernels.
//
// Every kernel is a short list of terms
//     sign * coeff * shape(x_hat) * delta^{(n)}(arg) / rho^p
// with shape in {I - xx, I - 3xx}, derivative order n in {-1, 0, 1, 2} and
// arg = tau - rho (retarded) or tau (instantaneous). Convolution against a
// source s uses the orientation
//     int dt' delta^{(n)}(t - t' - r/c) s(t') = s^{(n)}(t - r/c),
// so a term acts as s^{(n)} at the (possibly retarded) argument; n = -1 acts
// through the primitive of s. Kernels are stored symbolically and never
// sampled: delta derivatives have no faithful grid representation.
//
// Units: internal (omega0 = c = 1, field scale |mu| omega0^3 / (4 pi eps0 c^3)).
// A term's SI coefficient is value() * omega0^(3-n-p) * c^(p-3) / (4 pi eps0).
//
// Sign conventions are anchored on two reference forms, which
// er_ap_structure_check() re-derives by direct convolution:
//   far field (E.r):  + Omega0^2 e^{-i Omega0 (tau-rho)} (I-xx) mu / rho
//   far field (A.p):  + omega0 Omega0 e^{-i Omega0 (tau-rho)} (I-xx) mu / rho

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lumen/geometry.hpp"
#include "lumen/source.hpp"

namespace lumen {

enum class DyadicShape { Transverse, Traceless };

enum class KernelModel {
    ClassicalFull,
    ClassicalTransverse,
    ClassicalLongitudinal,
    QuantumErDip,
    QuantumApDip,
};

inline const char* to_string(KernelModel m) {
    switch (m) {
        case KernelModel::ClassicalFull: return "classical-full";
        case KernelModel::ClassicalTransverse: return "classical-transverse";
        case KernelModel::ClassicalLongitudinal: return "classical-longitudinal";
        case KernelModel::QuantumErDip: return "er-dip";
        case KernelModel::QuantumApDip: return "ap-dip";
    }
    throw std::invalid_argument("to_string: unknown kernel model");
}

inline KernelModel kernel_model_from_string(const std::string& s) {
    if (s == "classical-full") return KernelModel::ClassicalFull;
    if (s == "classical-transverse") return KernelModel::ClassicalTransverse;
    if (s == "classical-longitudinal") return KernelModel::ClassicalLongitudinal;
    if (s == "er-dip") return KernelModel::QuantumErDip;
    if (s == "ap-dip") return KernelModel::QuantumApDip;
    throw std::invalid_argument("unknown kernel model '" + s + "'");
}

// near/mid/far selection is by radial power, not by distance thresholds
enum ZoneMask : unsigned { ZoneNear = 1u, ZoneMid = 2u, ZoneFar = 4u, ZoneAll = 7u };

inline unsigned zone_of_radial_power(int radial_power) {
    switch (radial_power) {
        case 1: return ZoneFar;
        case 2: return ZoneMid;
        case 3: return ZoneNear;
    }
    throw std::invalid_argument("zone_of_radial_power: radial power must be 1, 2 or 3");
}

struct KernelTerm {
    DyadicShape shape = DyadicShape::Transverse;
    int radial_power = 1;       // power of 1/rho
    int derivative_order = 0;   // n in {-1, 0, 1, 2}
    bool retarded = true;       // argument tau - rho if set, tau otherwise
    int sign = 1;
    complexd coefficient{1.0, 0.0};
    int omega0_power = 0;       // explicit omega0 power inside the coefficient

    complexd value() const { return static_cast<double>(sign) * coefficient; }

    Mat3c shape_matrix(const Vec3& x_hat) const {
        const auto [p_t, p_s] = projectors(x_hat);
        return shape == DyadicShape::Transverse ? p_t : p_s;
    }
};

struct GreenKernel {
    KernelModel model = KernelModel::ClassicalFull;
    bool causal_gate = false;  // explicit Theta(t - t') factor
    std::vector<KernelTerm> terms;
};

// ---------------------------------------------------------------------------
// Term tables
// ---------------------------------------------------------------------------

inline GreenKernel kernel(KernelModel model) {
    using S = DyadicShape;
    GreenKernel g;
    g.model = model;

    const KernelTerm far_rad{S::Transverse, 1, 2, true, -1, 1.0, 0};
    const KernelTerm mid_rad{S::Traceless, 2, 1, true, -1, 1.0, 0};
    const KernelTerm near_rad{S::Traceless, 3, 0, true, -1, 1.0, 0};

    switch (model) {
        case KernelModel::ClassicalFull:
            g.causal_gate = false;
            g.terms = {far_rad, mid_rad, near_rad};
            break;
        case KernelModel::ClassicalLongitudinal:
            g.causal_gate = false;
            g.terms = {{S::Traceless, 3, 0, false, -1, 1.0, 0}};
            break;
        case KernelModel::ClassicalTransverse:
            g.causal_gate = false;
            g.terms = {{S::Traceless, 3, 0, false, +1, 1.0, 0}, far_rad, mid_rad, near_rad};
            break;
        case KernelModel::QuantumErDip:
            g.causal_gate = true;
            g.terms = {far_rad, mid_rad, near_rad};
            break;
        case KernelModel::QuantumApDip:
            // E.r terms lowered one derivative order, coefficients times
            // -i omega0, plus the instantaneous primitive counter-term whose
            // retarded partner it cancels outside the light cone.
            g.causal_gate = true;
            g.terms = {{S::Transverse, 1, 1, true, +1, iu, 1},
                       {S::Traceless, 2, 0, true, +1, iu, 1},
                       {S::Traceless, 3, -1, true, +1, iu, 1},
                       {S::Traceless, 3, -1, false, -1, iu, 1}};
            break;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Frame-independent mode dyadic M(kappa, x): the angular integral of the
// transverse plane-wave projector,
//   integral dOmega_k sum_lambda eps eps^T e^{i k.x} = 2 pi M(kappa, x),
// M = 2 [ j0(u) (I - xx) - (j1(u)/u) (I - 3xx) ],  u = kappa * rho.
// Series branches keep small u stable (the closed form has 1/u^3 pieces).
// ---------------------------------------------------------------------------

namespace detail {

inline double sinc(double u) {
    if (std::abs(u) < 0.05) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
    }
    return std::sin(u) / u;
}

// j1(u)/u = sin(u)/u^3 - cos(u)/u^2
inline double j1_over_u(double u) {
    if (std::abs(u) < 0.05) {
        const double u2 = u * u;
        return 1.0 / 3.0 - u2 / 30.0 + u2 * u2 / 840.0 - u2 * u2 * u2 / 45360.0;
    }
    return (std::sin(u) / u - std::cos(u)) / (u * u);
}

}  // namespace detail

inline Mat3c dyadic_m(double kappa, const Vec3& x) {
    const double rho = x.norm();
    if (rho <= 0.0) throw std::invalid_argument("dyadic_m: evaluation at the source point");
    if (kappa <= 0.0) throw std::invalid_argument("dyadic_m: wavenumber must be positive");
    const double u = kappa * rho;
    const auto [p_t, p_s] = projectors(x * (1.0 / rho));
    return p_t * (2.0 * detail::sinc(u)) - p_s * (2.0 * detail::j1_over_u(u));
}

// Coefficients of (I-xx) and (I-3xx) in kappa^2 M(kappa, x), split by the
// radial power each piece carries (1/rho, 1/rho^2, 1/rho^3). Finite for all
// kappa >= 0, which the raw 1/u^3 form is not.
struct ModeDyadicWeights {
    double far_t = 0.0;   // 2 kappa sin(u) / rho
    double mid_s = 0.0;   // 2 cos(u) / rho^2
    double near_s = 0.0;  // -2 sinc(u) / rho^2
};

inline ModeDyadicWeights k2_mode_dyadic_weights(double kappa, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("k2_mode_dyadic_weights: rho must be positive");
    const double u = kappa * rho;
    ModeDyadicWeights w;
    w.far_t = 2.0 * kappa * std::sin(u) / rho;
    w.mid_s = 2.0 * std::cos(u) / (rho * rho);
    w.near_s = -2.0 * detail::sinc(u) / (rho * rho);
    return w;
}

// ---------------------------------------------------------------------------
// Harmonic-domain classical dyadics (internal units, omega = c k).
// The contact term I delta^3(x) / (3 eps0) is excluded throughout.
// SI value = internal value * omega0^3 / (4 pi eps0 c^3) per unit dipole.
// ---------------------------------------------------------------------------

inline Mat3c classical_harmonic(const Vec3& x, double omega) {
    const double rho = x.norm();
    if (rho <= 0.0) throw std::invalid_argument("classical_harmonic: evaluation at the source point");
    const Vec3 x_hat = x * (1.0 / rho);
    const auto p_t = transverse_projector(x_hat);
    const Mat3c xx = outer(x_hat, x_hat);
    const double u = omega * rho;
    const complexd phase = std::exp(iu * u);
    const complexd a = complexd(1.0, 0.0) - iu * u - u * u;
    const complexd b = complexd(2.0, 0.0) - 2.0 * iu * u;
    const double inv_r3 = 1.0 / (rho * rho * rho);
    return (p_t * a - xx * b) * (-phase * inv_r3);
}

// omega-independent static-dipole response
inline Mat3c longitudinal_harmonic(const Vec3& x) {
    const double rho = x.norm();
    if (rho <= 0.0)
        throw std::invalid_argument("longitudinal_harmonic: evaluation at the source point");
    const auto p_s = traceless_projector(x * (1.0 / rho));
    return p_s * (-1.0 / (rho * rho * rho));
}

inline Mat3c transverse_harmonic(const Vec3& x, double omega) {
    const double rho = x.norm();
    if (rho <= 0.0)
        throw std::invalid_argument("transverse_harmonic: evaluation at the source point");
    const auto p_s = traceless_projector(x * (1.0 / rho));
    return p_s * (1.0 / (rho * rho * rho)) + classical_harmonic(x, omega);
}

// ---------------------------------------------------------------------------
// Structural relation between the quantum kernels and the classical one.
// ---------------------------------------------------------------------------

struct StructureReport {
    bool er_matches_classical = false;  // identical (shape, n, retarded) triples
    bool er_coefficient_ratio_constant = false;
    complexd er_to_classical_ratio{};
    bool ap_is_lowered_er = false;      // E.r triples with n lowered by one
    bool ap_has_counter_term = false;   // instantaneous primitive partner, opposite sign
    bool ap_ratio_constant = false;
    complexd ap_to_er_ratio{};          // per-term coefficient ratio, omega0 power 1
    bool far_field_convention_ok = false;
    std::string detail;

    bool all_ok() const {
        return er_matches_classical && er_coefficient_ratio_constant && ap_is_lowered_er &&
               ap_has_counter_term && ap_ratio_constant && far_field_convention_ok;
    }
};

inline StructureReport er_ap_structure_check() {
    StructureReport rep;
    const GreenKernel classical = kernel(KernelModel::ClassicalFull);
    const GreenKernel er = kernel(KernelModel::QuantumErDip);
    const GreenKernel ap = kernel(KernelModel::QuantumApDip);

    auto triple_equal = [](const KernelTerm& a, const KernelTerm& b, int lower) {
        return a.shape == b.shape && a.retarded == b.retarded &&
               a.derivative_order == b.derivative_order - lower &&
               a.radial_power == b.radial_power;
    };

    rep.er_matches_classical = er.terms.size() == classical.terms.size();
    rep.er_coefficient_ratio_constant = true;
    for (std::size_t i = 0; i < er.terms.size() && rep.er_matches_classical; ++i) {
        rep.er_matches_classical = triple_equal(er.terms[i], classical.terms[i], 0);
        const complexd r = er.terms[i].value() / classical.terms[i].value();
        if (i == 0)
            rep.er_to_classical_ratio = r;
        else if (std::abs(r - rep.er_to_classical_ratio) > 1e-15)
            rep.er_coefficient_ratio_constant = false;
    }

    // first three A.p terms are the lowered E.r terms
    rep.ap_is_lowered_er = ap.terms.size() == 4;
    rep.ap_ratio_constant = true;
    for (std::size_t i = 0; i < 3 && rep.ap_is_lowered_er; ++i) {
        rep.ap_is_lowered_er = triple_equal(ap.terms[i], er.terms[i], 1) &&
                               ap.terms[i].omega0_power == er.terms[i].omega0_power + 1;
        const complexd r = ap.terms[i].value() / er.terms[i].value();
        if (i == 0)
            rep.ap_to_er_ratio = r;
        else if (std::abs(r - rep.ap_to_er_ratio) > 1e-15)
            rep.ap_ratio_constant = false;
    }

    // the two primitive terms share shape and magnitude with opposite signs
    if (ap.terms.size() == 4) {
        const auto& ret = ap.terms[2];
        const auto& inst = ap.terms[3];
        rep.ap_has_counter_term = ret.derivative_order == -1 && inst.derivative_order == -1 &&
                                  ret.retarded && !inst.retarded && ret.shape == inst.shape &&
                                  ret.radial_power == inst.radial_power &&
                                  ret.sign == -inst.sign &&
                                  std::abs(ret.coefficient - inst.coefficient) == 0.0;
    }

    // Re-derive the far fields by convolving the p = 1 terms with the source
    // at a reference spacetime point inside the cone.
    const SourceSignal src = SourceSignal::make(complexd{1.0, -5e-4});
    const complexd omega0c = src.omega0_complex;
    const double rho = 3.0, tau = 7.0;
    complexd er_far{}, ap_far{};
    for (const auto& t : er.terms)
        if (t.radial_power == 1) er_far = t.value() * src.derivative(t.derivative_order, tau - rho) / rho;
    for (const auto& t : ap.terms)
        if (t.radial_power == 1) ap_far = t.value() * src.derivative(t.derivative_order, tau - rho) / rho;
    const complexd envelope = std::exp(-iu * omega0c * (tau - rho)) / rho;
    const complexd er_expected = omega0c * omega0c * envelope;
    const complexd ap_expected = omega0c * envelope;  // omega0 = 1 internally
    rep.far_field_convention_ok = std::abs(er_far - er_expected) <= 1e-14 * std::abs(er_expected) &&
                                  std::abs(ap_far - ap_expected) <= 1e-14 * std::abs(ap_expected);

    rep.detail = "ap/er per-term coefficient ratio (internal units, omega0 power 1): " +
                 std::to_string(rep.ap_to_er_ratio.real()) + (rep.ap_to_er_ratio.imag() < 0 ? " - " : " + ") +
                 std::to_string(std::abs(rep.ap_to_er_ratio.imag())) + "i";
    return rep;
}

}  // namespace lumen
