#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lumen/fields.hpp"
#include "lumen/kernels.hpp"
#include "lumen/quadrature.hpp"

using namespace lumen;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    while (v.norm() < 1e-3) v = Vec3{g(rng), g(rng), g(rng)};
    return v.normalized();
}

// Gaussian test pulse with analytic derivatives; support is effectively
// compact on the scales used here.
struct GaussianSource {
    double center = 0.0, width = 1.0;

    complexd value(double t) const {
        const double u = (t - center) / width;
        return std::exp(-0.5 * u * u);
    }
    complexd derivative(int n, double t) const {
        const double u = (t - center) / width;
        const complexd v = value(t);
        switch (n) {
            case 0: return v;
            case 1: return -u / width * v;
            case 2: return (u * u - 1.0) / (width * width) * v;
        }
        throw std::invalid_argument("GaussianSource: unsupported order");
    }
};

}  // namespace

TEST(KernelTables, TermInventories) {
    const auto full = kernel(KernelModel::ClassicalFull);
    ASSERT_EQ(full.terms.size(), 3u);
    EXPECT_FALSE(full.causal_gate);
    for (const auto& term : full.terms) {
        EXPECT_TRUE(term.retarded);
        EXPECT_EQ(term.sign, -1);
        EXPECT_EQ(term.coefficient, complexd(1.0));
    }
    EXPECT_EQ(full.terms[0].derivative_order, 2);
    EXPECT_EQ(full.terms[0].radial_power, 1);
    EXPECT_EQ(full.terms[0].shape, DyadicShape::Transverse);
    EXPECT_EQ(full.terms[1].derivative_order, 1);
    EXPECT_EQ(full.terms[1].radial_power, 2);
    EXPECT_EQ(full.terms[2].derivative_order, 0);
    EXPECT_EQ(full.terms[2].radial_power, 3);

    const auto lon = kernel(KernelModel::ClassicalLongitudinal);
    ASSERT_EQ(lon.terms.size(), 1u);
    EXPECT_FALSE(lon.terms[0].retarded);
    EXPECT_EQ(lon.terms[0].derivative_order, 0);
    EXPECT_EQ(lon.terms[0].radial_power, 3);

    const auto trans = kernel(KernelModel::ClassicalTransverse);
    ASSERT_EQ(trans.terms.size(), 4u);
    EXPECT_FALSE(trans.terms[0].retarded);

    // the instantaneous static-dipole pieces of the split cancel exactly
    EXPECT_EQ(trans.terms[0].shape, lon.terms[0].shape);
    EXPECT_EQ(trans.terms[0].value() + lon.terms[0].value(), complexd(0.0));

    const auto ap = kernel(KernelModel::QuantumApDip);
    ASSERT_EQ(ap.terms.size(), 4u);
    EXPECT_TRUE(ap.causal_gate);
    EXPECT_EQ(ap.terms[0].derivative_order, 1);
    EXPECT_EQ(ap.terms[1].derivative_order, 0);
    EXPECT_EQ(ap.terms[2].derivative_order, -1);
    EXPECT_EQ(ap.terms[3].derivative_order, -1);
    EXPECT_TRUE(ap.terms[2].retarded);
    EXPECT_FALSE(ap.terms[3].retarded);
    EXPECT_EQ(ap.terms[2].value() + ap.terms[3].value(), complexd(0.0));

    const auto er = kernel(KernelModel::QuantumErDip);
    ASSERT_EQ(er.terms.size(), 3u);
    EXPECT_TRUE(er.causal_gate);
    for (const auto& term : er.terms) EXPECT_TRUE(term.retarded);

    EXPECT_THROW(kernel_model_from_string("nope"), std::invalid_argument);
    EXPECT_EQ(kernel_model_from_string("ap-dip"), KernelModel::QuantumApDip);
}

TEST(KernelTables, StructureCheck) {
    const StructureReport rep = er_ap_structure_check();
    EXPECT_TRUE(rep.er_matches_classical);
    EXPECT_TRUE(rep.er_coefficient_ratio_constant);
    EXPECT_NEAR(std::abs(rep.er_to_classical_ratio - complexd(1.0)), 0.0, 1e-15);
    EXPECT_TRUE(rep.ap_is_lowered_er);
    EXPECT_TRUE(rep.ap_has_counter_term);
    EXPECT_TRUE(rep.ap_ratio_constant);
    // per-term factor carries one power of omega0 and is purely imaginary
    EXPECT_NEAR(std::abs(rep.ap_to_er_ratio - complexd(0.0, -1.0)), 0.0, 1e-15);
    EXPECT_TRUE(rep.far_field_convention_ok);
    EXPECT_TRUE(rep.all_ok());
}

TEST(ModeDyadic, SymmetryAndBesselForm) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> logu(-2.0, 1.5);
    for (int i = 0; i < 30; ++i) {
        const Vec3 x = random_unit(rng) * std::pow(10.0, logu(rng));
        const double kappa = std::pow(10.0, logu(rng));
        const Mat3c m = dyadic_m(kappa, x);

        EXPECT_NEAR((m - m.transposed()).max_abs(), 0.0, 1e-14);

        // independent Bessel-function route
        const double u = kappa * x.norm();
        const double j0 = std::sph_bessel(0, u);
        const double j1u = u > 1e-8 ? std::sph_bessel(1, u) / u : 1.0 / 3.0;
        const auto [p_t, p_s] = projectors(x.normalized());
        const Mat3c ref = p_t * (2.0 * j0) - p_s * (2.0 * j1u);
        EXPECT_NEAR((m - ref).max_abs(), 0.0, 1e-12);
    }

    // series branch continuity across the switch
    const Vec3 x{0.3, -0.4, 0.5};
    const double r = x.norm();
    for (double u : {0.049, 0.051}) {
        const Mat3c a = dyadic_m(u / r, x);
        const double j0 = std::sph_bessel(0, u);
        const double j1u = std::sph_bessel(1, u) / u;
        const auto [p_t, p_s] = projectors(x.normalized());
        EXPECT_NEAR((a - (p_t * (2.0 * j0) - p_s * (2.0 * j1u))).max_abs(), 0.0, 1e-13);
    }

    EXPECT_THROW(dyadic_m(1.0, Vec3{}), std::invalid_argument);
    EXPECT_THROW(dyadic_m(-1.0, Vec3{1, 0, 0}), std::invalid_argument);
}

TEST(ModeDyadic, AngularQuadratureOracle) {
    // integral over the unit sphere of sum_lambda eps eps^T e^{i k.x}
    // reproduces 2 pi M(kappa, x). Gauss-Legendre in cos(theta), uniform
    // in phi (periodic, so spectrally accurate).
    const Vec3 x_hat = Vec3{0.2, 0.5, -0.8}.normalized();
    const int n_theta = 64, n_phi = 96;
    const auto [mu_nodes, mu_weights] = gauss_legendre_nodes(n_theta);

    for (double u : {0.5, 2.0, 10.0}) {
        const double kappa = 1.0;
        const Vec3 x = x_hat * u;  // so kappa * |x| = u

        Mat3c sum;
        for (int it = 0; it < n_theta; ++it) {
            const double mu = mu_nodes[it];
            const double st = std::sqrt(1.0 - mu * mu);
            for (int ip = 0; ip < n_phi; ++ip) {
                const double phi = 2.0 * pi * (ip + 0.5) / n_phi;
                const Vec3 k_hat{st * std::cos(phi), st * std::sin(phi), mu};
                const auto [e1, e2] = polarization_basis(k_hat);
                const complexd plane = std::exp(iu * kappa * dot(k_hat, x));
                const double w = mu_weights[it] * (2.0 * pi / n_phi);
                sum += (outer(e1, e1) + outer(e2, e2)) * (plane * w);
            }
        }

        const Mat3c expected = dyadic_m(kappa, x) * (2.0 * pi);
        EXPECT_NEAR((sum - expected).max_abs() / expected.max_abs(), 0.0, 1e-8) << "u=" << u;
    }
}

TEST(ModeDyadic, WeightedZoneSplit) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.1, 4.0);
    for (int i = 0; i < 20; ++i) {
        const double kappa = uni(rng), rho = uni(rng);
        const auto w = k2_mode_dyadic_weights(kappa, rho);
        const Vec3 x_hat = random_unit(rng);
        const auto [p_t, p_s] = projectors(x_hat);
        const Mat3c recomposed = p_t * w.far_t + p_s * (w.mid_s + w.near_s);
        const Mat3c direct = dyadic_m(kappa, x_hat * rho) * (kappa * kappa);
        EXPECT_NEAR((recomposed - direct).max_abs(), 0.0, 1e-12 * direct.max_abs() + 1e-15);
    }
    // finite at kappa -> 0
    const auto w0 = k2_mode_dyadic_weights(1e-300, 2.0);
    EXPECT_NEAR(w0.far_t, 0.0, 1e-250);
    EXPECT_NEAR(w0.mid_s, 0.5, 1e-12);
    EXPECT_NEAR(w0.near_s, -0.5, 1e-12);
}

TEST(HarmonicDyadics, DecompositionAndStaticForm) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> logr(-1.5, 1.5), om(0.1, 5.0);
    for (int i = 0; i < 100; ++i) {
        const Vec3 x = random_unit(rng) * std::pow(10.0, logr(rng));
        const double omega = om(rng);
        const Mat3c full = classical_harmonic(x, omega);
        const Mat3c lon = longitudinal_harmonic(x);
        const Mat3c trans = transverse_harmonic(x, omega);
        EXPECT_NEAR((full - (lon + trans)).max_abs(), 0.0, 1e-12 * full.max_abs());
    }

    // longitudinal part at x along z: -diag(1, 1, -2) / rho^3, omega-free
    const double rho = 0.7;
    const Mat3c lon = longitudinal_harmonic(Vec3{0.0, 0.0, rho});
    const double inv_r3 = 1.0 / (rho * rho * rho);
    EXPECT_NEAR(std::abs(lon(0, 0) - complexd(-inv_r3)), 0.0, 1e-14 * inv_r3);
    EXPECT_NEAR(std::abs(lon(1, 1) - complexd(-inv_r3)), 0.0, 1e-14 * inv_r3);
    EXPECT_NEAR(std::abs(lon(2, 2) - complexd(2.0 * inv_r3)), 0.0, 1e-14 * inv_r3);
    EXPECT_NEAR(std::abs(lon(0, 1)), 0.0, 1e-16);

    EXPECT_THROW(classical_harmonic(Vec3{}, 1.0), std::invalid_argument);
    EXPECT_THROW(longitudinal_harmonic(Vec3{}), std::invalid_argument);
    EXPECT_THROW(transverse_harmonic(Vec3{}, 1.0), std::invalid_argument);
}

TEST(HarmonicDyadics, TransverseStaticPartCancels) {
    // the 1/rho^3 content of the transverse response vanishes as k rho -> 0,
    // leaving O((k rho)^2): evaluations at k rho = 1e-4 and 1e-5 scale by 100
    const Vec3 x = Vec3{0.3, 0.2, 0.6};
    const double rho = x.norm();
    const double a = (transverse_harmonic(x, 1e-4 / rho) * (rho * rho * rho)).max_abs();
    const double b = (transverse_harmonic(x, 1e-5 / rho) * (rho * rho * rho)).max_abs();
    EXPECT_NEAR(a / b, 100.0, 1.0);
    // and both are tiny compared with the longitudinal 1/rho^3 scale
    EXPECT_LT(a, 1e-6);
}

TEST(Kernels, FourierConsistencyWithHarmonicForm) {
    // time-domain action of the full kernel on a smooth pulse matches the
    // inverse-transformed harmonic dyadic to well under 1%
    const GaussianSource pulse{4.0, 0.5};
    const Vec3 x = Vec3{0.8, -0.3, 0.4};
    const double rho = x.norm();
    const auto g = kernel(KernelModel::ClassicalFull);

    for (double tau : {4.0 + rho - 0.6, 4.0 + rho, 4.0 + rho + 0.9}) {
        const Mat3c direct = convolve_with(g, pulse, x, tau);

        // frequency route: (1/2pi) int domega g(x, omega) s_hat(omega) e^{-i omega tau},
        // s_hat(omega) = width sqrt(2 pi) exp(-omega^2 width^2 / 2 + i omega center)
        QuadratureOptions qopt;
        qopt.rel_tol = 1e-9;
        qopt.initial_panels = 256;
        const double w_max = 9.0 / pulse.width;
        Mat3c numeric;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const auto entry = integrate<complexd>(
                    [&](double omega) {
                        const complexd shat = pulse.width * std::sqrt(2.0 * pi) *
                                              std::exp(complexd(-0.5 * omega * omega * pulse.width *
                                                                    pulse.width,
                                                                omega * pulse.center));
                        return classical_harmonic(x, omega)(i, j) * shat *
                               std::exp(-iu * omega * tau) / (2.0 * pi);
                    },
                    -w_max, w_max, qopt);
                numeric(i, j) = entry.value;
            }
        }
        EXPECT_NEAR((direct - numeric).max_abs(), 0.0, 0.01 * (direct.max_abs() + 1e-12))
            << "tau=" << tau;
    }
}

TEST(Kernels, ZoneMapping) {
    EXPECT_EQ(zone_of_radial_power(1), ZoneFar);
    EXPECT_EQ(zone_of_radial_power(2), ZoneMid);
    EXPECT_EQ(zone_of_radial_power(3), ZoneNear);
    EXPECT_THROW(zone_of_radial_power(4), std::invalid_argument);
}
