#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lumen/coupling.hpp"
#include "lumen/quadrature.hpp"
#include "lumen/transition.hpp"

using namespace lumen;

namespace {

const TransitionSpec& paper_transition() {
    static const TransitionSpec t = make_preset("hydrogen-paper");
    return t;
}

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    while (v.norm() < 1e-3) v = Vec3{g(rng), g(rng), g(rng)};
    return v.normalized();
}

}  // namespace

TEST(Cutoff, Values) {
    const auto& k = paper_transition().constants;
    EXPECT_EQ(coupling_cutoff(0.0, k), 1.0);

    // (2/3) a0 k = 1  ->  [1 + 1]^-2 = 1/4
    EXPECT_NEAR(coupling_cutoff(3.0 / (2.0 * k.a0), k), 0.25, 1e-15);

    // resonance: a0 k is a few 1e-3, so the rolloff is 1 - O(1e-5)
    const double k_res = paper_transition().omega0() / k.c;
    const double u = (2.0 / 3.0) * k.a0 * k_res;
    const double exact = 1.0 / ((1.0 + u * u) * (1.0 + u * u));
    EXPECT_NEAR(coupling_cutoff(k_res, k), exact, 1e-16);
    EXPECT_GT(1.0 - coupling_cutoff(k_res, k), 1e-6);
    EXPECT_LT(1.0 - coupling_cutoff(k_res, k), 3e-5);

    // monotone decreasing
    double prev = 1.0;
    for (double kk = 1e6; kk < 1e12; kk *= 3.0) {
        const double c = coupling_cutoff(kk, k);
        EXPECT_LT(c, prev + 1e-18);
        prev = c;
    }

    EXPECT_THROW(coupling_cutoff(-1.0, k), std::invalid_argument);
}

TEST(Coupling, OrthogonalPolarizationGivesZero) {
    // dipole along z, mode along z: both polarization vectors are in the
    // x-y plane, so every model yields a vanishing matrix element
    const auto& t = paper_transition();
    const ModeIndex mode{Vec3{0.0, 0.0, t.omega0() / t.constants.c}, 1};
    EXPECT_EQ(std::abs(coupling(CouplingModel::ErDipole, mode, t)), 0.0);
    EXPECT_EQ(std::abs(coupling(CouplingModel::ApExact, mode, t)), 0.0);
}

TEST(Coupling, RatioIdentities) {
    const auto& t = paper_transition();
    const double k_res = t.omega0() / t.constants.c;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> logk(-3.0, 3.0);
    std::uniform_int_distribution<int> pol(1, 2);

    int tested = 0;
    while (tested < 200) {
        const double k_norm = k_res * std::pow(10.0, logk(rng));
        const ModeIndex mode{random_unit(rng) * k_norm, pol(rng)};

        const complexd er = coupling(CouplingModel::ErDipole, mode, t);
        if (std::abs(er) < 1e-6 * std::abs(coupling(
                              CouplingModel::ErDipole,
                              ModeIndex{Vec3{k_norm, 0, 0}, 1}, t)))
            continue;  // nearly orthogonal overlap; ratio ill-defined
        const complexd ap = coupling(CouplingModel::ApDipole, mode, t);
        const complexd ap_exact = coupling(CouplingModel::ApExact, mode, t);

        const double ck_over_omega0 = t.constants.c * k_norm / t.omega0();
        EXPECT_NEAR(std::abs(er / ap - ck_over_omega0), 0.0, 1e-12 * ck_over_omega0);

        const double cut = coupling_cutoff(k_norm, t.constants);
        EXPECT_NEAR(std::abs(ap_exact / ap - cut), 0.0, 1e-12 * cut);
        ++tested;
    }
}

TEST(Coupling, InvalidInputs) {
    const auto& t = paper_transition();
    EXPECT_THROW(coupling(CouplingModel::ErDipole, ModeIndex{Vec3{}, 1}, t),
                 std::invalid_argument);
    EXPECT_THROW(coupling(CouplingModel::ErDipole, ModeIndex{Vec3{1e7, 0, 0}, 3}, t),
                 std::invalid_argument);
    EXPECT_THROW(coupling_model_from_string("bogus"), std::invalid_argument);
    EXPECT_EQ(coupling_model_from_string("ap-exact"), CouplingModel::ApExact);
}

TEST(Amplitudes, ExcitedDecay) {
    const auto& t = paper_transition();
    EXPECT_EQ(excited_amplitude(-1e-18, t), complexd(0.0));
    EXPECT_EQ(excited_amplitude(0.0, t), complexd(1.0));
    EXPECT_NEAR(std::abs(excited_amplitude(2.0 / t.gamma, t)), std::exp(-1.0), 1e-14);
}

TEST(Amplitudes, GroundModeAmplitude) {
    const auto& t = paper_transition();
    const double k_res = t.omega0() / t.constants.c;
    std::mt19937_64 rng(5);
    const Vec3 dir = Vec3{0.3, -0.2, 0.9}.normalized();
    const ModeIndex mode{dir * k_res, 1};

    EXPECT_EQ(ground_amplitude(mode, 0.0, CouplingModel::ApDipole, t), complexd(0.0));

    // orthogonal mode stays empty at all times
    const ModeIndex dark{Vec3{0.0, 0.0, k_res}, 2};
    EXPECT_EQ(std::abs(ground_amplitude(dark, 3.0 / t.gamma, CouplingModel::ErDipole, t)), 0.0);

    // resonant steady state: |c_g|^2 -> |G|^2 / (hbar gamma / 2)^2
    const complexd g = coupling(CouplingModel::ApDipole, mode, t);
    const double t_late = 80.0 / t.gamma;
    const double expected =
        std::norm(g) / std::pow(t.constants.hbar * 0.5 * t.gamma, 2);
    EXPECT_NEAR(std::norm(ground_amplitude(mode, t_late, CouplingModel::ApDipole, t)) / expected,
                1.0, 1e-12);

    // quadrature oracle for the time integral at finite time, off resonance
    const ModeIndex detuned{dir * (1.002 * k_res), 1};
    const double t_probe = 2.0 / t.gamma;
    const complexd g2 = coupling(CouplingModel::ApDipole, detuned, t);
    const double detuning = t.constants.c * detuned.k.norm() - t.omega0();
    QuadratureOptions qopt;
    qopt.rel_tol = 1e-12;
    qopt.initial_panels = 256;
    const auto integral = integrate<complexd>(
        [&](double tp) {
            return std::exp(complexd(-0.5 * t.gamma * tp, detuning * tp));
        },
        0.0, t_probe, qopt);
    const complexd oracle = (-iu / t.constants.hbar) * g2 * integral.value;
    const complexd closed = ground_amplitude(detuned, t_probe, CouplingModel::ApDipole, t);
    EXPECT_NEAR(std::abs(closed - oracle) / std::abs(oracle), 0.0, 1e-8);
    (void)rng;
}

TEST(Amplitudes, GroundModeSatisfiesEquationOfMotion) {
    // centered finite difference of the closed form against the right-hand
    // side of the mode equation, at a relative step of 1e-6 / omega0
    const auto& t = paper_transition();
    const double k_res = t.omega0() / t.constants.c;
    const Vec3 dir = Vec3{0.1, 0.8, 0.5}.normalized();

    for (double k_scale : {0.97, 1.0, 1.05}) {
        const ModeIndex mode{dir * (k_scale * k_res), 2};
        const complexd g = coupling(CouplingModel::ErDipole, mode, t);
        const double detuning = t.constants.c * mode.k.norm() - t.omega0();
        const double t0 = 0.6 / t.gamma;
        const double h = 1e-6 / t.omega0();

        const complexd fd = (ground_amplitude(mode, t0 + h, CouplingModel::ErDipole, t) -
                             ground_amplitude(mode, t0 - h, CouplingModel::ErDipole, t)) /
                            (2.0 * h);
        const complexd rhs = (-iu / t.constants.hbar) * g *
                             std::exp(complexd(-0.5 * t.gamma * t0, detuning * t0));
        EXPECT_NEAR(std::abs(fd - rhs) / std::abs(rhs), 0.0, 1e-6);
    }
}
