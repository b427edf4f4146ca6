#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "phaselab/error.hpp"
#include "phaselab/geometry.hpp"

using namespace phaselab;

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

}  // namespace

TEST(ControlledPhase, MinFidelityMatchesClosedForm) {
    for (double phi : {0.0, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.77, -0.2, 1.4}) {
        const auto r = controlled_phase_min_fidelity(phi);
        const double c = std::cos(kPi * phi);
        EXPECT_NEAR(r.closed_form, c * c, 1e-15);
        EXPECT_NEAR(r.numeric, r.closed_form, 1e-8) << "phi=" << phi;
    }
    EXPECT_NEAR(controlled_phase_min_fidelity(0.5).numeric, 0.0, 1e-8);
    EXPECT_NEAR(controlled_phase_min_fidelity(0.3).argmin_z, 0.5, 1e-4);
}

TEST(GramIdentity, EquilateralAndDegenerate) {
    const auto eq = gram_det_identity(kPi / 3, kPi / 3, kPi / 3);
    EXPECT_NEAR(eq.lhs, 0.5, 1e-14);
    EXPECT_NEAR(eq.rhs, 0.5, 1e-14);
    // Degenerate: gamma = alpha + beta gives zero.
    const auto deg = gram_det_identity(0.3, 0.5, 0.8);
    EXPECT_NEAR(deg.lhs, 0.0, 1e-14);
    EXPECT_NEAR(deg.rhs, 0.0, 1e-14);
    EXPECT_THROW(gram_det_identity(2.0, 0.1, 0.1), DomainError);
}

TEST(GramIdentity, RandomAngles) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, kPi / 2);
    for (int i = 0; i < 1000; ++i) {
        const auto g = gram_det_identity(u(rng), u(rng), u(rng));
        EXPECT_NEAR(g.lhs, g.rhs, 1e-12);
    }
}

TEST(StateTriple, RandomTriplesSatisfyTriangleInequality) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t dim = 2 + (i % 7);
        StateTriple t(random_state(dim, rng), random_state(dim, rng), random_state(dim, rng));
        EXPECT_TRUE(angle_triangle_check(t));
        EXPECT_GE(t.gram_determinant(), -1e-12);
    }
}

TEST(StateTriple, GramDeterminantMatchesIdentityForRealStates) {
    // For real states with nonnegative overlaps the Gram matrix is built from the cosines.
    const CVector a{1.0, 0.0, 0.0};
    const CVector b{std::cos(0.4), std::sin(0.4), 0.0};
    const CVector c{std::cos(0.7), std::sin(0.7) * std::cos(0.9), std::sin(0.7) * std::sin(0.9)};
    StateTriple t(a, b, c);
    const auto g = gram_det_identity(t.alpha(), t.beta(), t.gamma());
    EXPECT_NEAR(t.gram_determinant(), g.lhs, 1e-12);
}

TEST(StateTriple, AnglesIgnoreGlobalPhase) {
    std::mt19937_64 rng(3);
    const auto a = random_state(4, rng);
    const auto b = random_state(4, rng);
    CVector b2 = b;
    for (auto& z : b2) {
        z *= std::polar(1.0, 1.234);
    }
    EXPECT_NEAR(state_angle(a, b), state_angle(a, b2), 1e-14);
}

TEST(StateTriple, Validation) {
    EXPECT_THROW(StateTriple(CVector{1.0, 1.0}, CVector{1.0, 0.0}, CVector{0.0, 1.0}), DomainError);
    EXPECT_THROW(StateTriple(CVector{1.0, 0.0}, CVector{1.0, 0.0, 0.0}, CVector{0.0, 1.0}),
                 DomainError);
}

TEST(ControlledPhase, AngleBoundedByPhase) {
    std::mt19937_64 rng(5);
    for (double phi : {0.01, 0.1, 0.2, 0.35, 0.5}) {
        for (int i = 0; i < 200; ++i) {
            const StateVector psi(random_state(8, rng));
            EXPECT_LE(controlled_phase_angle(psi, phi), kPi * phi + 1e-8);
        }
    }
    // Worst case: equal weight on |11> and the rest.
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector psi(CVector{s, 0.0, 0.0, s});
    EXPECT_NEAR(controlled_phase_angle(psi, 0.2), kPi * 0.2, 1e-12);
}

TEST(RandomState, IsNormalized) {
    std::mt19937_64 rng(1);
    const auto v = random_state(16, rng);
    double n = 0.0;
    for (const cd& z : v) {
        n += std::norm(z);
    }
    EXPECT_NEAR(n, 1.0, 1e-14);
    EXPECT_THROW(random_state(0, rng), DomainError);
}
