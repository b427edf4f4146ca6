#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "phaselab/discrim.hpp"
#include "phaselab/error.hpp"

using namespace phaselab;

namespace {

std::complex<double> inner(const CVector& a, const CVector& b) {
    std::complex<double> s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

// Oracle: Helstrom success from the eigenvalues of (rho_0 - rho_1) / 2.
double helstrom_by_eigen(double c) {
    Eigen::Vector2d a(1.0, 0.0);
    Eigen::Vector2d b(c, std::sqrt(1.0 - c * c));
    const Eigen::Matrix2d m = 0.5 * (a * a.transpose() - b * b.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    return 0.5 + 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST(PairwiseOverlap, PointSupportIsOne) {
    const auto o = pairwise_overlap(AmplitudeProfile::basis(7, 0), DyadicPhase(1, 4),
                                    DyadicPhase(9, 4));
    EXPECT_EQ(o, std::complex<double>(1.0, 0.0));
}

TEST(PairwiseOverlap, MatchesExplicitInnerProduct) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> b(30);
        double n2 = 0.0;
        for (auto& v : b) {
            v = u(rng);
            n2 += v * v;
        }
        for (auto& v : b) {
            v /= std::sqrt(n2);
        }
        const AmplitudeProfile p(b);
        const DyadicPhase x(rng() & 1023u, 10);
        const DyadicPhase y(rng() & 1023u, 10);
        const auto oracle = inner(final_state(p, x), final_state(p, y));
        EXPECT_NEAR(std::abs(pairwise_overlap(p, x, y) - oracle), 0.0, 1e-12);
        EXPECT_LE(std::abs(pairwise_overlap(p, x, y)), 1.0 + 1e-15);
    }
}

TEST(PairwiseOverlap, UnitMagnitudeWhenPhaseAnnihilatesSupport) {
    // Support on multiples of 4, phase difference 1/4: every term is 1.
    std::vector<double> b(13, 0.0);
    b[0] = b[4] = b[8] = b[12] = 0.5;
    const AmplitudeProfile p(b);
    EXPECT_NEAR(std::abs(pairwise_overlap(p, DyadicPhase(0, 2), DyadicPhase(1, 2))), 1.0, 1e-15);
    EXPECT_LT(std::abs(pairwise_overlap(p, DyadicPhase(0, 3), DyadicPhase(1, 3))), 1.0 - 1e-3);
}

TEST(OverlapClosedForm, ZeroDeltaIsExactlyOrthogonal) {
    for (int ell = 1; ell <= 4; ++ell) {
        for (std::uint64_t r = 0; r < (1u << ell); ++r) {
            EXPECT_LE(std::abs(overlap_closed_form(12, ell, r, 0.0)), 1e-15);
        }
    }
}

TEST(OverlapClosedForm, PerturbationBound) {
    const int k = 16;
    const int ell = 2;
    EXPECT_LE(std::abs(overlap_closed_form(k, ell, 3)),
              2.0 * std::numbers::pi * std::ldexp(1.0, 3 * ell - 1 - k));
}

TEST(OverlapClosedForm, AgreesWithPairwiseOverlap) {
    for (int ell = 1; ell <= 3; ++ell) {
        const int k = 16;
        const auto profile = paper_profile(k, ell).profile;
        const auto set = build_promise_set(k, ell);
        for (std::uint64_t r = 0; r < set.pair_count(); ++r) {
            const auto direct = pairwise_overlap(profile, DyadicPhase(0, k),
                                                 set.high(r) - set.low(r));
            EXPECT_NEAR(std::abs(overlap_closed_form(k, ell, r) - direct), 0.0, 1e-12);
        }
    }
    EXPECT_THROW(overlap_closed_form(16, 1, 2), DomainError);
}

TEST(Helstrom, Endpoints) {
    EXPECT_DOUBLE_EQ(helstrom_two(0.0), 1.0);
    EXPECT_DOUBLE_EQ(helstrom_two(1.0), 0.5);
    EXPECT_THROW(helstrom_two(1.5), DomainError);
    EXPECT_THROW(helstrom_two(-0.1), DomainError);
}

TEST(Helstrom, MatchesEigenOracle) {
    const double c = std::abs(std::cos(0.47 * std::numbers::pi));
    EXPECT_NEAR(helstrom_two(c), helstrom_by_eigen(c), 1e-12);
    EXPECT_NEAR(helstrom_two(c), 0.9978, 1e-4);
    for (double x : {0.1, 0.3, 0.77, 0.99}) {
        EXPECT_NEAR(helstrom_two(x), helstrom_by_eigen(x), 1e-12);
    }
}

TEST(PlusMinus, NearHalfTurnCount) {
    const int k = 16;
    const auto j = static_cast<std::uint64_t>(std::llround(0.47 * std::ldexp(1.0, k)));
    const auto res = fixed_plus_minus_measurement(j, DyadicPhase(0, k), DyadicPhase(1, k));
    EXPECT_DOUBLE_EQ(res.given_phi[0], 1.0);
    EXPECT_NEAR(res.given_phi2[1], 0.991, 0.002);
    EXPECT_NEAR(res.given_phi2[0] + res.given_phi2[1], 1.0, 1e-15);
}

TEST(PlusMinus, HalfTurnIsPerfect) {
    const int k = 10;
    const auto res =
        fixed_plus_minus_measurement(std::uint64_t{1} << (k - 1), DyadicPhase(0, k), DyadicPhase(1, k));
    EXPECT_DOUBLE_EQ(res.error_prob(), 0.0);
}

TEST(GramMatrix, ValidatesInvariants) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(2, 2);
    g(0, 1) = 2.0;
    g(1, 0) = 2.0;
    EXPECT_THROW(GramMatrix{g}, DomainError);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
    h(0, 1) = 0.5;
    EXPECT_THROW(GramMatrix{h}, DomainError);
    Eigen::MatrixXcd d = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(GramMatrix{d}, DomainError);
}

TEST(GramMatrix, FinalStateFamiliesArePsd) {
    for (int ell = 1; ell <= 3; ++ell) {
        const auto g = strategy_gram(make_nonadaptive_strategy(12, ell), build_promise_set(12, ell));
        EXPECT_GE(g.min_eigenvalue(), -1e-9);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            EXPECT_NEAR(std::abs(g(i, i) - 1.0), 0.0, 1e-12);
        }
    }
}

TEST(PsdSqrt, SquaresBack) {
    Eigen::MatrixXcd m(2, 2);
    m << 2.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0), 2.0;
    const auto s = psd_sqrt(m);
    EXPECT_LE((s * s - m).norm(), 1e-12);
    Eigen::MatrixXcd neg = -Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(psd_sqrt(neg), DomainError);
}

TEST(Pgm, OrthogonalStatesAreCertain) {
    const GramMatrix g(Eigen::MatrixXcd::Identity(4, 4));
    const auto r = pgm_success(g);
    EXPECT_NEAR(r.success_prob, 1.0, 1e-15);
    EXPECT_EQ(r.measurement_kind, MeasurementKind::pgm);
}

TEST(Pgm, TwoStatesMatchHelstrom) {
    for (double c : {0.0, 0.2, 0.5, 0.9, 0.999}) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
        m(0, 1) = std::polar(c, 0.7);
        m(1, 0) = std::conj(m(0, 1));
        EXPECT_NEAR(pgm_success(GramMatrix(m)).success_prob, helstrom_two(c), 1e-10);
    }
}

TEST(Pgm, GlobalPhaseInvariance) {
    const auto g = strategy_gram(make_nonadaptive_strategy(10, 2), build_promise_set(10, 2));
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXcd d(g.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        d(i) = std::polar(1.0, u(rng));
    }
    const Eigen::MatrixXcd rotated = d.asDiagonal().inverse() * g.entries() * d.asDiagonal();
    EXPECT_NEAR(pgm_success(g).success_prob, pgm_success(GramMatrix(rotated)).success_prob, 1e-12);
}

TEST(Pgm, ExplicitEllTwoGram) {
    const auto g = strategy_gram(make_nonadaptive_strategy(16, 2), build_promise_set(16, 2));
    EXPECT_GE(pgm_success(g).success_prob, 1.0 - 1e-6);
}

TEST(Pgm, PriorsWeightTheMean) {
    const GramMatrix g(Eigen::MatrixXcd::Identity(3, 3));
    const std::vector<double> priors{0.2, 0.3, 0.5};
    const auto r = pgm_success(g, priors);
    EXPECT_NEAR(r.success_prob, 1.0, 1e-12);
    const std::vector<double> bad{0.5, 0.6, 0.1};
    EXPECT_THROW(pgm_success(g, bad), DomainError);
}

TEST(FourierMeasurement, EllOneWorstCase) {
    const auto r = paper_measurement_success(16, 1);
    EXPECT_EQ(r.measurement_kind, MeasurementKind::paper_fourier);
    EXPECT_GE(r.worst_case_success(), 1.0 - std::ldexp(1.0, -16 + 4));
}

TEST(FourierMeasurement, NeverBeatsPgmOnEllThree) {
    // The square-root measurement on the same states does at least as well here.
    const int k = 16;
    const auto paper = paper_measurement_success(k, 3);
    const auto pgm = pgm_success(strategy_gram(make_nonadaptive_strategy(k, 3), build_promise_set(k, 3)));
    EXPECT_LE(paper.success_prob, pgm.success_prob + 1e-9);
    EXPECT_GE(paper.worst_case_success(), 1.0 - 1e-4);
}

TEST(FourierMeasurement, SuccessFactorsIntoFrontAndBack) {
    // Per state: P(front picks the right pair) * P(Fourier outcome is correct).
    const int k = 12;
    for (int ell = 1; ell <= 3; ++ell) {
        const auto set = build_promise_set(k, ell);
        const auto prof = paper_profile(k, ell);
        const auto res = paper_measurement_success(k, ell);
        const std::size_t q = (std::size_t{1} << ell) + 1;
        const std::size_t stride = prof.budget >> ell;
        const double d = std::ldexp(1.0, ell);
        for (std::size_t i = 0; i < set.size(); ++i) {
            const DyadicPhase& phi = set.phases()[i];
            const std::size_t r = set.pair_of(phi);
            std::complex<double> front{};
            for (int j = 0; j < static_cast<int>(d); ++j) {
                front += std::polar(1.0 / d, 2.0 * std::numbers::pi * j * (phi.turns() - r / d));
            }
            const bool upper = phi == set.high(r);
            std::complex<double> hit{};
            for (std::size_t m = 0; m < q; ++m) {
                const double t = static_cast<double>(m * (r + 1) % q) / static_cast<double>(q);
                hit += std::polar(1.0, -2.0 * std::numbers::pi * t) *
                       unit_phase(m * stride, phi.lifted(k) - set.low(r).lifted(k));
            }
            const double p_hit = std::norm(hit) / static_cast<double>(q * q);
            const double back = upper ? p_hit : 1.0 - p_hit;
            EXPECT_NEAR(res.per_state_success[i], std::norm(front) * back, 1e-12);
        }
    }
}
