#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "phaselab/pe_sim.hpp"
#include "phaselab/phase.hpp"
#include "phaselab/strategy.hpp"

namespace phaselab {

/// <psi_phi | psi_phi2> = sum_j beta_j^2 e^{2 pi i j (phi2 - phi)}, with the
/// phase difference reduced exactly.
std::complex<double> pairwise_overlap(const AmplitudeProfile& profile, const DyadicPhase& phi,
                                      const DyadicPhase& phi2);

/// Overlap between phases 0 and (r+1) 2^-k under paper_profile(k, ell),
/// written as a perturbed sum of (2^ell+1)-th roots of unity.
std::complex<double> overlap_closed_form(int k, int ell, std::uint64_t r);
/// Same sum with an arbitrary rounding shift `delta` (delta = 0 is the ideal case).
std::complex<double> overlap_closed_form(int k, int ell, std::uint64_t r, double delta);

/// Optimal success for two equiprobable pure states with |overlap| = c.
double helstrom_two(double overlap_magnitude);

struct PlusMinusOutcome {
    // P(outcome | hypothesis); outcome 0 decides `phi`, outcome 1 decides `phi2`.
    std::array<double, 2> given_phi{};
    std::array<double, 2> given_phi2{};

    double error_prob() const noexcept { return 0.5 * (given_phi[1] + given_phi2[0]); }
};

/// U_phi^j |+>, then a Hadamard and a computational-basis measurement.
PlusMinusOutcome fixed_plus_minus_measurement(std::uint64_t j_count, const DyadicPhase& phi,
                                              const DyadicPhase& phi2);

/// Hermitian PSD matrix of pairwise inner products with unit diagonal.
class GramMatrix {
public:
    static constexpr double kPsdTolerance = 1e-9;

    /// Validates Hermiticity, unit diagonal and PSD (DomainError otherwise).
    explicit GramMatrix(Eigen::MatrixXcd entries);

    static GramMatrix from_states(std::span<const CVector> states);

    Eigen::Index size() const noexcept { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const {
        return entries_(i, j);
    }
    double min_eigenvalue() const;

private:
    Eigen::MatrixXcd entries_;
};

/// Principal square root of a Hermitian PSD matrix; eigenvalues in
/// [-1e-9, 0) are clamped to zero, anything lower is a DomainError.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m);

enum class MeasurementKind { helstrom, pgm, paper_fourier };

const char* to_string(MeasurementKind kind) noexcept;

struct DiscriminationResult {
    double success_prob = 0.0;               // prior-weighted mean
    std::vector<double> per_state_success;
    MeasurementKind measurement_kind = MeasurementKind::pgm;

    double worst_case_success() const;
};

/// Square-root measurement success from the weighted Gram matrix
/// sqrt(p_i p_j) G_ij. Empty priors means uniform.
DiscriminationResult pgm_success(const GramMatrix& gram, std::span<const double> priors = {});

/// Gram matrix of the composite non-adaptive states over a promise set:
/// overlaps of the leading and main registers multiply.
GramMatrix strategy_gram(const NonadaptiveStrategy& strategy, const PromiseSet& set);

/// The explicit measurement: inverse QFT on the flattened ell-bit front end
/// picks the pair r', then the (2^ell+1)-outcome Fourier basis
/// sum_m omega^{sm} |m N / 2^ell> on the main register decides between
/// r' 2^-ell (s != r'+1) and its partner (s = r'+1). Exact, uniform prior.
DiscriminationResult paper_measurement_success(int k, int ell);

}  // namespace phaselab
