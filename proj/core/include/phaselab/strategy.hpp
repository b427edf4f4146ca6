#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phaselab/pe_sim.hpp"
#include "phaselab/phase.hpp"

namespace phaselab {

/// Nonnegative unit vector (beta_0, ..., beta_N) over total application
/// counts. Any non-adaptive protocol with N uses of U_phi reduces to one.
class AmplitudeProfile {
public:
    /// Throws DomainError on negative entries, empty input or norm != 1 (1e-10).
    explicit AmplitudeProfile(std::vector<double> beta);

    /// e_j in dimension budget + 1.
    static AmplitudeProfile basis(std::size_t budget, std::size_t j);
    /// Equal weight on 0..budget (flattened standard phase estimation).
    static AmplitudeProfile uniform(std::size_t budget);

    std::size_t budget() const noexcept { return beta_.size() - 1; }
    std::size_t dim() const noexcept { return beta_.size(); }
    const std::vector<double>& beta() const noexcept { return beta_; }
    double operator[](std::size_t j) const { return beta_[j]; }
    /// Indices with nonzero weight, ascending.
    std::vector<std::size_t> support() const;

private:
    std::vector<double> beta_;
};

/// sum_j beta_j e^{2 pi i j phi} |j>.
CVector final_state(const AmplitudeProfile& profile, const DyadicPhase& phi);

/// beta_j = sqrt(sum_{|x| = j} |alpha_x|^2) for an initial state over N-bit
/// strings x (alpha laid out as alpha[x * ancilla_dim + a]). N <= 20.
AmplitudeProfile collapse_to_weight_profile(std::span<const std::complex<double>> alpha,
                                            std::size_t ancilla_dim = 1);

/// Two registers run side by side: squared profiles convolve.
AmplitudeProfile profile_convolve_squared(const AmplitudeProfile& first,
                                          const AmplitudeProfile& second);

struct PaperProfile {
    std::uint64_t budget = 0;  // N
    // N - 2^ell 2^k / (2^ell + 1) = delta_numerator / (2^ell + 1).
    std::int64_t delta_numerator = 0;
    std::int64_t delta_denominator = 1;
    AmplitudeProfile profile;

    double delta() const noexcept {
        return static_cast<double>(delta_numerator) / static_cast<double>(delta_denominator);
    }
};

inline constexpr int kMaxProfileBits = 24;

/// N = nearest multiple of 4^ell to 2^ell 2^k / (2^ell + 1); uniform weight
/// 1/sqrt(2^ell + 1) on the multiples of N / 2^ell.
PaperProfile paper_profile(int k, int ell);

struct NonadaptiveStrategy {
    AmplitudeProfile profile;
    std::optional<AmplitudeProfile> leading_profile;
    std::uint64_t total_cost = 0;
};

/// Flattened ell-bit phase estimation (2^ell - 1 uses) next to paper_profile.
NonadaptiveStrategy make_nonadaptive_strategy(int k, int ell);

struct AdaptiveStrategy {
    int k = 0;
    int ell = 0;
    std::uint64_t stage1_cost = 0;
    std::vector<std::uint64_t> stage2_costs;     // M_r per pair
    std::vector<double> stage2_success;          // Helstrom success per pair
    std::vector<double> per_phase_error;         // aligned with PromiseSet::phases()
    std::uint64_t worst_case_cost = 0;
    double error_prob = 0.0;                     // worst case over F_ell
};

/// Stage 1: exact ell-bit phase estimation picks the pair. Stage 2: prepare
/// U^{M_r}|+> with M_r = 2^ell round(2^{k-1} / ((r+1) 2^ell)) and measure
/// with the two-state Helstrom measurement. Probabilities are exact.
AdaptiveStrategy adaptive_protocol(int k, int ell);

/// M_r for pair r.
std::uint64_t stage2_count(int k, int ell, std::uint64_t r);

}  // namespace phaselab
