#include "phaselab/strategy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "phaselab/discrim.hpp"
#include "phaselab/error.hpp"

namespace phaselab {

namespace {

void check_profile_args(int k, int ell) {
    if (ell < 1 || k < 2 * ell + 1) {
        throw DomainError("need ell >= 1 and k >= 2*ell+1 (k=" + std::to_string(k) +
                          ", ell=" + std::to_string(ell) + ")");
    }
}

// round(a / b) for positive integers; callers guarantee no exact halves.
std::uint64_t round_div(std::uint64_t a, std::uint64_t b) { return (2 * a + b) / (2 * b); }

}  // namespace

AmplitudeProfile::AmplitudeProfile(std::vector<double> beta) : beta_(std::move(beta)) {
    if (beta_.empty()) {
        throw DomainError("AmplitudeProfile: empty amplitude vector");
    }
    double norm2 = 0.0;
    for (double b : beta_) {
        if (!(b >= 0.0)) {
            throw DomainError("AmplitudeProfile: amplitudes must be nonnegative");
        }
        norm2 += b * b;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw DomainError("AmplitudeProfile: squared amplitudes sum to " +
                          std::to_string(norm2));
    }
}

AmplitudeProfile AmplitudeProfile::basis(std::size_t budget, std::size_t j) {
    if (j > budget) {
        throw DomainError("AmplitudeProfile::basis: index beyond budget");
    }
    std::vector<double> beta(budget + 1, 0.0);
    beta[j] = 1.0;
    return AmplitudeProfile(std::move(beta));
}

AmplitudeProfile AmplitudeProfile::uniform(std::size_t budget) {
    return AmplitudeProfile(
        std::vector<double>(budget + 1, 1.0 / std::sqrt(static_cast<double>(budget + 1))));
}

std::vector<std::size_t> AmplitudeProfile::support() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < beta_.size(); ++j) {
        if (beta_[j] != 0.0) {
            out.push_back(j);
        }
    }
    return out;
}

CVector final_state(const AmplitudeProfile& profile, const DyadicPhase& phi) {
    CVector out(profile.dim());
    for (std::size_t j = 0; j < profile.dim(); ++j) {
        if (profile[j] != 0.0) {
            out[j] = profile[j] * unit_phase(j, phi);
        }
    }
    return out;
}

AmplitudeProfile collapse_to_weight_profile(std::span<const std::complex<double>> alpha,
                                            std::size_t ancilla_dim) {
    if (ancilla_dim == 0 || alpha.empty() || alpha.size() % ancilla_dim != 0) {
        throw DomainError("collapse_to_weight_profile: length not a multiple of ancilla_dim");
    }
    const std::size_t strings = alpha.size() / ancilla_dim;
    if (!std::has_single_bit(strings)) {
        throw DomainError("collapse_to_weight_profile: bitstring count is not a power of two");
    }
    const int n = std::countr_zero(strings);
    if (n > 20) {
        throw ResourceError("collapse_to_weight_profile: N > 20");
    }
    std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
    double total = 0.0;
    for (std::size_t x = 0; x < strings; ++x) {
        double w = 0.0;
        for (std::size_t a = 0; a < ancilla_dim; ++a) {
            w += std::norm(alpha[x * ancilla_dim + a]);
        }
        weight[static_cast<std::size_t>(std::popcount(x))] += w;
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError("collapse_to_weight_profile: alpha is not normalized");
    }
    for (auto& w : weight) {
        w = std::sqrt(w / total);
    }
    return AmplitudeProfile(std::move(weight));
}

AmplitudeProfile profile_convolve_squared(const AmplitudeProfile& first,
                                          const AmplitudeProfile& second) {
    std::vector<double> sq(first.budget() + second.budget() + 1, 0.0);
    for (std::size_t a = 0; a < first.dim(); ++a) {
        const double wa = first[a] * first[a];
        if (wa == 0.0) {
            continue;
        }
        for (std::size_t b = 0; b < second.dim(); ++b) {
            sq[a + b] += wa * second[b] * second[b];
        }
    }
    double total = 0.0;
    for (double w : sq) {
        total += w;
    }
    for (auto& w : sq) {
        w = std::sqrt(w / total);
    }
    return AmplitudeProfile(std::move(sq));
}

PaperProfile paper_profile(int k, int ell) {
    check_profile_args(k, ell);
    if (k > kMaxProfileBits) {
        throw ResourceError("paper_profile: k > " + std::to_string(kMaxProfileBits));
    }
    const std::uint64_t pairs = std::uint64_t{1} << ell;
    const std::uint64_t block = pairs * pairs;
    // Target 2^{ell+k} / (2^ell + 1); its ratio to 4^ell has odd denominator,
    // so there is never a rounding tie.
    const std::uint64_t budget = block * round_div(std::uint64_t{1} << (k - ell), pairs + 1);
    const auto den = static_cast<std::int64_t>(pairs + 1);
    const std::int64_t num =
        static_cast<std::int64_t>(budget) * den - (std::int64_t{1} << (ell + k));

    // |Delta| < 2^{2 ell - 1}  <=>  |num| < 2^{2 ell - 1} (2^ell + 1).
    if (std::llabs(num) * 2 >= static_cast<std::int64_t>(block) * den) {
        throw std::logic_error("paper_profile: rounding shift out of bounds");
    }
    if ((budget / pairs) % pairs != 0) {
        throw std::logic_error("paper_profile: N / 2^ell not a multiple of 2^ell");
    }

    std::vector<double> beta(budget + 1, 0.0);
    const double amp = 1.0 / std::sqrt(static_cast<double>(pairs + 1));
    for (std::uint64_t m = 0; m <= pairs; ++m) {
        beta[m * (budget / pairs)] = amp;
    }
    return PaperProfile{budget, num, den, AmplitudeProfile(std::move(beta))};
}

NonadaptiveStrategy make_nonadaptive_strategy(int k, int ell) {
    auto paper = paper_profile(k, ell);
    const std::uint64_t lead_cost = (std::uint64_t{1} << ell) - 1;
    return NonadaptiveStrategy{std::move(paper.profile), AmplitudeProfile::uniform(lead_cost),
                               paper.budget + lead_cost};
}

std::uint64_t stage2_count(int k, int ell, std::uint64_t r) {
    check_profile_args(k, ell);
    const std::uint64_t pairs = std::uint64_t{1} << ell;
    if (r >= pairs) {
        throw DomainError("stage2_count: pair index out of range");
    }
    return pairs * round_div(std::uint64_t{1} << (k - 1 - ell), r + 1);
}

AdaptiveStrategy adaptive_protocol(int k, int ell) {
    check_profile_args(k, ell);
    const PromiseSet set = build_promise_set(k, ell);
    AdaptiveStrategy out;
    out.k = k;
    out.ell = ell;
    out.stage1_cost = (std::uint64_t{1} << ell) - 1;

    for (std::size_t r = 0; r < set.pair_count(); ++r) {
        const std::uint64_t count = stage2_count(k, ell, r);
        // Relative phase of U^M|+> between the two members of pair r.
        const DyadicPhase relative = (set.high(r) - set.low(r)).times(count);
        const double overlap = std::abs(1.0 + unit_phase(1, relative)) / 2.0;
        out.stage2_costs.push_back(count);
        out.stage2_success.push_back(helstrom_two(std::min(overlap, 1.0)));
    }
    out.worst_case_cost =
        out.stage1_cost + *std::max_element(out.stage2_costs.begin(), out.stage2_costs.end());

    for (const auto& phi : set.phases()) {
        const std::size_t r = set.pair_of(phi);
        const double stage1 = pe_distribution(ell, phi)[r];
        const double err = 1.0 - stage1 * out.stage2_success[r];
        out.per_phase_error.push_back(std::clamp(err, 0.0, 1.0));
    }
    out.error_prob = *std::max_element(out.per_phase_error.begin(), out.per_phase_error.end());
    return out;
}

}  // namespace phaselab
