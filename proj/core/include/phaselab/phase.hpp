#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace phaselab {

/// A phase num / 2^bits, in turns (1 turn = 2*pi radians), held exactly.
///
/// All arithmetic is modulo one turn and happens on integer numerators, so
/// products j * phi never accumulate floating-point drift. Two phases with
/// different precision compare equal when they describe the same rational.
class DyadicPhase {
public:
    static constexpr int kMaxBits = 62;

    DyadicPhase() = default;
    /// Throws DomainError unless 0 <= bits <= kMaxBits and num < 2^bits.
    DyadicPhase(std::uint64_t num, int bits);

    std::uint64_t numerator() const noexcept { return num_; }
    int bits() const noexcept { return bits_; }
    std::uint64_t denominator() const noexcept { return std::uint64_t{1} << bits_; }
    double turns() const noexcept;

    /// Same value at a higher precision (bits >= this->bits()).
    DyadicPhase lifted(int bits) const;
    /// Smallest precision representing the same value.
    DyadicPhase reduced() const noexcept;

    /// (j * phi) mod 1.
    DyadicPhase times(std::uint64_t j) const noexcept;

    friend DyadicPhase operator+(const DyadicPhase& a, const DyadicPhase& b);
    friend DyadicPhase operator-(const DyadicPhase& a, const DyadicPhase& b);
    friend bool operator==(const DyadicPhase& a, const DyadicPhase& b) noexcept;
    friend bool operator<(const DyadicPhase& a, const DyadicPhase& b) noexcept;

private:
    std::uint64_t num_ = 0;
    int bits_ = 0;
};

/// e^{2 pi i j phi}; j * num is reduced mod 2^bits in integers first.
/// Quarter turns come out exact.
std::complex<double> unit_phase(std::uint64_t j, const DyadicPhase& phi);

/// e^{2 pi i num / 2^bits} for an already-reduced residue.
std::complex<double> unit_phase_residue(std::uint64_t residue, int bits);

/// The promise set F_ell: 2^ell pairs {r 2^-ell, r 2^-ell + (r+1) 2^-k}.
class PromiseSet {
public:
    int k() const noexcept { return k_; }
    int ell() const noexcept { return ell_; }
    std::size_t size() const noexcept { return phases_.size(); }
    std::size_t pair_count() const noexcept { return pairs_.size(); }

    /// Ascending; pair r occupies indices 2r and 2r+1.
    const std::vector<DyadicPhase>& phases() const noexcept { return phases_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept {
        return pairs_;
    }
    const DyadicPhase& low(std::size_t r) const { return phases_.at(pairs_.at(r).first); }
    const DyadicPhase& high(std::size_t r) const { return phases_.at(pairs_.at(r).second); }

    /// Index of the pair containing phi, or pair_count() if phi is not in the set.
    std::size_t pair_of(const DyadicPhase& phi) const noexcept;

    friend PromiseSet build_promise_set(int k, int ell);

private:
    int k_ = 0;
    int ell_ = 0;
    std::vector<DyadicPhase> phases_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Requires ell >= 1 and k >= 2 ell + 1 (DomainError otherwise).
PromiseSet build_promise_set(int k, int ell);

/// Smallest distance mod 1 between distinct phases. Throws on fewer than two.
DyadicPhase min_gap(std::span<const DyadicPhase> phases);
DyadicPhase min_gap(const PromiseSet& set);

void to_json(nlohmann::json& j, const PromiseSet& set);
/// Rebuilds F_ell from (k, ell) and rejects mismatching numerators.
PromiseSet promise_set_from_json(const nlohmann::json& j);

}  // namespace phaselab
