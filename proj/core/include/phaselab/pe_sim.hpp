#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "phaselab/phase.hpp"

namespace phaselab {

using CVector = std::vector<std::complex<double>>;

/// Dense n-qubit register. Basis index j = sum_q bit_q 2^q.
class StateVector {
public:
    static constexpr int kMaxQubits = 24;

    /// |0...0> on `qubits` qubits.
    explicit StateVector(int qubits);
    /// Adopts `amplitudes`; length must be a power of two and the norm 1 (1e-10).
    explicit StateVector(CVector amplitudes);

    int qubits() const noexcept { return qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    const CVector& amplitudes() const noexcept { return amps_; }
    std::complex<double> operator[](std::size_t i) const { return amps_[i]; }
    double norm() const noexcept;

    void apply_hadamard(int q);
    void apply_cnot(int control, int target);
    /// diag(1, phase) on qubit q.
    void apply_phase(int q, std::complex<double> phase);

private:
    void check_qubit(int q) const;

    int qubits_;
    CVector amps_;
};

struct OutcomeDistribution {
    std::vector<double> probabilities;

    std::size_t size() const noexcept { return probabilities.size(); }
    double operator[](std::size_t m) const { return probabilities[m]; }
    double total() const noexcept;
    std::size_t argmax() const noexcept;
    double total_variation(const OutcomeDistribution& other) const;
};

/// Discrete Fourier transform with the quantum convention
/// (Q x)_m = D^{-1/2} sum_j e^{+2 pi i jm/D} x_j, for any length D.
CVector qft(std::span<const std::complex<double>> x);
CVector inverse_qft(std::span<const std::complex<double>> x);

/// Closed-form output law of k-bit phase estimation (Fejer kernel).
/// Exact phases put unit mass on their numerator.
OutcomeDistribution pe_distribution(int k, const DyadicPhase& phi);
OutcomeDistribution pe_distribution(int k, double phi_turns);

/// Explicit circuit: Hadamards, controlled U^{2^q}, inverse QFT. k <= 12.
/// The eigenstate register is |1>, so controlled-U acts as a diagonal phase.
OutcomeDistribution pe_simulate(int k, const DyadicPhase& phi);
OutcomeDistribution pe_simulate(int k, double phi_turns);

inline constexpr int kMaxSimulatedBits = 12;
inline constexpr int kMaxCatQubits = 10;

/// Prepares (|0^p> + |1^p>)/sqrt2, applies U_phi on every qubit, undoes the
/// CNOT ladder and returns the first qubit. Throws std::logic_error if the
/// remaining qubits are not back in |0> or the phase is not e^{2 pi i p phi}.
std::array<std::complex<double>, 2> cat_flatten_equiv(int p, const DyadicPhase& phi);
std::array<std::complex<double>, 2> cat_flatten_equiv(int p, double phi_turns);

}  // namespace phaselab
