#include "phaselab/pe_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxDistributionBits = 26;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::complex<double> polar_turns(double turns) {
    const double frac = turns - std::floor(turns);
    return std::polar(1.0, kTwoPi * frac);
}

CVector fourier(std::span<const std::complex<double>> x, double sign) {
    const std::size_t dim = x.size();
    CVector twiddle(dim);
    for (std::size_t t = 0; t < dim; ++t) {
        twiddle[t] = std::polar(1.0, sign * kTwoPi * static_cast<double>(t) /
                                         static_cast<double>(dim));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    CVector out(dim);
    for (std::size_t m = 0; m < dim; ++m) {
        std::complex<double> acc = 0.0;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < dim; ++j) {
            acc += twiddle[idx] * x[j];
            idx += m;
            if (idx >= dim) {
                idx -= dim;
            }
        }
        out[m] = acc * scale;
    }
    return out;
}

void check_finite(double phi_turns, const char* who) {
    if (!std::isfinite(phi_turns)) {
        throw DomainError(std::string(who) + ": phase must be finite");
    }
}

void check_bits(int k, int max_bits) {
    if (k < 1) {
        throw DomainError("phase estimation needs k >= 1");
    }
    if (k > max_bits) {
        throw ResourceError("k=" + std::to_string(k) + " exceeds limit " +
                            std::to_string(max_bits));
    }
}

template <class PhaseOfPower>
OutcomeDistribution simulate_circuit(int k, PhaseOfPower&& phase_of_power) {
    check_bits(k, kMaxSimulatedBits);
    StateVector state(k);
    for (int q = 0; q < k; ++q) {
        state.apply_hadamard(q);
    }
    for (int q = 0; q < k; ++q) {
        state.apply_phase(q, phase_of_power(std::uint64_t{1} << q));
    }
    const CVector out = inverse_qft(state.amplitudes());
    OutcomeDistribution dist;
    dist.probabilities.resize(out.size());
    std::transform(out.begin(), out.end(), dist.probabilities.begin(),
                   [](const std::complex<double>& a) { return std::norm(a); });
    return dist;
}

template <class Phase>
std::array<std::complex<double>, 2> run_cat(int p, Phase&& unit) {
    if (p < 1 || p > kMaxCatQubits) {
        throw ResourceError("cat_flatten_equiv: p=" + std::to_string(p) + " outside [1, " +
                            std::to_string(kMaxCatQubits) + "]");
    }
    StateVector state(p);
    state.apply_hadamard(0);
    for (int t = 1; t < p; ++t) {
        state.apply_cnot(0, t);
    }
    const std::complex<double> u = unit(1);
    for (int q = 0; q < p; ++q) {
        state.apply_phase(q, u);
    }
    for (int t = p - 1; t >= 1; --t) {
        state.apply_cnot(0, t);
    }

    for (std::size_t i = 2; i < state.dim(); ++i) {
        if (std::abs(state[i]) > 1e-10) {
            throw std::logic_error("cat_flatten_equiv: ancilla qubits not returned to |0>");
        }
    }
    const std::complex<double> expected = unit(static_cast<std::uint64_t>(p)) / std::sqrt(2.0);
    if (std::abs(state[0] - 1.0 / std::sqrt(2.0)) > 1e-10 ||
        std::abs(state[1] - expected) > 1e-10) {
        throw std::logic_error("cat_flatten_equiv: first qubit does not carry the p-fold phase");
    }
    return {state[0], state[1]};
}

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
    if (qubits < 0 || qubits > kMaxQubits) {
        throw ResourceError("StateVector: " + std::to_string(qubits) + " qubits not supported");
    }
    amps_.assign(std::size_t{1} << qubits, 0.0);
    amps_[0] = 1.0;
}

StateVector::StateVector(CVector amplitudes) : qubits_(0), amps_(std::move(amplitudes)) {
    if (!is_power_of_two(amps_.size())) {
        throw DomainError("StateVector: length is not a power of two");
    }
    while ((std::size_t{1} << qubits_) < amps_.size()) {
        ++qubits_;
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw DomainError("StateVector: amplitudes are not normalized");
    }
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= qubits_) {
        throw DomainError("StateVector: qubit index " + std::to_string(q) + " out of range");
    }
}

void StateVector::apply_hadamard(int q) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) == 0) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i | bit];
            amps_[i] = h * (a0 + a1);
            amps_[i | bit] = h * (a0 - a1);
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw DomainError("StateVector: CNOT control equals target");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            std::swap(amps_[i], amps_[i | tbit]);
        }
    }
}

void StateVector::apply_phase(int q, std::complex<double> phase) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) != 0) {
            amps_[i] *= phase;
        }
    }
}

double OutcomeDistribution::total() const noexcept {
    double s = 0.0;
    for (double p : probabilities) {
        s += p;
    }
    return s;
}

std::size_t OutcomeDistribution::argmax() const noexcept {
    return static_cast<std::size_t>(
        std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

double OutcomeDistribution::total_variation(const OutcomeDistribution& other) const {
    if (other.size() != size()) {
        throw DomainError("total_variation: distributions over different outcome sets");
    }
    double s = 0.0;
    for (std::size_t m = 0; m < size(); ++m) {
        s += std::abs(probabilities[m] - other.probabilities[m]);
    }
    return 0.5 * s;
}

CVector qft(std::span<const std::complex<double>> x) { return fourier(x, +1.0); }

CVector inverse_qft(std::span<const std::complex<double>> x) { return fourier(x, -1.0); }

OutcomeDistribution pe_distribution(int k, const DyadicPhase& phi) {
    check_bits(k, kMaxDistributionBits);
    const int big = std::max(k, phi.bits());
    const std::uint64_t full = std::uint64_t{1} << big;
    const std::uint64_t phi_num = phi.lifted(big).numerator();
    const std::uint64_t step = std::uint64_t{1} << (big - k);
    const double inv_m2 = std::ldexp(1.0, -2 * k);

    OutcomeDistribution dist;
    dist.probabilities.resize(std::size_t{1} << k);
    for (std::size_t m = 0; m < dist.size(); ++m) {
        // Delta = phi - m/2^k = diff / 2^big (mod 1), held exactly.
        const std::uint64_t diff = (phi_num - m * step) & (full - 1);
        if (diff == 0) {
            dist.probabilities[m] = 1.0;
            continue;
        }
        // sin(pi 2^k Delta): argument diff / 2^(big-k) turns of pi.
        const double numer = unit_phase_residue(diff, big - k + 1).imag();
        const double denom = unit_phase_residue(diff, big + 1).imag();
        dist.probabilities[m] = numer * numer / (denom * denom) * inv_m2;
    }
    return dist;
}

OutcomeDistribution pe_distribution(int k, double phi_turns) {
    check_bits(k, kMaxDistributionBits);
    check_finite(phi_turns, "pe_distribution");
    const double size = std::ldexp(1.0, k);
    OutcomeDistribution dist;
    dist.probabilities.resize(std::size_t{1} << k);
    for (std::size_t m = 0; m < dist.size(); ++m) {
        double delta = phi_turns - static_cast<double>(m) / size;
        delta -= std::round(delta);
        const double s = std::sin(std::numbers::pi * delta);
        if (delta == 0.0) {
            dist.probabilities[m] = 1.0;
        } else if (std::abs(s) < 1e-9) {
            // sin(pi d) = pi d (1 - (pi d)^2/6) to far below double precision here.
            const double x = std::numbers::pi * delta;
            const double ratio = std::sin(size * x) / (size * x) * (1.0 + x * x / 6.0);
            dist.probabilities[m] = ratio * ratio;
        } else {
            const double n = std::sin(size * std::numbers::pi * delta);
            dist.probabilities[m] = n * n / (s * s) / (size * size);
        }
    }
    return dist;
}

OutcomeDistribution pe_simulate(int k, const DyadicPhase& phi) {
    return simulate_circuit(k, [&](std::uint64_t power) { return unit_phase(power, phi); });
}

OutcomeDistribution pe_simulate(int k, double phi_turns) {
    check_finite(phi_turns, "pe_simulate");
    return simulate_circuit(k, [&](std::uint64_t power) {
        return polar_turns(static_cast<double>(power) * phi_turns);
    });
}

std::array<std::complex<double>, 2> cat_flatten_equiv(int p, const DyadicPhase& phi) {
    return run_cat(p, [&](std::uint64_t j) { return unit_phase(j, phi); });
}

std::array<std::complex<double>, 2> cat_flatten_equiv(int p, double phi_turns) {
    check_finite(phi_turns, "cat_flatten_equiv");
    return run_cat(p, [&](std::uint64_t j) {
        return polar_turns(static_cast<double>(j) * phi_turns);
    });
}

}  // namespace phaselab
