#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "phaselab/pe_sim.hpp"

namespace phaselab {

struct ControlledPhaseFidelity {
    double closed_form = 0.0;  // cos^2(pi phi)
    double numeric = 0.0;      // min_z |1 - z + z e^{2 pi i phi}|^2 by search
    double argmin_z = 0.0;
};

/// Smallest squared overlap between a state and its image under a controlled
/// phase gate. Any real phi is accepted; the value depends on phi mod 1 only.
/// Throws std::logic_error if the two evaluations differ by more than 1e-8.
ControlledPhaseFidelity controlled_phase_min_fidelity(double phi);

struct GramIdentity {
    double lhs = 0.0;  // 1 - cos^2 a - cos^2 b - cos^2 c + 2 cos a cos b cos c
    double rhs = 0.0;  // 4 sin p sin(p - a) sin(p - b) sin(p - c), p = (a + b + c)/2
};

GramIdentity gram_det_identity(double alpha, double beta, double gamma);

/// Angle in [0, pi/2] with cos(angle) = |<x|y>|.
double state_angle(const CVector& x, const CVector& y);

class StateTriple {
public:
    /// Unit vectors of a common dimension (norm tolerance 1e-10).
    StateTriple(CVector a, CVector b, CVector c);

    const CVector& a() const noexcept { return a_; }
    const CVector& b() const noexcept { return b_; }
    const CVector& c() const noexcept { return c_; }

    double alpha() const { return state_angle(a_, b_); }
    double beta() const { return state_angle(b_, c_); }
    double gamma() const { return state_angle(a_, c_); }
    /// Determinant of the 3x3 Gram matrix; real and nonnegative in exact arithmetic.
    double gram_determinant() const;

private:
    CVector a_;
    CVector b_;
    CVector c_;
};

/// Each angle is at most the sum of the other two (1e-10 slack) and the Gram
/// determinant is >= -1e-10.
bool angle_triangle_check(const StateTriple& triple);

/// Angle between psi and the state after e^{2 pi i phi} is applied to the
/// components where qubits 0 and 1 are both set.
double controlled_phase_angle(const StateVector& psi, double phi);

/// Normalized complex Gaussian vector: the unitarily invariant distribution.
CVector random_state(std::size_t dim, std::mt19937_64& rng);

}  // namespace phaselab
