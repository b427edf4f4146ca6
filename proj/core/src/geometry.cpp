#include "phaselab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> inner(const CVector& x, const CVector& y) {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

void check_unit(const CVector& v, const char* name) {
    const double n = std::sqrt(std::abs(inner(v, v)));
    if (v.empty() || std::abs(n - 1.0) > 1e-10) {
        throw DomainError(std::string("StateTriple: ") + name + " is not a unit vector");
    }
}

}  // namespace

ControlledPhaseFidelity controlled_phase_min_fidelity(double phi) {
    const std::complex<double> w = std::polar(1.0, 2.0 * kPi * phi);
    auto h = [&](double z) { return std::norm(1.0 - z + z * w); };

    constexpr int kGrid = 1000;
    int best = 0;
    for (int i = 1; i <= kGrid; ++i) {
        if (h(static_cast<double>(i) / kGrid) < h(static_cast<double>(best) / kGrid)) {
            best = i;
        }
    }
    // Golden-section refinement on the neighbouring grid cells.
    double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
    double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = h(x1);
    double f2 = h(x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = h(x2);
        }
    }

    ControlledPhaseFidelity out;
    out.argmin_z = 0.5 * (lo + hi);
    out.numeric = std::min(h(out.argmin_z), h(static_cast<double>(best) / kGrid));
    const double c = std::cos(kPi * phi);
    out.closed_form = c * c;
    if (std::abs(out.numeric - out.closed_form) > 1e-8) {
        throw std::logic_error("controlled_phase_min_fidelity: numeric minimum disagrees");
    }
    return out;
}

GramIdentity gram_det_identity(double alpha, double beta, double gamma) {
    constexpr double kSlack = 1e-12;
    for (double t : {alpha, beta, gamma}) {
        if (!(t >= -kSlack && t <= kPi / 2.0 + kSlack)) {
            throw DomainError("gram_det_identity: angles must lie in [0, pi/2]");
        }
    }
    const double ca = std::cos(alpha);
    const double cb = std::cos(beta);
    const double cc = std::cos(gamma);
    const double p = 0.5 * (alpha + beta + gamma);
    return {1.0 - ca * ca - cb * cb - cc * cc + 2.0 * ca * cb * cc,
            4.0 * std::sin(p) * std::sin(p - alpha) * std::sin(p - beta) * std::sin(p - gamma)};
}

double state_angle(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) {
        throw DomainError("state_angle: dimension mismatch");
    }
    return std::acos(std::clamp(std::abs(inner(x, y)), 0.0, 1.0));
}

StateTriple::StateTriple(CVector a, CVector b, CVector c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_.size() != b_.size() || a_.size() != c_.size()) {
        throw DomainError("StateTriple: dimension mismatch");
    }
    check_unit(a_, "a");
    check_unit(b_, "b");
    check_unit(c_, "c");
}

double StateTriple::gram_determinant() const {
    const CVector* v[3] = {&a_, &b_, &c_};
    Eigen::Matrix3cd g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g(i, j) = inner(*v[i], *v[j]);
        }
    }
    return g.determinant().real();
}

bool angle_triangle_check(const StateTriple& t) {
    constexpr double kSlack = 1e-10;
    const double a = t.alpha();
    const double b = t.beta();
    const double c = t.gamma();
    return a <= b + c + kSlack && b <= a + c + kSlack && c <= a + b + kSlack &&
           t.gram_determinant() >= -kSlack;
}

double controlled_phase_angle(const StateVector& psi, double phi) {
    if (psi.qubits() < 2) {
        throw DomainError("controlled_phase_angle: needs at least two qubits");
    }
    const std::complex<double> w = std::polar(1.0, 2.0 * kPi * phi);
    CVector out = psi.amplitudes();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if ((i & 3u) == 3u) {
            out[i] *= w;
        }
    }
    return state_angle(psi.amplitudes(), out);
}

CVector random_state(std::size_t dim, std::mt19937_64& rng) {
    if (dim == 0) {
        throw DomainError("random_state: dimension must be positive");
    }
    std::normal_distribution<double> gauss;
    CVector v(dim);
    double norm2 = 0.0;
    for (auto& x : v) {
        x = {gauss(rng), gauss(rng)};
        norm2 += std::norm(x);
    }
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& x : v) {
        x *= s;
    }
    return v;
}

}  // namespace phaselab
