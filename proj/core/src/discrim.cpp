#include "phaselab/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::complex<double> pairwise_overlap(const AmplitudeProfile& profile, const DyadicPhase& phi,
                                      const DyadicPhase& phi2) {
    const DyadicPhase diff = phi2 - phi;
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < profile.dim(); ++j) {
        const double w = profile[j] * profile[j];
        if (w != 0.0) {
            acc += w * unit_phase(j, diff);
        }
    }
    return acc;
}

std::complex<double> overlap_closed_form(int k, int ell, std::uint64_t r, double delta) {
    if (ell < 1 || k < 2 * ell + 1) {
        throw DomainError("overlap_closed_form: need ell >= 1 and k >= 2*ell+1");
    }
    const std::uint64_t pairs = std::uint64_t{1} << ell;
    if (r >= pairs) {
        throw DomainError("overlap_closed_form: pair index " + std::to_string(r) +
                          " out of range");
    }
    const double roots = static_cast<double>(pairs + 1);
    const double gap = static_cast<double>(r + 1);
    const double shift = delta * gap * std::ldexp(1.0, -k - ell);
    std::complex<double> acc = 0.0;
    for (std::uint64_t m = 0; m <= pairs; ++m) {
        // Reduce the root-of-unity part exactly before adding the perturbation.
        const double root = static_cast<double>((m * (r + 1)) % (pairs + 1)) / roots;
        acc += std::polar(1.0, kTwoPi * (root + static_cast<double>(m) * shift));
    }
    return acc / roots;
}

std::complex<double> overlap_closed_form(int k, int ell, std::uint64_t r) {
    return overlap_closed_form(k, ell, r, paper_profile(k, ell).delta());
}

double helstrom_two(double overlap_magnitude) {
    if (!(overlap_magnitude >= 0.0 && overlap_magnitude <= 1.0)) {
        throw DomainError("helstrom_two: overlap magnitude outside [0, 1]");
    }
    return 0.5 * (1.0 + std::sqrt(1.0 - overlap_magnitude * overlap_magnitude));
}

PlusMinusOutcome fixed_plus_minus_measurement(std::uint64_t j_count, const DyadicPhase& phi,
                                              const DyadicPhase& phi2) {
    // H (|0> + e^{i t}|1>)/sqrt2 = ((1 + e^{it})|0> + (1 - e^{it})|1>) / 2.
    const auto outcome = [j_count](const DyadicPhase& p) {
        const std::complex<double> chi = unit_phase(j_count, p);
        return std::array<double, 2>{std::norm((1.0 + chi) / 2.0),
                                     std::norm((1.0 - chi) / 2.0)};
    };
    return PlusMinusOutcome{outcome(phi), outcome(phi2)};
}

GramMatrix::GramMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw DomainError("GramMatrix: not a nonempty square matrix");
    }
    const Eigen::Index n = entries_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(entries_(i, i) - 1.0) > 1e-10) {
            throw DomainError("GramMatrix: diagonal entry " + std::to_string(i) + " is not 1");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(entries_(i, j) - std::conj(entries_(j, i))) > 1e-10) {
                throw DomainError("GramMatrix: not Hermitian");
            }
        }
    }
    if (min_eigenvalue() < -kPsdTolerance) {
        throw DomainError("GramMatrix: not positive semidefinite");
    }
}

GramMatrix GramMatrix::from_states(std::span<const CVector> states) {
    const auto n = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& a = states[static_cast<std::size_t>(i)];
            const auto& b = states[static_cast<std::size_t>(j)];
            if (a.size() != b.size()) {
                throw DomainError("GramMatrix::from_states: dimension mismatch");
            }
            std::complex<double> acc = 0.0;
            for (std::size_t t = 0; t < a.size(); ++t) {
                acc += std::conj(a[t]) * b[t];
            }
            g(i, j) = acc;
        }
    }
    return GramMatrix(std::move(g));
}

double GramMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw DomainError("psd_sqrt: eigendecomposition failed");
    }
    Eigen::VectorXd roots = solver.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        if (roots(i) < -GramMatrix::kPsdTolerance) {
            throw DomainError("psd_sqrt: matrix is not positive semidefinite");
        }
        roots(i) = std::sqrt(std::max(roots(i), 0.0));
    }
    const auto& v = solver.eigenvectors();
    return v * roots.asDiagonal() * v.adjoint();
}

const char* to_string(MeasurementKind kind) noexcept {
    switch (kind) {
        case MeasurementKind::helstrom: return "helstrom";
        case MeasurementKind::pgm: return "pgm";
        case MeasurementKind::paper_fourier: return "paper_fourier";
    }
    return "unknown";
}

double DiscriminationResult::worst_case_success() const {
    if (per_state_success.empty()) {
        return success_prob;
    }
    return *std::min_element(per_state_success.begin(), per_state_success.end());
}

DiscriminationResult pgm_success(const GramMatrix& gram, std::span<const double> priors) {
    const Eigen::Index n = gram.size();
    std::vector<double> p(priors.begin(), priors.end());
    if (p.empty()) {
        p.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    }
    if (static_cast<Eigen::Index>(p.size()) != n) {
        throw DomainError("pgm_success: prior count does not match Gram size");
    }
    if (std::any_of(p.begin(), p.end(), [](double x) { return !(x >= 0.0); }) ||
        std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) > 1e-10) {
        throw DomainError("pgm_success: priors must be nonnegative and sum to 1");
    }

    Eigen::MatrixXcd weighted = gram.entries();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            weighted(i, j) *= std::sqrt(p[static_cast<std::size_t>(i)] *
                                        p[static_cast<std::size_t>(j)]);
        }
    }
    const Eigen::MatrixXcd root = psd_sqrt(weighted);

    DiscriminationResult out;
    out.measurement_kind = MeasurementKind::pgm;
    out.per_state_success.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double diag = std::norm(root(i, i));
        const double pi = p[static_cast<std::size_t>(i)];
        out.success_prob += diag;
        out.per_state_success[static_cast<std::size_t>(i)] = pi > 0.0 ? diag / pi : 0.0;
    }
    return out;
}

GramMatrix strategy_gram(const NonadaptiveStrategy& strategy, const PromiseSet& set) {
    const auto n = static_cast<Eigen::Index>(set.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& a = set.phases()[static_cast<std::size_t>(i)];
            const auto& b = set.phases()[static_cast<std::size_t>(j)];
            std::complex<double> v = pairwise_overlap(strategy.profile, a, b);
            if (strategy.leading_profile) {
                v *= pairwise_overlap(*strategy.leading_profile, a, b);
            }
            g(i, j) = i == j ? std::complex<double>(1.0) : v;
        }
    }
    return GramMatrix(std::move(g));
}

DiscriminationResult paper_measurement_success(int k, int ell) {
    const PromiseSet set = build_promise_set(k, ell);
    const NonadaptiveStrategy strategy = make_nonadaptive_strategy(k, ell);
    const std::uint64_t pairs = std::uint64_t{1} << ell;
    const std::uint64_t roots = pairs + 1;
    const std::uint64_t spacing = strategy.profile.budget() / pairs;
    const double norm = 1.0 / std::sqrt(static_cast<double>(roots));

    // Fourier basis on the support {m N / 2^ell}: e_s[m] = omega^{sm} / sqrt(2^ell+1).
    std::vector<CVector> basis(roots, CVector(roots));
    for (std::uint64_t s = 0; s < roots; ++s) {
        for (std::uint64_t m = 0; m < roots; ++m) {
            basis[s][m] = std::polar(norm, kTwoPi * static_cast<double>((s * m) % roots) /
                                               static_cast<double>(roots));
        }
    }

    DiscriminationResult out;
    out.measurement_kind = MeasurementKind::paper_fourier;
    for (const auto& phi : set.phases()) {
        const std::size_t r = set.pair_of(phi);
        const bool upper = set.high(r) == phi;

        const CVector lead = final_state(*strategy.leading_profile, phi);
        const double front = std::norm(inverse_qft(lead)[r]);

        const CVector main = final_state(strategy.profile, phi);
        std::complex<double> amp = 0.0;
        for (std::uint64_t m = 0; m < roots; ++m) {
            amp += std::conj(basis[r + 1][m]) * main[m * spacing];
        }
        const double hit = std::norm(amp);
        const double back = upper ? hit : 1.0 - hit;
        out.per_state_success.push_back(std::clamp(front * back, 0.0, 1.0));
    }
    out.success_prob = std::accumulate(out.per_state_success.begin(),
                                       out.per_state_success.end(), 0.0) /
                       static_cast<double>(out.per_state_success.size());
    return out;
}

}  // namespace phaselab
