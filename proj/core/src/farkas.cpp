#include "phaselab/farkas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "phaselab/error.hpp"
#include "phaselab/phase.hpp"

namespace phaselab {

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr long kMaxMatrixEntries = 1L << 26;

void check_system(const FarkasSystem& s) {
    if (s.a.rows() < 1 || s.a.rows() % 2 == 0 || s.a.cols() < 1) {
        throw DomainError("FarkasSystem: expected an odd number of rows and at least one column");
    }
    if (!(s.eps_bound > 0.0)) {
        throw DomainError("FarkasSystem: eps_bound must be positive");
    }
    if ((s.a.row(0).array() != 1.0).any()) {
        throw DomainError("FarkasSystem: row 0 must be all ones");
    }
}

}  // namespace

FarkasSystem build_system(int k, int ell, long n, double eps_bound) {
    if (ell < 1 || k <= ell || k > 30) {
        throw DomainError("build_system: need 1 <= ell < k <= 30");
    }
    if (n < 1 || n > (1L << k)) {
        throw DomainError("build_system: N must lie in [1, 2^k]");
    }
    if (!(eps_bound > 0.0)) {
        throw DomainError("build_system: eps_bound must be positive");
    }
    const long d = 1L << ell;
    const long rows = 2 * d + 1;
    if (rows * (n + 1) > kMaxMatrixEntries) {
        throw ResourceError("build_system: dense system too large");
    }

    FarkasSystem s;
    s.k = k;
    s.ell = ell;
    s.budget = n;
    s.eps_bound = eps_bound;
    s.a.resize(rows, n + 1);
    const std::uint64_t mod_mask = (std::uint64_t{1} << k) - 1;
    for (long m = 0; m <= n; ++m) {
        s.a(0, m) = 1.0;
        for (long j = 1; j <= d; ++j) {
            const auto residue = (static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(m)) &
                                 mod_mask;
            const std::complex<double> w = unit_phase_residue(residue, k);
            s.a(2 * j - 1, m) = w.real();
            s.a(2 * j, m) = w.imag();
        }
    }
    return s;
}

double eps_from_kappa(double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw DomainError("eps_from_kappa: kappa must lie in (0, 1)");
    }
    return 2.0 * std::sqrt(kappa);
}

CertificateReport verify_certificate(std::span<const double> y, const FarkasSystem& system) {
    check_system(system);
    CertificateReport rep;
    if (static_cast<Eigen::Index>(y.size()) != system.rows()) {
        rep.margin_primal = -std::numeric_limits<double>::infinity();
        rep.margin_dual = std::numeric_limits<double>::infinity();
        rep.detail = "certificate length " + std::to_string(y.size()) + " does not match " +
                     std::to_string(system.rows()) + " rows";
        return rep;
    }
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    const Eigen::VectorXd col_values = system.a.transpose() * yv;
    Eigen::Index worst = 0;
    rep.margin_primal = col_values.minCoeff(&worst);
    rep.worst_column = static_cast<long>(worst);
    rep.margin_dual = yv(0) + system.eps_bound * yv.tail(yv.size() - 1).cwiseAbs().sum();
    if (rep.margin_primal < 0.0) {
        rep.detail = "y^T A negative at column " + std::to_string(rep.worst_column);
    } else if (!(rep.margin_dual < 0.0)) {
        rep.detail = "worst-case y^T E is not negative";
    }
    return rep;
}

CertificateReport verify_certificate(const Certificate& cert, const FarkasSystem& system) {
    return verify_certificate(std::span<const double>(cert.y), system);
}

LPResult lp_feasible(const FarkasSystem& system, const SimplexOptions& options) {
    check_system(system);
    const Eigen::Index cols = system.columns();
    const Eigen::Index box_rows = system.rows() - 1;
    const double eps = system.eps_bound;

    // Rows: sum b = 1;  A_i b + s_i = eps;  -A_i b + t_i = eps.
    const Eigen::Index rows = 1 + 2 * box_rows;
    Eigen::MatrixXd lp = Eigen::MatrixXd::Zero(rows, cols + 2 * box_rows);
    Eigen::VectorXd rhs = Eigen::VectorXd::Constant(rows, eps);
    lp.row(0).head(cols).setOnes();
    rhs(0) = 1.0;
    for (Eigen::Index i = 0; i < box_rows; ++i) {
        lp.row(1 + i).head(cols) = system.a.row(1 + i);
        lp.row(1 + box_rows + i).head(cols) = -system.a.row(1 + i);
        lp(1 + i, cols + i) = 1.0;
        lp(1 + box_rows + i, cols + box_rows + i) = 1.0;
    }

    const PhaseOneResult p1 = phase_one(lp, rhs, options);
    LPResult out;
    out.iterations = p1.iterations;

    if (p1.feasible) {
        out.b = p1.x.head(cols);
        const double sum_residual = std::abs(out.b.sum() - 1.0);
        const double box_residual =
            box_rows > 0
                ? ((system.a.bottomRows(box_rows) * out.b).cwiseAbs().array() - eps).maxCoeff()
                : 0.0;
        out.max_residual = std::max({sum_residual, box_residual, 0.0});
        if (out.max_residual > kResidualTolerance) {
            throw SolverError("lp_feasible: primal point fails verification (residual " +
                                  std::to_string(out.max_residual) + ")",
                              p1.iterations, options.pivot_tolerance);
        }
        out.feasible = true;
        return out;
    }

    // z = -pi satisfies z^T lp >= 0 and z^T rhs < 0; fold the paired rows.
    const Eigen::VectorXd z = -p1.duals;
    std::vector<double> y(static_cast<std::size_t>(box_rows + 1));
    y[0] = z(0);
    for (Eigen::Index i = 0; i < box_rows; ++i) {
        y[static_cast<std::size_t>(1 + i)] = z(1 + i) - z(1 + box_rows + i);
    }
    double scale = 0.0;
    for (std::size_t j = 1; j < y.size(); ++j) {
        scale = std::max(scale, std::abs(y[j]));
    }
    if (scale == 0.0) {
        scale = std::abs(y[0]);
    }
    if (scale == 0.0) {
        throw SolverError("lp_feasible: degenerate dual certificate", p1.iterations,
                          options.pivot_tolerance);
    }
    for (double& v : y) {
        v /= scale;
    }

    // Lift y0 over reduced-cost round-off; row 0 is all ones so this shifts every column.
    CertificateReport rep = verify_certificate(y, system);
    if (rep.margin_primal < 0.0 && rep.margin_primal > -1e-7) {
        y[0] += 2.0 * (-rep.margin_primal) + 1e-15;
        rep = verify_certificate(y, system);
    }
    if (!rep.valid()) {
        throw SolverError("lp_feasible: dual certificate fails verification (" + rep.detail + ")",
                          p1.iterations, options.pivot_tolerance);
    }
    out.certificate = Certificate{std::move(y), rep.margin_primal, rep.margin_dual};
    return out;
}

double ScanResult::ratio() const noexcept {
    return static_cast<double>(min_feasible_n) / std::ldexp(1.0, k);
}

ScanResult scan_min_N(int k, int ell, double kappa, const ScanOptions& options) {
    if (!(kappa > 0.0 && kappa < 0.25)) {
        throw DomainError("scan_min_N: kappa must lie in (0, 1/4) so that eps_bound < 1");
    }
    if (ell < 1 || k <= ell || k > 20) {
        throw DomainError("scan_min_N: need 1 <= ell < k <= 20");
    }
    if (options.probes < 1) {
        throw DomainError("scan_min_N: probes must be positive");
    }
    const double eps = eps_from_kappa(kappa);
    int workers = options.workers > 0 ? options.workers
                                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(workers, 1);

    ScanResult result;
    result.k = k;
    result.ell = ell;
    result.kappa = kappa;
    result.eps_bound = eps;

    auto evaluate = [&](const std::vector<long>& ns) {
        std::vector<ScanPoint> pts(ns.size());
        std::vector<std::exception_ptr> errors(ns.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < ns.size(); i = next++) {
                try {
                    const LPResult r = lp_feasible(build_system(k, ell, ns[i], eps), options.simplex);
                    pts[i] = ScanPoint{ns[i], r.feasible, r.iterations};
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        const int n_threads = std::min<int>(workers, static_cast<int>(ns.size()));
        if (n_threads <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (int t = 0; t < n_threads; ++t) {
                pool.emplace_back(work);
            }
        }
        for (std::size_t i = 0; i < ns.size(); ++i) {
            if (errors[i]) {
                std::rethrow_exception(errors[i]);
            }
            if (options.on_point) {
                options.on_point(pts[i]);
            }
            result.evaluations.push_back(pts[i]);
        }
        return pts;
    };

    long lo = 1;
    long hi = (1L << k) - 1;
    try {
        const auto ends = evaluate({lo, hi});
        if (ends[0].feasible || !ends[1].feasible) {
            throw SolverError("scan_min_N: endpoints do not bracket the threshold", 0,
                              options.simplex.pivot_tolerance);
        }
        while (hi - lo > 1) {
            std::vector<long> ns;
            const long width = hi - lo;
            for (int i = 1; i <= options.probes; ++i) {
                const long n = lo + width * i / (options.probes + 1);
                if (n > lo && n < hi && (ns.empty() || ns.back() != n)) {
                    ns.push_back(n);
                }
            }
            if (ns.empty()) {
                ns.push_back(lo + width / 2);
            }
            const auto pts = evaluate(ns);
            long new_hi = hi;
            for (const auto& p : pts) {
                if (p.feasible) {
                    new_hi = std::min(new_hi, p.n);
                }
            }
            long new_lo = lo;
            for (const auto& p : pts) {
                if (!p.feasible && p.n < new_hi) {
                    new_lo = std::max(new_lo, p.n);
                }
            }
            lo = new_lo;
            hi = new_hi;
        }
    } catch (const SolverError& e) {
        throw SolverError(e.reason() + "; partial bracket [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]",
                          e.iterations(), e.pivot_tolerance());
    }

    std::sort(result.evaluations.begin(), result.evaluations.end(),
              [](const ScanPoint& a, const ScanPoint& b) { return a.n < b.n; });
    result.min_feasible_n = hi;
    result.max_certified_infeasible_n = lo;
    if (!(result.min_feasible_n > result.max_certified_infeasible_n)) {
        throw SolverError("scan_min_N: bracket collapsed", 0, options.simplex.pivot_tolerance);
    }
    return result;
}

long adaptive_lower_bound(double delta, double kappa) {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw DomainError("adaptive_lower_bound: delta must lie in (0, 1/2]");
    }
    if (!(kappa > 0.0 && kappa < 0.5)) {
        throw DomainError("adaptive_lower_bound: kappa must lie in (0, 1/2)");
    }
    const double theta = std::asin(2.0 * std::sqrt(kappa * (1.0 - kappa)));
    return static_cast<long>(std::ceil((std::numbers::pi / 2.0 - theta) / (std::numbers::pi * delta)));
}

}  // namespace phaselab
