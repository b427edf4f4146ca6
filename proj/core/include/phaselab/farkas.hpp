#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phaselab/simplex.hpp"

namespace phaselab {

/// Moment system for a non-adaptive budget N: find b >= 0 with sum(b) = 1 and
/// |sum_m b_m cos(2 pi j m / 2^k)|, |sum_m b_m sin(2 pi j m / 2^k)| <= eps_bound
/// for j = 1..2^ell. Row 0 is all ones; rows 2j-1, 2j hold cos and sin.
struct FarkasSystem {
    int k = 0;
    int ell = 0;
    long budget = 0;
    double eps_bound = 0.0;
    Eigen::MatrixXd a;

    Eigen::Index rows() const noexcept { return a.rows(); }
    Eigen::Index columns() const noexcept { return a.cols(); }
};

/// Throws DomainError on bad parameters, ResourceError if the dense matrix
/// would exceed the memory budget.
FarkasSystem build_system(int k, int ell, long n, double eps_bound);

/// eps_bound = 2 sqrt(kappa), the overlap magnitude allowed by error kappa.
double eps_from_kappa(double kappa);

struct Certificate {
    std::vector<double> y;      // (y0, y1, ..., y_{2d})
    double margin_primal = 0.0; // min over columns of y^T A
    double margin_dual = 0.0;   // y0 + eps_bound * sum_{j>0} |y_j|
    bool valid() const noexcept { return margin_primal >= 0.0 && margin_dual < 0.0; }
};

struct CertificateReport {
    double margin_primal = 0.0;
    double margin_dual = 0.0;
    long worst_column = -1;
    std::string detail;  // empty when valid
    bool valid() const noexcept { return margin_primal >= 0.0 && margin_dual < 0.0; }
};

CertificateReport verify_certificate(std::span<const double> y, const FarkasSystem& system);
CertificateReport verify_certificate(const Certificate& cert, const FarkasSystem& system);

struct LPResult {
    bool feasible = false;
    Eigen::VectorXd b;                     // set when feasible
    std::optional<Certificate> certificate; // set when infeasible
    double max_residual = 0.0;             // feasible: worst constraint violation
    long iterations = 0;
};

/// Decides the system with phase-1 simplex. Either outcome is verified before
/// returning; a verdict that fails verification raises SolverError.
LPResult lp_feasible(const FarkasSystem& system, const SimplexOptions& options = {});

struct ScanPoint {
    long n = 0;
    bool feasible = false;
    long iterations = 0;
};

struct ScanOptions {
    int workers = 0;  // 0: hardware concurrency
    int probes = 1;   // interior points per round; 1 is plain bisection
    SimplexOptions simplex{};
    std::function<void(const ScanPoint&)> on_point;  // called from the scan thread
};

struct ScanResult {
    int k = 0;
    int ell = 0;
    double kappa = 0.0;
    double eps_bound = 0.0;
    long min_feasible_n = 0;
    long max_certified_infeasible_n = 0;
    std::vector<ScanPoint> evaluations;  // sorted by n
    double ratio() const noexcept;       // min_feasible_n / 2^k
};

/// Smallest N for which the system with eps_bound = 2 sqrt(kappa) is feasible,
/// bracketed by the largest N with a verified certificate. The probe schedule
/// does not depend on `workers`, so results are reproducible.
ScanResult scan_min_N(int k, int ell, double kappa, const ScanOptions& options = {});

/// ceil((pi/2 - theta) / (pi delta)) with theta = asin(2 sqrt(kappa (1 - kappa))).
long adaptive_lower_bound(double delta, double kappa);

}  // namespace phaselab
