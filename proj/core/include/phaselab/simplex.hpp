#pragma once

#include <Eigen/Dense>

namespace phaselab {

enum class PricingRule {
    bland,    // smallest eligible index; terminates on degenerate problems
    dantzig,  // most negative reduced cost, falls back to Bland on degenerate streaks
};

struct SimplexOptions {
    PricingRule pricing = PricingRule::dantzig;
    double pivot_tolerance = 1e-9;
    double cost_tolerance = 1e-11;
    double feasibility_tolerance = 1e-10;
    long max_iterations = 500'000;
    int refactor_every = 50;
    int degenerate_streak_limit = 50;
};

struct PhaseOneResult {
    bool feasible = false;
    double infeasibility = 0.0;   // optimal sum of artificials
    Eigen::VectorXd x;            // primal point over the original columns
    Eigen::VectorXd duals;        // simplex multipliers pi = c_B^T B^{-1}
    long iterations = 0;
};

/// Phase 1 of the revised simplex method for {A x = b, x >= 0}.
///
/// Rows with b_i < 0 are negated internally; existing unit columns seed the
/// starting basis and the remaining rows get artificials. At an infeasible
/// optimum, z = -duals (in the caller's row signs) is a Farkas certificate:
/// z^T A >= 0 up to cost_tolerance and z^T b < 0.
/// Throws SolverError when the iteration limit is hit.
PhaseOneResult phase_one(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const SimplexOptions& options = {});

}  // namespace phaselab
