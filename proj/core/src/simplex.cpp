#include "phaselab/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

class RevisedSimplex {
public:
    RevisedSimplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const SimplexOptions& opt)
        : opt_(opt), rows_(a.rows()), cols_(a.cols()), a_(a), b_(b), row_sign_(a.rows()) {
        for (Eigen::Index i = 0; i < rows_; ++i) {
            row_sign_(i) = b_(i) < 0.0 ? -1.0 : 1.0;
        }
        a_ = row_sign_.asDiagonal() * a_;
        b_ = row_sign_.asDiagonal() * b_;
        seed_basis();
    }

    PhaseOneResult run() {
        PhaseOneResult out;
        long iter = 0;
        int since_refactor = 0;
        int degenerate_streak = 0;
        Eigen::VectorXd pi(rows_);
        Eigen::VectorXd reduced(cols_);

        for (;;) {
            if (iter >= opt_.max_iterations) {
                throw SolverError("phase_one: iteration limit reached", iter,
                                  opt_.pivot_tolerance);
            }
            if (since_refactor >= opt_.refactor_every) {
                refactor();
                since_refactor = 0;
            }

            pi = binv_.transpose() * basic_cost();
            if (objective() <= opt_.feasibility_tolerance) {
                break;
            }

            reduced.noalias() = -(a_.transpose() * pi);
            const bool bland = opt_.pricing == PricingRule::bland ||
                               degenerate_streak >= opt_.degenerate_streak_limit;
            const Eigen::Index entering = price(reduced, bland);
            if (entering < 0) {
                break;
            }

            const Eigen::VectorXd u = binv_ * a_.col(entering);
            const Eigen::Index leave = ratio_test(u);
            if (leave < 0) {
                // Phase 1 is bounded below by zero; this only happens on breakdown.
                throw SolverError("phase_one: unbounded direction in phase 1", iter,
                                  opt_.pivot_tolerance);
            }
            const double step = xb_(leave) / u(leave);
            degenerate_streak = step <= opt_.feasibility_tolerance ? degenerate_streak + 1 : 0;
            pivot(leave, entering, u);
            ++iter;
            ++since_refactor;
        }

        refactor();
        pi = binv_.transpose() * basic_cost();
        out.iterations = iter;
        out.infeasibility = objective();
        out.feasible = out.infeasibility <= opt_.feasibility_tolerance;
        out.x = Eigen::VectorXd::Zero(cols_);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < cols_) {
                out.x(basis_[static_cast<std::size_t>(i)]) = std::max(xb_(i), 0.0);
            }
        }
        // Undo the row negation so the multipliers refer to the caller's rows.
        out.duals = row_sign_.asDiagonal() * pi;
        return out;
    }

private:
    // Columns >= cols_ are artificials; artificial i is e_i.
    bool is_artificial(Eigen::Index var) const { return var >= cols_; }

    void seed_basis() {
        basis_.assign(static_cast<std::size_t>(rows_), -1);
        in_basis_.assign(static_cast<std::size_t>(cols_), false);
        for (Eigen::Index j = 0; j < cols_; ++j) {
            Eigen::Index hit = -1;
            bool unit = true;
            for (Eigen::Index i = 0; i < rows_ && unit; ++i) {
                const double v = a_(i, j);
                if (v == 1.0 && hit < 0) {
                    hit = i;
                } else if (v != 0.0) {
                    unit = false;
                }
            }
            if (unit && hit >= 0 && basis_[static_cast<std::size_t>(hit)] < 0) {
                basis_[static_cast<std::size_t>(hit)] = j;
                in_basis_[static_cast<std::size_t>(j)] = true;
            }
        }
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < 0) {
                basis_[static_cast<std::size_t>(i)] = cols_ + i;
            }
        }
        refactor();
    }

    Eigen::VectorXd basic_cost() const {
        Eigen::VectorXd c(rows_);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            c(i) = is_artificial(basis_[static_cast<std::size_t>(i)]) ? 1.0 : 0.0;
        }
        return c;
    }

    double objective() const { return basic_cost().dot(xb_); }

    Eigen::VectorXd column(Eigen::Index var) const {
        if (is_artificial(var)) {
            return Eigen::VectorXd::Unit(rows_, var - cols_);
        }
        return a_.col(var);
    }

    void refactor() {
        Eigen::MatrixXd basis_matrix(rows_, rows_);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            basis_matrix.col(i) = column(basis_[static_cast<std::size_t>(i)]);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
        binv_ = lu.inverse();
        xb_ = binv_ * b_;
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (xb_(i) < 0.0 && xb_(i) > -1e-12) {
                xb_(i) = 0.0;
            }
        }
    }

    Eigen::Index price(const Eigen::VectorXd& reduced, bool bland) const {
        Eigen::Index best = -1;
        double best_val = -opt_.cost_tolerance;
        for (Eigen::Index j = 0; j < cols_; ++j) {
            if (in_basis_[static_cast<std::size_t>(j)]) {
                continue;
            }
            if (reduced(j) < best_val) {
                best = j;
                if (bland) {
                    return best;
                }
                best_val = reduced(j);
            }
        }
        return best;
    }

    Eigen::Index ratio_test(const Eigen::VectorXd& u) const {
        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (u(i) <= opt_.pivot_tolerance) {
                continue;
            }
            const double ratio = std::max(xb_(i), 0.0) / u(i);
            const bool better = ratio < best - 1e-15 ||
                                (ratio <= best + 1e-15 && leave >= 0 &&
                                 prefer(basis_[static_cast<std::size_t>(i)],
                                        basis_[static_cast<std::size_t>(leave)]));
            if (better) {
                best = ratio;
                leave = i;
            }
        }
        return leave;
    }

    // Ties: drive artificials out first, then Bland's smallest index.
    bool prefer(Eigen::Index a, Eigen::Index b) const {
        if (is_artificial(a) != is_artificial(b)) {
            return is_artificial(a);
        }
        return a < b;
    }

    void pivot(Eigen::Index leave, Eigen::Index entering, const Eigen::VectorXd& u) {
        const double piv = u(leave);
        binv_.row(leave) /= piv;
        xb_(leave) /= piv;
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (i == leave || u(i) == 0.0) {
                continue;
            }
            binv_.row(i) -= u(i) * binv_.row(leave);
            xb_(i) -= u(i) * xb_(leave);
        }
        const Eigen::Index old = basis_[static_cast<std::size_t>(leave)];
        if (!is_artificial(old)) {
            in_basis_[static_cast<std::size_t>(old)] = false;
        }
        basis_[static_cast<std::size_t>(leave)] = entering;
        in_basis_[static_cast<std::size_t>(entering)] = true;
    }

    const SimplexOptions& opt_;
    Eigen::Index rows_;
    Eigen::Index cols_;
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
    Eigen::VectorXd row_sign_;
    std::vector<Eigen::Index> basis_;
    std::vector<bool> in_basis_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
};

}  // namespace

PhaseOneResult phase_one(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const SimplexOptions& options) {
    if (a.rows() != b.size() || a.rows() == 0) {
        throw DomainError("phase_one: dimension mismatch");
    }
    return RevisedSimplex(a, b, options).run();
}

}  // namespace phaselab
