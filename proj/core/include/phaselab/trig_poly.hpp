#pragma once

#include <span>
#include <vector>

namespace phaselab {

/// a0 + sum_{j=1..d} (a_j cos 2 pi j x + b_j sin 2 pi j x).
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    /// Reads the Farkas layout (y0, y1, y2, ...) = (a0, a1, b1, a2, b2, ...).
    static TrigPoly from_coefficients(std::span<const double> y);
    std::vector<double> coefficients() const;

    int degree() const noexcept { return static_cast<int>(cos_.size()); }
    double constant() const noexcept { return a0_; }
    /// j is 1-based; zero beyond the degree.
    double cos_coeff(int j) const noexcept;
    double sin_coeff(int j) const noexcept;

    double operator()(double x) const noexcept;

    TrigPoly derivative() const;
    /// x -> p(x + s).
    TrigPoly shifted(double s) const;
    /// 2 pi sum_j j (|a_j| + |b_j|), a bound on |p'|.
    double lipschitz_bound() const noexcept;
    /// |a0| + sum (|a_j| + |b_j|), a bound on |p|.
    double coefficient_mass() const noexcept;

    TrigPoly& operator+=(const TrigPoly& other);
    TrigPoly& operator*=(double s);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator*(double s, TrigPoly p) { return p *= s; }

private:
    void resize(int degree);

    double a0_ = 0.0;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

enum class PositivityStatus { positive, not_positive, inconclusive };

const char* to_string(PositivityStatus s) noexcept;

/// A zero known analytically. order 1: simple zero, admissible only at an
/// interval endpoint. order 2: touching zero (p = p' = 0 there).
struct KnownZero {
    double x = 0.0;
    int order = 2;
};

struct PositivityReport {
    PositivityStatus status = PositivityStatus::inconclusive;
    double min_sample = 0.0;       // smallest value seen on the sampling grid
    double argmin = 0.0;
    double lipschitz = 0.0;
    double certified_lower_bound = 0.0;  // outside the zero windows
    long cells = 0;
    bool positive() const noexcept { return status == PositivityStatus::positive; }
};

/// Certified check that p > 0 on [x_min, x_max] (or p >= 0 with equality only
/// at the listed zeros). Starts from `grid` uniform cells and bounds each cell
/// below by (p(u) + p(v))/2 - L (v - u)/2, bisecting until every cell clears
/// the evaluation round-off. A negative sample is a definite `not_positive`;
/// running out of refinement budget is `inconclusive`, never `positive`.
///
/// Around a listed zero the sign is certified through the derivative instead:
/// p' > 0 (left endpoint), p' < 0 (right endpoint) or p'' > 0 (order 2).
PositivityReport positivity_check(const TrigPoly& poly, double x_max, int grid,
                                  std::span<const KnownZero> zeros = {}, double x_min = 0.0);

}  // namespace phaselab
