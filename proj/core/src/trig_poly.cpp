#include "phaselab/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long kCellBudget = 4'000'000;
constexpr double kMinCellWidth = 1e-13;

// Evaluation round-off: a few ulps of the coefficient mass.
double evaluation_noise(const TrigPoly& p) {
    return 64.0 * std::numeric_limits<double>::epsilon() * (p.coefficient_mass() + 1.0);
}

struct CellCheck {
    bool certified = false;
    bool negative_sample = false;
    double lower_bound = 0.0;
    double min_sample = 0.0;
    double argmin = 0.0;
    long cells = 0;
};

// Certifies sign * p > 0 on [a, b] by adaptive Lipschitz bisection.
CellCheck certify_interval(const TrigPoly& p, double sign, double a, double b, int initial_cells,
                           long& budget) {
    CellCheck out;
    out.min_sample = sign * p(a);
    out.argmin = a;
    out.lower_bound = out.min_sample;
    const double lip = p.lipschitz_bound();
    const double noise = evaluation_noise(p);
    if (b <= a) {
        out.certified = out.min_sample > noise;
        out.negative_sample = out.min_sample < -noise;
        return out;
    }

    struct Cell {
        double u, v, fu, fv;
    };
    std::vector<Cell> stack;
    const int n = std::max(initial_cells, 1);
    double prev_x = a;
    double prev_f = sign * p(a);
    for (int i = 1; i <= n; ++i) {
        const double x = i == n ? b : a + (b - a) * static_cast<double>(i) / n;
        const double f = sign * p(x);
        stack.push_back({prev_x, x, prev_f, f});
        prev_x = x;
        prev_f = f;
    }

    double bound = std::numeric_limits<double>::infinity();
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        ++out.cells;
        for (const auto& [x, f] : {std::pair{c.u, c.fu}, std::pair{c.v, c.fv}}) {
            if (f < out.min_sample) {
                out.min_sample = f;
                out.argmin = x;
            }
        }
        if (c.fu < -noise || c.fv < -noise) {
            out.negative_sample = true;
            out.lower_bound = std::min(c.fu, c.fv);
            return out;
        }
        const double lb = 0.5 * (c.fu + c.fv) - 0.5 * lip * (c.v - c.u);
        if (lb > noise) {
            bound = std::min(bound, lb);
            continue;
        }
        if (--budget <= 0 || c.v - c.u < kMinCellWidth) {
            out.lower_bound = std::min(bound, lb);
            return out;
        }
        const double mid = 0.5 * (c.u + c.v);
        const double fm = sign * p(mid);
        stack.push_back({c.u, mid, c.fu, fm});
        stack.push_back({mid, c.v, fm, c.fv});
    }
    out.certified = true;
    out.lower_bound = bound;
    return out;
}

}  // namespace

TrigPoly::TrigPoly(double constant, std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs)
    : a0_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    const auto d = std::max(cos_.size(), sin_.size());
    cos_.resize(d, 0.0);
    sin_.resize(d, 0.0);
}

TrigPoly TrigPoly::from_coefficients(std::span<const double> y) {
    if (y.empty() || y.size() % 2 == 0) {
        throw DomainError("TrigPoly::from_coefficients: need 2d+1 coefficients");
    }
    const std::size_t d = (y.size() - 1) / 2;
    std::vector<double> a(d), b(d);
    for (std::size_t j = 0; j < d; ++j) {
        a[j] = y[2 * j + 1];
        b[j] = y[2 * j + 2];
    }
    return TrigPoly(y[0], std::move(a), std::move(b));
}

std::vector<double> TrigPoly::coefficients() const {
    std::vector<double> y;
    y.reserve(2 * cos_.size() + 1);
    y.push_back(a0_);
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        y.push_back(cos_[j]);
        y.push_back(sin_[j]);
    }
    return y;
}

double TrigPoly::cos_coeff(int j) const noexcept {
    return j >= 1 && j <= degree() ? cos_[static_cast<std::size_t>(j - 1)] : 0.0;
}

double TrigPoly::sin_coeff(int j) const noexcept {
    return j >= 1 && j <= degree() ? sin_[static_cast<std::size_t>(j - 1)] : 0.0;
}

double TrigPoly::operator()(double x) const noexcept {
    // Chebyshev-style recurrence on (cos, sin) of 2 pi j x.
    const double c1 = std::cos(kTwoPi * x);
    const double s1 = std::sin(kTwoPi * x);
    double c = 1.0, s = 0.0;
    double acc = a0_;
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        const double cn = c * c1 - s * s1;
        const double sn = s * c1 + c * s1;
        c = cn;
        s = sn;
        acc += cos_[j] * c + sin_[j] * s;
    }
    return acc;
}

TrigPoly TrigPoly::derivative() const {
    std::vector<double> a(cos_.size()), b(sin_.size());
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        const double w = kTwoPi * static_cast<double>(j + 1);
        a[j] = w * sin_[j];
        b[j] = -w * cos_[j];
    }
    return TrigPoly(0.0, std::move(a), std::move(b));
}

TrigPoly TrigPoly::shifted(double s) const {
    std::vector<double> a(cos_.size()), b(sin_.size());
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        const double phase = kTwoPi * static_cast<double>(j + 1) * s;
        const double c = std::cos(phase);
        const double sn = std::sin(phase);
        a[j] = cos_[j] * c + sin_[j] * sn;
        b[j] = sin_[j] * c - cos_[j] * sn;
    }
    return TrigPoly(a0_, std::move(a), std::move(b));
}

double TrigPoly::lipschitz_bound() const noexcept {
    double s = 0.0;
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        s += static_cast<double>(j + 1) * (std::abs(cos_[j]) + std::abs(sin_[j]));
    }
    return kTwoPi * s;
}

double TrigPoly::coefficient_mass() const noexcept {
    double s = std::abs(a0_);
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        s += std::abs(cos_[j]) + std::abs(sin_[j]);
    }
    return s;
}

void TrigPoly::resize(int degree) {
    cos_.resize(static_cast<std::size_t>(degree), 0.0);
    sin_.resize(static_cast<std::size_t>(degree), 0.0);
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
    if (other.degree() > degree()) {
        resize(other.degree());
    }
    a0_ += other.a0_;
    for (std::size_t j = 0; j < other.cos_.size(); ++j) {
        cos_[j] += other.cos_[j];
        sin_[j] += other.sin_[j];
    }
    return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
    a0_ *= s;
    for (auto& c : cos_) c *= s;
    for (auto& c : sin_) c *= s;
    return *this;
}

const char* to_string(PositivityStatus s) noexcept {
    switch (s) {
        case PositivityStatus::positive: return "positive";
        case PositivityStatus::not_positive: return "not_positive";
        case PositivityStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

PositivityReport positivity_check(const TrigPoly& poly, double x_max, int grid,
                                  std::span<const KnownZero> zeros, double x_min) {
    if (grid < 2) {
        throw DomainError("positivity_check: grid must be >= 2");
    }
    if (!(x_max <= 1.0) || !(x_min < x_max) || x_min < -1.0) {
        throw DomainError("positivity_check: need x_min < x_max <= 1");
    }

    PositivityReport report;
    report.lipschitz = poly.lipschitz_bound();

    // Plain sampling first: any negative value settles it.
    report.min_sample = poly(x_min);
    report.argmin = x_min;
    for (int i = 1; i <= grid; ++i) {
        const double x = x_min + (x_max - x_min) * static_cast<double>(i) / grid;
        const double v = poly(x);
        if (v < report.min_sample) {
            report.min_sample = v;
            report.argmin = x;
        }
    }
    if (report.min_sample < -evaluation_noise(poly)) {
        report.status = PositivityStatus::not_positive;
        report.certified_lower_bound = report.min_sample;
        return report;
    }

    // Zeros inside the interval, sorted, each with a window.
    std::vector<KnownZero> inside;
    const double edge_tol = 1e-12;
    for (const auto& z : zeros) {
        if (z.x >= x_min - edge_tol && z.x <= x_max + edge_tol) {
            inside.push_back(z);
        }
    }
    std::sort(inside.begin(), inside.end(),
              [](const KnownZero& a, const KnownZero& b) { return a.x < b.x; });

    double spacing = x_max - x_min;
    for (std::size_t i = 1; i < inside.size(); ++i) {
        spacing = std::min(spacing, inside[i].x - inside[i - 1].x);
    }
    for (const auto& z : inside) {
        if (z.x > x_min + edge_tol) spacing = std::min(spacing, 2.0 * (z.x - x_min));
        if (z.x < x_max - edge_tol) spacing = std::min(spacing, 2.0 * (x_max - z.x));
    }

    const TrigPoly d1 = poly.derivative();
    const TrigPoly d2 = d1.derivative();
    long budget = kCellBudget;

    // Shrink windows until every zero's derivative condition certifies.
    double window = 0.25 * spacing;
    std::vector<std::pair<double, double>> excluded;
    for (int attempt = 0; attempt < 12; ++attempt, window *= 0.5) {
        excluded.clear();
        bool ok = true;
        for (const auto& z : inside) {
            const double scale = poly.coefficient_mass() + 1.0;
            const bool at_left = std::abs(z.x - x_min) <= edge_tol;
            const bool at_right = std::abs(z.x - x_max) <= edge_tol;
            if (std::abs(poly(z.x)) > 1e-10 * scale) {
                report.status = PositivityStatus::inconclusive;
                return report;
            }
            CellCheck c;
            if (z.order == 1) {
                if (at_left) {
                    c = certify_interval(d1, +1.0, z.x, std::min(z.x + window, x_max), 16, budget);
                    excluded.emplace_back(z.x, z.x + window);
                } else if (at_right) {
                    c = certify_interval(d1, -1.0, std::max(z.x - window, x_min), z.x, 16, budget);
                    excluded.emplace_back(z.x - window, z.x);
                } else {
                    // Interior simple zero: p changes sign there.
                    report.status = PositivityStatus::not_positive;
                    return report;
                }
            } else {
                if (std::abs(d1(z.x)) > 1e-9 * (d1.coefficient_mass() + 1.0)) {
                    report.status = PositivityStatus::inconclusive;
                    return report;
                }
                c = certify_interval(d2, +1.0, std::max(z.x - window, x_min),
                                     std::min(z.x + window, x_max), 16, budget);
                excluded.emplace_back(z.x - window, z.x + window);
            }
            if (!c.certified) {
                ok = false;
                break;
            }
        }
        if (ok) {
            break;
        }
        if (attempt == 11) {
            report.status = PositivityStatus::inconclusive;
            return report;
        }
    }

    // Strict positivity on the complement of the windows.
    std::vector<std::pair<double, double>> pieces;
    double cursor = x_min;
    for (const auto& [lo, hi] : excluded) {
        if (lo > cursor) pieces.emplace_back(cursor, lo);
        cursor = std::max(cursor, hi);
    }
    if (cursor < x_max) pieces.emplace_back(cursor, x_max);

    double bound = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : pieces) {
        const int cells = std::max(2, static_cast<int>(grid * (hi - lo) / (x_max - x_min)));
        const CellCheck c = certify_interval(poly, +1.0, lo, hi, cells, budget);
        report.cells += c.cells;
        if (c.negative_sample) {
            report.status = PositivityStatus::not_positive;
            report.min_sample = std::min(report.min_sample, c.min_sample);
            report.certified_lower_bound = c.lower_bound;
            return report;
        }
        if (!c.certified) {
            report.status = PositivityStatus::inconclusive;
            report.certified_lower_bound = c.lower_bound;
            return report;
        }
        bound = std::min(bound, c.lower_bound);
    }
    report.status = PositivityStatus::positive;
    report.certified_lower_bound = pieces.empty() ? 0.0 : bound;
    return report;
}

}  // namespace phaselab
