#include "phaselab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ell(int ell, int max_ell, const char* who) {
    if (ell < 1 || ell > max_ell) {
        throw DomainError(std::string(who) + ": ell must lie in [1, " + std::to_string(max_ell) +
                          "]");
    }
}

int sign_of(double v) {
    constexpr double kZero = 1e-12;
    return v > kZero ? 1 : (v < -kZero ? -1 : 0);
}

}  // namespace

std::vector<Factor> f_ell_factors(int ell, double x) {
    check_ell(ell, 20, "f_ell_factors");
    const long q = (1L << ell) + 1;
    std::vector<Factor> out;
    if (ell == 1) {
        out.push_back({"sin(pi x + 2pi/3)", std::sin(kPi * x + 2.0 * kPi / 3.0)});
    } else {
        out.push_back({"sin(pi (x - 1/" + std::to_string(q) + "))",
                       std::sin(kPi * (x - 1.0 / static_cast<double>(q)))});
    }
    out.push_back({"sin(" + std::to_string(q) + " pi x)", std::sin(kPi * static_cast<double>(q) * x)});
    const double c = std::cos(2.0 * kPi * x);
    for (long m = 2; m <= (1L << (ell - 1)); ++m) {
        out.push_back({"g_" + std::to_string(m),
                       std::cos(2.0 * kPi * static_cast<double>(m) / static_cast<double>(q)) - c});
    }
    return out;
}

double f_ell_eval(int ell, double x) {
    double v = 1.0;
    for (const auto& f : f_ell_factors(ell, x)) {
        v *= f.value;
    }
    return v;
}

TrigPoly trig_coeffs(int ell) {
    check_ell(ell, 6, "trig_coeffs");
    const int d = 1 << ell;
    const int samples = 4 * d;  // resolves frequencies up to 2d - 1
    std::vector<double> f(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        f[static_cast<std::size_t>(i)] = f_ell_eval(ell, static_cast<double>(i) / samples);
    }
    auto coeff = [&](int j, bool sine) {
        double acc = 0.0;
        for (int i = 0; i < samples; ++i) {
            // Reduce j*i exactly before scaling to keep the angles accurate.
            const double t = 2.0 * kPi * static_cast<double>((j * i) % samples) / samples;
            acc += f[static_cast<std::size_t>(i)] * (sine ? std::sin(t) : std::cos(t));
        }
        return 2.0 * acc / samples;
    };
    const double a0 = std::accumulate(f.begin(), f.end(), 0.0) / samples;
    if (std::abs(a0) > 1e-10) {
        throw std::logic_error("trig_coeffs: nonzero constant term");
    }
    std::vector<double> cs(static_cast<std::size_t>(d));
    std::vector<double> ss(static_cast<std::size_t>(d));
    for (int j = 1; j <= d; ++j) {
        cs[static_cast<std::size_t>(j - 1)] = coeff(j, false);
        ss[static_cast<std::size_t>(j - 1)] = coeff(j, true);
    }
    for (int j = d + 1; j < samples / 2; ++j) {
        if (std::abs(coeff(j, false)) > 1e-10 || std::abs(coeff(j, true)) > 1e-10) {
            throw std::logic_error("trig_coeffs: energy above degree 2^ell");
        }
    }
    return TrigPoly(a0, std::move(cs), std::move(ss));
}

std::vector<SignRow> region_signs(int ell) {
    check_ell(ell, 5, "region_signs");
    const long q = (1L << ell) + 1;
    std::vector<SignRow> rows;
    for (long i = 0; i < q; ++i) {
        const double mid = (static_cast<double>(i) + 0.5) / static_cast<double>(q);
        const auto factors = f_ell_factors(ell, mid);
        if (rows.empty()) {
            for (const auto& f : factors) {
                rows.push_back({f.name, {}});
            }
            rows.push_back({"g_product", {}});
            rows.push_back({"main*g_product", {}});
            rows.push_back({"f", {}});
        }
        double g = 1.0;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            rows[j].signs.push_back(sign_of(factors[j].value));
            if (j >= 2) {
                g *= factors[j].value;
            }
        }
        const std::size_t nf = factors.size();
        rows[nf].signs.push_back(sign_of(g));
        rows[nf + 1].signs.push_back(sign_of(factors[1].value * g));
        rows[nf + 2].signs.push_back(sign_of(factors[0].value * factors[1].value * g));
    }
    const auto& total = rows.back().signs;
    for (long i = 0; i + 1 < q; ++i) {
        if (total[static_cast<std::size_t>(i)] != 1) {
            throw std::logic_error("region_signs: f is not positive on region " + std::to_string(i));
        }
    }
    return rows;
}

std::vector<KnownZero> f_ell_zeros(int ell) {
    check_ell(ell, 20, "f_ell_zeros");
    const long q = (1L << ell) + 1;
    std::vector<KnownZero> zeros{{0.0, 1}};
    for (long m = 1; m < q - 1; ++m) {
        zeros.push_back({static_cast<double>(m) / static_cast<double>(q), 2});
    }
    return zeros;
}

double zero_set_half_gap(int ell) {
    check_ell(ell, 20, "zero_set_half_gap");
    if (ell < 2) {
        throw DomainError("zero_set_half_gap: needs ell >= 2");
    }
    const long p = (1L << ell) + 1;
    const long q = (1L << (ell - 1)) + 1;
    // |a/p - b/q| = |a q - b p| / (p q); minimise the nonzero numerators.
    long best = p * q;
    for (long a = 0; a < p; ++a) {
        for (long b = 0; b <= q; ++b) {
            const long num = std::abs(a * q - b * p);
            if (num != 0) {
                best = std::min(best, num);
            }
        }
    }
    return static_cast<double>(best) / static_cast<double>(2 * p * q);
}

TrigPoly CertificateParts::modified() const {
    TrigPoly out = base + auxiliary;
    out += TrigPoly(y0, {}, {});
    return out;
}

CertificateParts certificate_parts(int k, int ell, double eps_bound) {
    check_ell(ell, 5, "certificate_parts");
    if (!(eps_bound > 0.0)) {
        throw DomainError("certificate_parts: eps_bound must be positive");
    }
    CertificateParts parts;
    parts.base = trig_coeffs(ell);
    const auto y = parts.base.coefficients();
    for (std::size_t j = 1; j < y.size(); ++j) {
        parts.y_max = std::max(parts.y_max, std::abs(y[j]));
    }
    const double eps_mass = std::ldexp(eps_bound, ell + 1);  // 2^{l+1} entries, each <= eps
    parts.y0 = -2.0 * parts.y_max * eps_mass - std::ldexp(1.0, -k);
    const double a = std::abs(parts.y0);
    if (ell == 1) {
        // 4|y0| sin(2 pi x + pi/6): equals 2|y0| at the zeros 0 and 1/3.
        parts.auxiliary = TrigPoly(0.0, {4.0 * a * 0.5}, {4.0 * a * std::numbers::sqrt3 / 2.0});
        return parts;
    }
    parts.shift = zero_set_half_gap(ell);
    const TrigPoly lower = trig_coeffs(ell - 1).shifted(parts.shift);
    const long q = (1L << ell) + 1;
    parts.z_min = std::numeric_limits<double>::infinity();
    for (long m = 0; m < q - 1; ++m) {
        parts.z_min = std::min(parts.z_min, lower(static_cast<double>(m) / static_cast<double>(q)));
    }
    if (!(parts.z_min > 0.0)) {
        throw ConstructionError("certificate_parts: shifted f_{l-1} is not positive on the zeros",
                                -1);
    }
    parts.auxiliary = (2.0 * a / parts.z_min) * lower;
    return parts;
}

Certificate build_certificate(int k, int ell, long n, double eps_bound, double margin) {
    check_ell(ell, 5, "build_certificate");
    if (!(margin > 0.0)) {
        throw DomainError("build_certificate: margin must be positive");
    }
    const double limit = std::ldexp(1.0, ell) / (std::ldexp(1.0, ell) + 1.0) - margin;
    if (!(static_cast<double>(n) / std::ldexp(1.0, k) < limit)) {
        throw DomainError("build_certificate: N/2^k must be below 2^l/(2^l+1) - margin");
    }
    const FarkasSystem system = build_system(k, ell, n, eps_bound);
    const CertificateParts parts = certificate_parts(k, ell, eps_bound);
    Certificate cert;
    cert.y = parts.modified().coefficients();
    cert.y.resize(static_cast<std::size_t>(system.rows()), 0.0);

    const CertificateReport rep = verify_certificate(cert.y, system);
    cert.margin_primal = rep.margin_primal;
    cert.margin_dual = rep.margin_dual;
    if (!rep.valid()) {
        const TrigPoly p = TrigPoly::from_coefficients(cert.y);
        const double scale = std::ldexp(1.0, -k);
        long last = -1;
        while (last + 1 < (1L << k) && p(static_cast<double>(last + 1) * scale) >= 0.0) {
            ++last;
        }
        if (!(rep.margin_dual < 0.0)) {
            last = -1;
        }
        throw ConstructionError("build_certificate: " + rep.detail, last);
    }
    return cert;
}

}  // namespace phaselab
