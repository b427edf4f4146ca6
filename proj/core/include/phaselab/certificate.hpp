#pragma once

#include <string>
#include <vector>

#include "phaselab/farkas.hpp"
#include "phaselab/trig_poly.hpp"

namespace phaselab {

/// f_l(x) = sin(pi (x - 1/(2^l+1))) sin(pi (2^l+1) x) prod_{m=2}^{2^{l-1}} g_m(x),
/// g_m(x) = cos(2 pi m / (2^l+1)) - cos(2 pi x). For l = 1 the leading factor
/// is sin(pi x + 2 pi / 3), which fixes the overall sign.
double f_ell_eval(int ell, double x);

struct Factor {
    std::string name;
    double value = 0.0;
};

/// The individual product-form factors at x, in product order:
/// shift, main, g_2, ..., g_{2^{l-1}}.
std::vector<Factor> f_ell_factors(int ell, double x);

/// Exact sum form of f_l recovered by a discrete Fourier transform. l <= 6.
TrigPoly trig_coeffs(int ell);

struct SignRow {
    std::string name;
    std::vector<int> signs;  // one of -1, 0, +1 per region
};

/// Signs of each factor and of the partial products on the 2^l+1 regions
/// [i/(2^l+1), (i+1)/(2^l+1)], sampled at midpoints. Rows: the factors, then
/// "g_product", "main*g_product" and "f". l <= 5.
std::vector<SignRow> region_signs(int ell);

/// Zeros of f_l on [0, 2^l/(2^l+1)): a simple zero at 0 and touching zeros
/// at m/(2^l+1), m = 1..2^l-1.
std::vector<KnownZero> f_ell_zeros(int ell);

struct CertificateParts {
    TrigPoly base;        // f_l
    double y0 = 0.0;      // -2 Y_max sum|eps_i| - 2^{-k}
    TrigPoly auxiliary;   // scaled correction, including its factor
    double y_max = 0.0;
    double shift = 0.0;   // l >= 2: shift of f_{l-1}
    double z_min = 0.0;   // l >= 2: min of the shifted f_{l-1} over the zeros of f_l
    TrigPoly modified() const;
};

/// Parts of the modified polynomial for eps box eps_bound. 1 <= l <= 5.
CertificateParts certificate_parts(int k, int ell, double eps_bound);

/// Half the minimal distance between {a/(2^l+1)} and {b/(2^{l-1}+1)} in [0, 1).
double zero_set_half_gap(int ell);

/// Modified f_l as a certificate for the system (k, l, N, eps_bound), with
/// margins filled in. Requires N/2^k < 2^l/(2^l+1) - margin; throws
/// ConstructionError if some column m <= N is negative.
Certificate build_certificate(int k, int ell, long n, double eps_bound, double margin = 0.01);

}  // namespace phaselab
