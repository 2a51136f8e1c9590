#pragma once

#include <complex>
#include <string>
#include <vector>

namespace zc {

// Point s = sigma + i t in the right half plane.
struct ComplexPoint {
    double sigma = 0.0;
    double t = 0.0;
};

// A certified approximate value: the true quantity lies within
// remainder_radius of value.
struct SpecFunResult {
    double value = 0.0;
    double remainder_radius = 0.0;
};

struct TrigammaResult {
    SpecFunResult re;
    SpecFunResult im;
};

// Elementary closed-form approximations with certified remainder radii,
// valid for sigma > 0, t != 0.
SpecFunResult im_log_gamma(ComplexPoint s);
SpecFunResult re_digamma(ComplexPoint s);
TrigammaResult trigamma(ComplexPoint s);

// High-accuracy references (independent of the certified approximations):
// argument-shifted Stirling series for log Gamma and its derivatives.
// reference_log_gamma targets |error| <= precision_target (clamped to
// [1e-15, 1e-6]) and tracks the continuous branch of the logarithm.
std::complex<double> reference_log_gamma(std::complex<double> s,
                                         double precision_target = 1e-13);
std::complex<double> reference_digamma(std::complex<double> s);
std::complex<double> reference_trigamma(std::complex<double> s);

// Second, structurally different reference for log Gamma (rational
// approximation), used to cross-validate reference_log_gamma.
std::complex<double> reference_log_gamma_alt(std::complex<double> s);

// Checks on the integrand kernels behind the remainder radii:
//   f(u) = (1/u)(1/2 - 1/u + 1/(e^u - 1)),  g = u f,  h = u^2 f.
// Verifies the small-u limits and that the third-derivative magnitudes
// stay within the constants used by the radii (1/1022, 1/120, 1/23).
struct KernelCheckReport {
    double f_limit0 = 0.0;        // f(0+), should be 1/12
    double f_third_sup = 0.0;     // sup |f'''| over (0, 50]
    double g_third_sup = 0.0;     // sup |g'''|
    double h_third_sup = 0.0;     // sup |h'''|
    double f_third_bound = 0.0;   // 1/1022
    double g_third_bound = 0.0;   // 1/120
    double h_third_bound = 0.0;   // 1/23
    double seam_gap = 0.0;        // series vs closed form at the u = 0.9 handover
    double fd_gap = 0.0;          // closed form vs finite differences at probe points
    bool tail_monotone = false;   // derivatives decay beyond u = 50
    bool pass = false;
    std::string failure;
};

KernelCheckReport binet_kernel_checks();

} // namespace zc
