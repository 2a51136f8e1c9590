#pragma once

#include "zerocount/kernel.hpp"

namespace zc {

// Number-field shape data: degree n_k = r1 + 2*r2 and log of the absolute
// discriminant.
struct FieldSignature {
    int n_k = 1;
    int r1 = 1;
    int r2 = 0;
    double log_dk = 0.0;
};

// Two-sided envelope value of one completed-function factor at height T.
struct EnvelopeTerm {
    double upper = 0.0;
    double lower = 0.0;
};

// Residual part of a gamma-factor envelope once the smooth main terms are
// removed: upper = closed-form upper residual plus its remainder budget,
// lower = closed-form lower residual minus the budget.
struct ResidualPair {
    double upper = 0.0;
    double lower = 0.0;
};

// s(s-1) factor (exact arctan closed form).
EnvelopeTerm e_s_squared(double T, const Params& prm);

// d_K^{s/2} factor (exact).
EnvelopeTerm e_discriminant(double T, double log_dk, const Params& prm);

// Gamma-factor residuals after removing (T/pi)log(T/(2 pi e)) per degree and
// the (d a1/4)log(T/(2 pi)) correction per degree.
ResidualPair gamma1_residual(double T, const Params& prm);
ResidualPair gamma2_residual(double T, const Params& prm);

// Full per-factor envelopes (main terms + residuals).
EnvelopeTerm e_gamma1(double T, const Params& prm);
EnvelopeTerm e_gamma2(double T, const Params& prm);

// Archimedean part of the completed function: r1 copies of the real-place
// factor and r2 copies of the complex-place factor.
EnvelopeTerm e_gamma_K(double T, const FieldSignature& sig, const Params& prm);

// Same, but with the residuals replaced by the rounded per-degree constants
// (+0.258 / -0.25 per unit of degree) used by the assembled bound.
EnvelopeTerm e_gamma_K_rounded(double T, const FieldSignature& sig, const Params& prm);

struct GammaScanReport {
    double sup1 = 0.0, inf1 = 0.0;  // real-place residual range over the grid
    double sup2 = 0.0, inf2 = 0.0;  // complex-place residual range
    double arg_sup1 = 0.0, arg_inf1 = 0.0;
    double arg_sup2 = 0.0, arg_inf2 = 0.0;
    bool tail_ok = false;           // sparse check that the ranges persist past t_max
    bool pass = false;              // ranges inside the published windows
};

// Scans the residuals on a log-spaced grid of `steps` points over
// [t_min, t_max] and checks the published windows
// (-0.25 <= gamma1 <= 0.049, 0 <= gamma2 <= 0.515).
GammaScanReport scan_gamma_residuals(double t_min, double t_max, int steps,
                                     const Params& prm, int jobs = 1);

} // namespace zc
