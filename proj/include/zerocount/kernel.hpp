#pragma once

#include <string>
#include <vector>

namespace zc {

// Smoothing-kernel parameters. Admissibility requires d > 1/2, a1 > a2,
// a1 + a2 >= 2, and all of a1, a2, a3 positive.
struct Params {
    double d = 0.722;
    double a1 = 1.07;
    double a2 = 0.93;
    double a3 = 0.365;
};

// Point on the comparison strip: b in [-1/2, 1/2], t != 0.
struct KernelPoint {
    double b = 0.0;
    double t = 1.0;
};

struct LocalMax {
    double t = 0.0;
    double h = 0.0;
};

struct Lemma21Certificate {
    Params params;
    std::vector<double> roots;    // real critical points of h, ascending
    std::vector<LocalMax> maxima; // local maxima among the roots
    double t0 = 0.0;              // truncation radius used for the grid
    double boundary_margin = 0.0; // max of H over the dense rectangle grid
    double limit_margin = 0.0;    // max over b of the t -> 0+ upper limit
    bool verdict = false;
    std::string failure;          // first failing check; empty when verdict
};

struct VerifyOptions {
    int grid_b = 200;
    int grid_t = 2000;        // total t points, split over the two signs
    double t0_override = 0.0; // > 0 bypasses the fixed-point iteration
    double slack = 1e-9;
};

// The arctan comparison function, its rational majorant, and their gap
// H = f - majorant, which the certificate establishes to be <= 0.
double eval_f(KernelPoint p, const Params& prm);
double eval_majorant(KernelPoint p, const Params& prm);
double eval_H(KernelPoint p, const Params& prm);

// Edge curve h(t) = H(1/2, t) and its derivative in closed form.
double eval_h(double t, const Params& prm);
double eval_h_prime(double t, const Params& prm);

// One-sided limits of H(b, t) as t -> 0+ / 0-.
double limit_H_zero(double b, const Params& prm, int side);

// Real roots of h'(t), ascending. h' clears denominators to a degree-13
// polynomial with exact rational coefficients; throws if the degree is not
// 13 (a1 = a2 degenerates it) or if a root fails |h'(r)| <= 1e-8.
std::vector<double> find_h_prime_roots(const Params& prm);

// Radius beyond which the tail estimate keeps H negative; fixed-point
// iteration on the tail majorant. Throws if the iteration cannot close.
double compute_t0(const Params& prm);

Lemma21Certificate verify_lemma21(const Params& prm, const VerifyOptions& opts = {});

struct ParamBox {
    double d_lo = 0.0, d_hi = 0.0;
    double a1_lo = 0.0, a1_hi = 0.0;
    double a2_lo = 0.0, a2_hi = 0.0;
    double a3_lo = 0.0, a3_hi = 0.0;
};

struct SearchResult {
    Params best;
    double objective = 0.0; // d * a1
    Lemma21Certificate certificate;
};

// Deterministic pattern search minimizing d*a1 over admissible parameters
// in the box (ties broken by smaller d). Throws std::runtime_error when the
// box contains no admissible point.
SearchResult search_params(const ParamBox& box);

} // namespace zc
