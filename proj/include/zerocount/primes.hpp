#pragma once

#include "zerocount/factors.hpp"
#include "zerocount/kernel.hpp"

#include <vector>

namespace zc {

// Prime-power phase point: alpha = p^m >= 2, phi = T log(alpha) mod 2 pi.
struct PhasePoint {
    double alpha = 2.0;
    double phi = 0.0;
};

// Per-prime contribution q1 to the upper zeta-term bound, split as
// q1 = f1 + f2 where f1 carries the arctan block and the first logarithmic
// term and f2 the second-order terms. q2 is the lower-side analogue.
double f1_part(PhasePoint p, const Params& prm);
double f2_part(PhasePoint p, const Params& prm);
double q1(PhasePoint p, const Params& prm);
double q2(PhasePoint p, const Params& prm);

struct PhaseMax {
    double phi = 0.0;
    double value = 0.0;
};

// Global maximum of fn over phi in [0, 2 pi) for fixed alpha: 512 equispaced
// seeds, then golden-section refinement of the best bracket to 1e-10.
// Deterministic. fn selects q1 (0) or f2 (1).
PhaseMax max_over_phase(double alpha, const Params& prm, int which = 0);

// Envelope constant c = sqrt((d^2 a2 / 2)^2 + (a3 / 2)^2) bounding the
// second-order phase terms, plus a brute-force circle-scan oracle for it.
double c_constant(const Params& prm);
double c_constant_oracle(const Params& prm, int n_grid = 1 << 21);

struct ReductionReport {
    bool envelope_ok = false;    // max q1 <= max f2 for alpha >= 4
    bool m_monotone_ok = false;  // m-th power bound decreasing in m
    bool crossover_low_ok = false;  // tail bound <= q1(., pi/2) on [2, 6]
    bool crossover_high_ok = false; // tail bound <= q1(., 0) for alpha >= 7
    bool full_ok = false;        // (1/m) max q1(alpha^m) <= max q1(alpha)
    double worst_slack = 0.0;    // most negative slack seen across checks
    bool pass = false;
};

// Verifies that prime powers p^m (m >= 2) are absorbed by the tail estimate:
// the pointwise envelope step, monotonicity in m, and the two crossover
// inequalities that splice the tail bound to the phase maxima.
ReductionReport verify_prime_power_reduction(const std::vector<double>& alpha_grid,
                                             int m_max, const Params& prm);

// Primes up to n inclusive.
std::vector<int> sieve_primes(int n);

// Sum over primes p <= cutoff of the phase maximum of q1. cutoff < 2 gives 0.
double head_sum(int cutoff, const Params& prm, int jobs = 1);

// (zeta''/zeta - (zeta'/zeta)^2)(sigma) for sigma > 1, i.e. the value of
// sum_{n >= 2} Lambda(n) log(n) n^{-sigma}. Evaluated through an
// Euler-Maclaurin jet for zeta, zeta', zeta''; when sigma is large enough
// for the direct von Mangoldt sum's integral tail bound to reach the
// tolerance, that second route is run and the two must agree.
double zeta_log_derivative2(double sigma, double tolerance = 1e-9);

// Tail estimate for primes and prime powers beyond the cutoff:
// roundup_3(c) * (zeta_log_derivative2(sigma_1) - head tower).
double tail_bound(int cutoff, const Params& prm);

struct PrimeSumReport {
    int cutoff = 0;
    std::vector<int> primes;
    std::vector<PhaseMax> head_terms;
    double head = 0.0;
    double tail = 0.0;
    double total_per_degree = 0.0;
};

PrimeSumReport prime_sum_report(int cutoff, const Params& prm, int jobs = 1);

// Zeta-term envelope: T-independent, +/- n_K (head + tail).
EnvelopeTerm e_zeta_K(double T, const FieldSignature& sig, const Params& prm,
                      int cutoff = 79);

} // namespace zc
