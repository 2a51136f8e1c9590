#pragma once

#include "zerocount/factors.hpp"
#include "zerocount/kernel.hpp"

#include <string>
#include <vector>

namespace zc {

// Raw lemma outputs feeding the constant assembly. Defaults are the values
// computed by this library's own scan and summation routines at the default
// parameters; tests cross-check them against live runs.
struct LemmaOutputs {
    double s_sq_upper_at_1 = 2.3807337032635059;  // e_s_squared(1).upper
    double s_sq_lower_at_1 = 1.4584975026377125;  // e_s_squared(1).lower
    double gamma1_sup = 0.048910518195998239;     // scan sup of gamma1 residual
    double gamma1_inf = -0.24972955726423163;     // scan inf
    double gamma2_sup = 0.51492740811930326;      // scan sup of gamma2 residual
    double gamma2_inf = 0.00054062516870413354;   // scan inf
    double head = 1.1083408575555884;             // head_sum(79), single thread
    double tail = 4.5242835654332163;             // tail_bound(79)
};

// Decimal constants of the assembled bound, each produced by the outward
// rounding pipeline from LemmaOutputs.
struct AssembledConstants {
    double gamma_per_degree_upper = 0.0; // 0.258
    double gamma_per_degree_lower = 0.0; // 0.250
    double zeta_per_degree = 0.0;        // 5.633
    double head_rounded = 0.0;           // 1.1084
    double tail_rounded = 0.0;           // 4.5243
    double upper_per_degree = 0.0;       // 5.899
    double lower_per_degree = 0.0;       // 5.891
    double s_sq_upper = 0.0;             // 2.381
    double s_sq_lower = 0.0;             // 1.458
    double center = 0.0;                 // 1.919
    double radius_const = 0.0;           // 0.462
    double log_coeff = 0.0;              // 0.194
    double per_degree_const = 0.0;       // 5.543
    double q_case_const = 0.0;           // 6.005
    double corollary_coeff = 0.0;        // 0.097
    double corollary_const = 0.0;        // 3.962
};

AssembledConstants assemble_constants(const LemmaOutputs& raw, const Params& prm);

// Two-sided zero-count envelope at height T.
struct BoundEnvelope {
    double T = 0.0;
    double main_term = 0.0;
    double center = 0.0;
    double radius = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

// Envelope built from explicitly supplied lemma outputs.
BoundEnvelope assemble_envelope(double T, const FieldSignature& sig,
                                const Params& prm, const LemmaOutputs& raw);

// Envelope with the default (published) constants.
BoundEnvelope bound_NK(double T, const FieldSignature& sig);

// Specialization to the rational field: N(T) envelope for zeros with
// 0 < ordinate < T counted once (half of the symmetric count).
BoundEnvelope corollary_riemann(double T);

struct ZeroTable {
    std::vector<double> ordinates; // strictly ascending, positive
    std::string source;
};

// Reads one ordinate per line; '#' starts a comment; blank lines skipped.
// Throws std::runtime_error with the line number on parse errors or
// non-ascending data.
ZeroTable load_zero_table(const std::string& path);

// Zeros with ordinate < T plus half weight for |ordinate - T| <= 1e-9.
double count_zeros(const ZeroTable& table, double T);

struct ValidationRow {
    double T = 0.0;
    double counted = 0.0;
    double main_term = 0.0;
    double deviation = 0.0;
    double radius = 0.0;
    double margin = 0.0; // radius - deviation
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    double min_margin = 0.0;
    double arg_min = 0.0;
    bool pass = false; // margins nonnegative everywhere
};

// Checks |count - main| <= radius for the rational-field corollary on the
// grid t_min, t_min + step, ..., <= t_max. Requires t_max below the last
// tabulated ordinate.
ValidationReport validate(const ZeroTable& table, double t_min, double t_max,
                          double step);

} // namespace zc
