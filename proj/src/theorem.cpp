#include "zerocount/theorem.hpp"

#include "zerocount/rounding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Kill binary noise on sums of 3-decimal constants.
double snap9(double x) {
    return std::round(x * 1e9) / 1e9;
}

} // namespace

AssembledConstants assemble_constants(const LemmaOutputs& raw, const Params& prm) {
    AssembledConstants c;
    c.head_rounded = round_up_dec(raw.head, 4);
    c.tail_rounded = round_up_dec(raw.tail, 4);
    c.zeta_per_degree = round_up_dec(c.head_rounded + c.tail_rounded, 3);

    const double g1_up = round_up_dec(raw.gamma1_sup, 3);
    const double g2_up = round_up_dec(raw.gamma2_sup, 3);
    c.gamma_per_degree_upper = round_up_dec(std::max(g1_up, g2_up / 2.0), 3);
    const double g1_dn = -round_down_dec(raw.gamma1_inf, 3);
    const double g2_dn = -round_down_dec(std::min(raw.gamma2_inf, 0.0), 3);
    c.gamma_per_degree_lower = round_up_dec(std::max(g1_dn, g2_dn / 2.0), 3);

    const double asym = snap9(c.gamma_per_degree_upper - c.gamma_per_degree_lower);
    c.upper_per_degree = snap9(round_up_dec(c.gamma_per_degree_upper + c.zeta_per_degree, 3) + asym);
    c.lower_per_degree = snap9(round_up_dec(c.gamma_per_degree_lower + c.zeta_per_degree, 3) + asym);

    c.s_sq_upper = round_up_dec(raw.s_sq_upper_at_1, 3);
    c.s_sq_lower = round_down_dec(raw.s_sq_lower_at_1, 3);
    c.center = round_down_dec((c.s_sq_upper + c.s_sq_lower) / 2.0, 3);
    c.radius_const = round_up_dec((c.s_sq_upper - c.s_sq_lower) / 2.0
                                  + ((c.s_sq_upper + c.s_sq_lower) / 2.0 - c.center), 3);

    c.log_coeff = round_up_dec(prm.d * prm.a1 / 4.0, 3);
    c.per_degree_const = round_up_dec(c.upper_per_degree - c.log_coeff * std::log(2.0 * kPi), 3);
    c.q_case_const = snap9(c.per_degree_const + c.radius_const);
    c.corollary_coeff = c.log_coeff / 2.0;
    c.corollary_const = snap9((c.q_case_const + c.center) / 2.0);
    return c;
}

BoundEnvelope assemble_envelope(double T, const FieldSignature& sig,
                                const Params& prm, const LemmaOutputs& raw) {
    if (!(T > 0.0)) throw std::domain_error("assemble_envelope: T must be positive");
    if (sig.n_k != sig.r1 + 2 * sig.r2)
        throw std::domain_error("assemble_envelope: n_k must equal r1 + 2 r2");
    if (sig.log_dk < 0.0)
        throw std::domain_error("assemble_envelope: log_dk must be nonnegative");
    const AssembledConstants c = assemble_constants(raw, prm);
    BoundEnvelope env;
    env.T = T;
    env.main_term = (T / kPi)
                    * (sig.log_dk + sig.n_k * std::log(T / (2.0 * kPi * std::exp(1.0))));
    env.center = c.center;
    env.radius = c.log_coeff * (sig.log_dk + sig.n_k * std::log(T)) + c.per_degree_const * sig.n_k
                 + c.radius_const;
    env.lower = env.main_term + env.center - env.radius;
    env.upper = env.main_term + env.center + env.radius;
    return env;
}

BoundEnvelope bound_NK(double T, const FieldSignature& sig) {
    return assemble_envelope(T, sig, Params{}, LemmaOutputs{});
}

BoundEnvelope corollary_riemann(double T) {
    if (!(T > 0.0)) throw std::domain_error("corollary_riemann: T must be positive");
    const AssembledConstants c = assemble_constants(LemmaOutputs{}, Params{});
    BoundEnvelope env;
    env.T = T;
    env.main_term = (T / (2.0 * kPi)) * std::log(T / (2.0 * kPi * std::exp(1.0)));
    env.center = 0.0;
    env.radius = c.corollary_coeff * std::log(T) + c.corollary_const;
    env.lower = env.main_term - env.radius;
    env.upper = env.main_term + env.radius;
    return env;
}

ZeroTable load_zero_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("zero table: cannot open " + path);
    ZeroTable table;
    table.source = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("zero table: parse error at line "
                                     + std::to_string(lineno));
        }
        std::string rest;
        if (used != tok.size() || (ss >> rest))
            throw std::runtime_error("zero table: parse error at line "
                                     + std::to_string(lineno));
        if (!(v > 0.0))
            throw std::runtime_error("zero table: nonpositive ordinate at line "
                                     + std::to_string(lineno));
        if (!table.ordinates.empty() && v <= table.ordinates.back())
            throw std::runtime_error("zero table: ordinates not strictly ascending at line "
                                     + std::to_string(lineno));
        table.ordinates.push_back(v);
    }
    if (table.ordinates.empty()) throw std::runtime_error("zero table: no data in " + path);
    return table;
}

double count_zeros(const ZeroTable& table, double T) {
    double n = 0.0;
    for (double g : table.ordinates) {
        if (std::fabs(g - T) <= 1e-9) n += 0.5;
        else if (g < T) n += 1.0;
        else break;
    }
    return n;
}

ValidationReport validate(const ZeroTable& table, double t_min, double t_max, double step) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || !(step > 0.0))
        throw std::domain_error("validate: bad grid");
    if (t_max >= table.ordinates.back())
        throw std::domain_error("validate: grid extends beyond the zero table "
                                "(counts would be truncated)");
    ValidationReport rep;
    rep.min_margin = 1e300;
    rep.pass = true;
    const int n = static_cast<int>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) {
        const double T = t_min + step * i;
        ValidationRow row;
        row.T = T;
        row.counted = count_zeros(table, T);
        const BoundEnvelope env = corollary_riemann(T);
        row.main_term = env.main_term;
        row.deviation = std::fabs(row.counted - row.main_term);
        row.radius = env.radius;
        row.margin = row.radius - row.deviation;
        if (row.margin < rep.min_margin) {
            rep.min_margin = row.margin;
            rep.arg_min = T;
        }
        if (row.margin < 0.0) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace zc
