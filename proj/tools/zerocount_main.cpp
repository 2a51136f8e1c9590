#include "zerocount/certify.hpp"
#include "zerocount/factors.hpp"
#include "zerocount/kernel.hpp"
#include "zerocount/primes.hpp"
#include "zerocount/specfun.hpp"
#include "zerocount/theorem.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

zc::Params parse_params(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        vals.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::runtime_error("bad number in --params: " + item);
    }
    if (vals.size() != 4) throw std::runtime_error("--params needs d,a1,a2,a3");
    return {vals[0], vals[1], vals[2], vals[3]};
}

// Box syntax: "d=lo:hi,a1=lo:hi,a2=lo:hi,a3=lo:hi" (any order, all four keys).
zc::ParamBox parse_box(const std::string& spec) {
    zc::ParamBox box;
    bool seen_d = false, seen_a1 = false, seen_a2 = false, seen_a3 = false;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const size_t eq = part.find('=');
        const size_t colon = part.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || colon == std::string::npos)
            throw std::runtime_error("bad box component (want name=lo:hi): " + part);
        const std::string name = part.substr(0, eq);
        const double lo = std::stod(part.substr(eq + 1, colon - eq - 1));
        const double hi = std::stod(part.substr(colon + 1));
        if (!(lo <= hi)) throw std::runtime_error("empty range in box component: " + part);
        if (name == "d") {
            box.d_lo = lo; box.d_hi = hi; seen_d = true;
        } else if (name == "a1") {
            box.a1_lo = lo; box.a1_hi = hi; seen_a1 = true;
        } else if (name == "a2") {
            box.a2_lo = lo; box.a2_hi = hi; seen_a2 = true;
        } else if (name == "a3") {
            box.a3_lo = lo; box.a3_hi = hi; seen_a3 = true;
        } else {
            throw std::runtime_error("unknown box key: " + name);
        }
    }
    if (!(seen_d && seen_a1 && seen_a2 && seen_a3))
        throw std::runtime_error("--box must set all of d, a1, a2, a3");
    return box;
}

json params_json(const zc::Params& p) {
    return json{{"d", p.d}, {"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}};
}

json certificate_json(const zc::Lemma21Certificate& cert) {
    json maxima = json::array();
    for (const zc::LocalMax& m : cert.maxima) maxima.push_back(json{{"t", m.t}, {"h", m.h}});
    return json{
        {"params", params_json(cert.params)},
        {"roots", cert.roots},
        {"maxima", maxima},
        {"t0", cert.t0},
        {"boundary_margin", cert.boundary_margin},
        {"limit_margin", cert.limit_margin},
        {"verdict", cert.verdict},
        {"failure", cert.failure},
    };
}

int run_specfun_table(const zc::Params&, double sigma, double t_min, double t_max,
                      int steps, const std::string& function, const std::string& out) {
    std::string csv = "sigma,t,value,remainder_radius,reference,abs_error\n";
    for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? t_min
                                    : t_min + (t_max - t_min) * static_cast<double>(i) / (steps - 1);
        const zc::ComplexPoint p{sigma, t};
        const std::complex<double> s(sigma, t);
        zc::SpecFunResult approx;
        double reference = 0.0;
        if (function == "im-log-gamma") {
            approx = zc::im_log_gamma(p);
            reference = zc::reference_log_gamma(s).imag();
        } else if (function == "re-digamma") {
            approx = zc::re_digamma(p);
            reference = zc::reference_digamma(s).real();
        } else if (function == "trigamma-re") {
            approx = zc::trigamma(p).re;
            reference = zc::reference_trigamma(s).real();
        } else {
            approx = zc::trigamma(p).im;
            reference = zc::reference_trigamma(s).imag();
        }
        csv += num(sigma) + "," + num(t) + "," + num(approx.value) + ","
             + num(approx.remainder_radius) + "," + num(reference) + ","
             + num(std::fabs(approx.value - reference)) + "\n";
    }
    write_output(out, csv);
    return 0;
}

int run_verify_lemma21(const zc::Params& prm, const zc::VerifyOptions& opts,
                       const std::string& out) {
    const zc::Lemma21Certificate cert = zc::verify_lemma21(prm, opts);
    write_output(out, certificate_json(cert).dump(2) + "\n");
    if (!cert.verdict) {
        std::cerr << "not admissible: " << cert.failure << "\n";
        return 1;
    }
    return 0;
}

int run_search_params(const std::string& box_spec, const std::string& out) {
    const zc::ParamBox box = parse_box(box_spec);
    const zc::SearchResult res = zc::search_params(box);
    const json doc{
        {"best", params_json(res.best)},
        {"objective", res.objective},
        {"certificate", certificate_json(res.certificate)},
    };
    write_output(out, doc.dump(2) + "\n");
    return 0;
}

int run_gamma_check(const zc::Params& prm, double t_min, double t_max, int steps,
                    const std::string& out) {
    if (!(t_min > 0.0) || !(t_max > t_min)) throw std::runtime_error("bad T range");
    if (steps < 2) throw std::runtime_error("need at least 2 steps");
    std::string csv =
        "T,gamma1_upper,gamma1_lower,gamma2_upper,gamma2_lower,sup1,inf1,sup2,inf2\n";
    double sup1 = -1e300, inf1 = 1e300, sup2 = -1e300, inf2 = 1e300;
    const double lr = std::log(t_max / t_min);
    for (int i = 0; i < steps; ++i) {
        const double T = t_min * std::exp(lr * static_cast<double>(i) / (steps - 1));
        const zc::ResidualPair r1 = zc::gamma1_residual(T, prm);
        const zc::ResidualPair r2 = zc::gamma2_residual(T, prm);
        sup1 = std::max(sup1, r1.upper);
        inf1 = std::min(inf1, r1.lower);
        sup2 = std::max(sup2, r2.upper);
        inf2 = std::min(inf2, r2.lower);
        csv += num(T) + "," + num(r1.upper) + "," + num(r1.lower) + ","
             + num(r2.upper) + "," + num(r2.lower) + ","
             + num(sup1) + "," + num(inf1) + "," + num(sup2) + "," + num(inf2) + "\n";
    }
    write_output(out, csv);
    std::cerr << "gamma1 range [" << num(inf1) << ", " << num(sup1) << "]"
              << " published window (-0.25, 0.049]\n"
              << "gamma2 range [" << num(inf2) << ", " << num(sup2) << "]"
              << " published window [0, 0.515]\n";
    const bool ok = inf1 > -0.25 && sup1 <= 0.049 && inf2 >= 0.0 && sup2 <= 0.515;
    return ok ? 0 : 1;
}

int run_prime_sums(const zc::Params& prm, int cutoff, int jobs, const std::string& out) {
    const zc::PrimeSumReport rep = zc::prime_sum_report(cutoff, prm, jobs);
    json rows = json::array();
    for (size_t i = 0; i < rep.primes.size(); ++i) {
        rows.push_back(json{
            {"p", rep.primes[i]},
            {"phi", rep.head_terms[i].phi},
            {"value", rep.head_terms[i].value},
        });
    }
    const double c = zc::c_constant(prm);
    const json doc{
        {"cutoff", rep.cutoff},
        {"c_constant", c},
        {"rows", rows},
        {"head", rep.head},
        {"tail", rep.tail},
        {"total_per_degree", rep.total_per_degree},
        {"published", json{{"head", 1.1084}, {"tail", 4.5243}, {"total", 5.633}, {"c", 0.304}}},
        {"slack", json{{"head", 1.1084 - rep.head},
                       {"tail", 4.5243 - rep.tail},
                       {"total", 5.633 - rep.total_per_degree},
                       {"c", 0.304 - c}}},
    };
    write_output(out, doc.dump(2) + "\n");
    return 0;
}

int run_bound(double T, const zc::FieldSignature& sig, const std::string& out) {
    const zc::BoundEnvelope env = zc::bound_NK(T, sig);
    const json doc{
        {"T", env.T},
        {"n_k", sig.n_k},
        {"r1", sig.r1},
        {"r2", sig.r2},
        {"log_dk", sig.log_dk},
        {"main_term", env.main_term},
        {"center", env.center},
        {"radius", env.radius},
        {"lower", env.lower},
        {"upper", env.upper},
    };
    write_output(out, doc.dump(2) + "\n");
    return 0;
}

int run_validate(const std::string& zeros, double t_min, double t_max, double step,
                 const std::string& out) {
    if (zeros.empty())
        throw std::runtime_error("no zero table: pass --zeros or set ZEROCOUNT_ZERO_TABLE");
    const zc::ZeroTable table = zc::load_zero_table(zeros);
    const zc::ValidationReport rep = zc::validate(table, t_min, t_max, step);
    std::string csv = "T,counted,main_term,deviation,radius,margin\n";
    for (const zc::ValidationRow& row : rep.rows) {
        csv += num(row.T) + "," + num(row.counted) + "," + num(row.main_term) + ","
             + num(row.deviation) + "," + num(row.radius) + "," + num(row.margin) + "\n";
    }
    write_output(out, csv);
    std::cerr << (rep.pass ? "pass" : "FAIL") << ": min margin " << num(rep.min_margin)
              << " at T = " << num(rep.arg_min) << " over " << rep.rows.size() << " heights\n";
    return rep.pass ? 0 : 1;
}

int run_full_certify(const zc::CertifyConfig& cfg, const std::string& out) {
    const zc::CertifyReport rep = zc::full_certify(cfg);
    write_output(out, zc::certify_report_json(rep, cfg));
    if (!rep.all_pass) {
        std::cerr << "first failing stage: " << rep.first_failure << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-counting envelope toolkit: kernel certificates, certified "
                 "special-function tables, residual scans, prime sums, and the "
                 "assembled two-sided bound with zero-table validation"};
    app.require_subcommand(1);

    std::string params_csv;
    int jobs = 1;
    app.add_option("--params", params_csv, "Kernel parameters as d,a1,a2,a3")
        ->option_text("D,A1,A2,A3");
    app.add_option("--jobs", jobs, "Worker threads for scans and sums")
        ->check(CLI::PositiveNumber);

    // specfun-table
    auto* sf = app.add_subcommand("specfun-table",
                                  "Tabulate a certified approximation against its reference");
    double sf_sigma = 1.222, sf_tmin = 0.5, sf_tmax = 100.0;
    int sf_steps = 200;
    std::string sf_function = "im-log-gamma", sf_out;
    sf->add_option("--sigma", sf_sigma, "Real part of the argument")->required();
    sf->add_option("--t-min", sf_tmin, "Start of the imaginary-part grid")->required();
    sf->add_option("--t-max", sf_tmax, "End of the imaginary-part grid")->required();
    sf->add_option("--steps", sf_steps, "Number of grid points")->check(CLI::PositiveNumber);
    sf->add_option("--function", sf_function, "Which approximation to tabulate")
        ->check(CLI::IsMember({"im-log-gamma", "re-digamma", "trigamma-re", "trigamma-im"}));
    sf->add_option("--out", sf_out, "Output CSV path (default stdout)");

    // verify-lemma21
    auto* vl = app.add_subcommand("verify-lemma21",
                                  "Certify that the majorant dominates the kernel on the strip");
    double vl_d = -1.0, vl_a1 = -1.0, vl_a2 = -1.0, vl_a3 = -1.0;
    zc::VerifyOptions vl_opts;
    std::string vl_out;
    vl->add_option("--d", vl_d, "Override the shift parameter d");
    vl->add_option("--a1", vl_a1, "Override a1");
    vl->add_option("--a2", vl_a2, "Override a2");
    vl->add_option("--a3", vl_a3, "Override a3");
    vl->add_option("--grid-b", vl_opts.grid_b, "Grid points across the strip width")
        ->check(CLI::Range(3, 100000));
    vl->add_option("--grid-t", vl_opts.grid_t, "Grid points along the strip height")
        ->check(CLI::Range(16, 10000000));
    vl->add_option("--out", vl_out, "Certificate JSON path (default stdout)");

    // search-params
    auto* sp = app.add_subcommand("search-params",
                                  "Minimize d*a1 over admissible parameters in a box");
    std::string sp_box, sp_out;
    sp->add_option("--box", sp_box, "Search box, e.g. d=0.6:0.9,a1=1:1.3,a2=0.8:1,a3=0.2:0.5")
        ->required();
    sp->add_option("--out", sp_out, "Result JSON path (default stdout)");

    // gamma-check
    auto* gc = app.add_subcommand("gamma-check",
                                  "Scan the gamma-factor residual ranges on a log grid");
    double gc_tmin = 1.0, gc_tmax = 1000.0;
    int gc_steps = 10000;
    std::string gc_out;
    gc->add_option("--t-min", gc_tmin, "Lower end of the height range");
    gc->add_option("--t-max", gc_tmax, "Upper end of the height range");
    gc->add_option("--steps", gc_steps, "Number of log-spaced heights");
    gc->add_option("--out", gc_out, "Output CSV path (default stdout)");

    // prime-sums
    auto* ps = app.add_subcommand("prime-sums",
                                  "Head sum over primes, tail bound, and the per-degree total");
    int ps_cutoff = 79;
    std::string ps_out;
    ps->add_option("--cutoff", ps_cutoff, "Largest prime in the head sum");
    ps->add_option("--out", ps_out, "Report JSON path (default stdout)");

    // bound
    auto* bd = app.add_subcommand("bound", "Two-sided zero-count envelope for a field");
    double bd_T = 0.0, bd_logdk = 0.0;
    int bd_nk = 1, bd_r1 = 1, bd_r2 = 0;
    std::string bd_out;
    bd->add_option("--T", bd_T, "Height")->required();
    bd->add_option("--nk", bd_nk, "Field degree");
    bd->add_option("--r1", bd_r1, "Number of real places");
    bd->add_option("--r2", bd_r2, "Number of complex places");
    bd->add_option("--log-dk", bd_logdk, "Log of the absolute discriminant");
    bd->add_option("--out", bd_out, "Envelope JSON path (default stdout)");

    // validate
    auto* va = app.add_subcommand("validate",
                                  "Check the envelope against a table of zero ordinates");
    std::string va_zeros, va_out;
    double va_tmin = 1.0, va_tmax = 99.0, va_step = 0.5;
    va->add_option("--zeros", va_zeros, "Zero ordinate table, one per line")
        ->envname("ZEROCOUNT_ZERO_TABLE");
    va->add_option("--t-min", va_tmin, "First height");
    va->add_option("--t-max", va_tmax, "Last height");
    va->add_option("--step", va_step, "Height step");
    va->add_option("--out", va_out, "Output CSV path (default stdout)");

    // full-certify
    auto* fc = app.add_subcommand("full-certify",
                                  "Run every verification stage and emit one JSON bundle");
    std::string fc_zeros, fc_out;
    int fc_cutoff = 79, fc_steps = 10000;
    fc->add_option("--zeros", fc_zeros, "Zero table for the validation stage (optional)")
        ->envname("ZEROCOUNT_ZERO_TABLE");
    fc->add_option("--cutoff", fc_cutoff, "Head-sum prime cutoff");
    fc->add_option("--steps", fc_steps, "Residual scan points");
    fc->add_option("--out", fc_out, "Report JSON path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        zc::Params prm;
        if (!params_csv.empty()) prm = parse_params(params_csv);

        if (sf->parsed())
            return run_specfun_table(prm, sf_sigma, sf_tmin, sf_tmax, sf_steps, sf_function,
                                     sf_out);
        if (vl->parsed()) {
            if (vl_d > 0) prm.d = vl_d;
            if (vl_a1 > 0) prm.a1 = vl_a1;
            if (vl_a2 > 0) prm.a2 = vl_a2;
            if (vl_a3 > 0) prm.a3 = vl_a3;
            return run_verify_lemma21(prm, vl_opts, vl_out);
        }
        if (sp->parsed()) return run_search_params(sp_box, sp_out);
        if (gc->parsed()) return run_gamma_check(prm, gc_tmin, gc_tmax, gc_steps, gc_out);
        if (ps->parsed()) return run_prime_sums(prm, ps_cutoff, jobs, ps_out);
        if (bd->parsed()) return run_bound(bd_T, {bd_nk, bd_r1, bd_r2, bd_logdk}, bd_out);
        if (va->parsed()) return run_validate(va_zeros, va_tmin, va_tmax, va_step, va_out);
        if (fc->parsed()) {
            zc::CertifyConfig cfg;
            cfg.params = prm;
            cfg.head_cutoff = fc_cutoff;
            cfg.scan_steps = fc_steps;
            cfg.jobs = jobs;
            cfg.zero_table_path = fc_zeros;
            return run_full_certify(cfg, fc_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
