#include "zerocount/kernel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using Rat = boost::multiprecision::cpp_rational;
using Poly = std::vector<Rat>; // coefficient list, index = power

Poly pmul(const Poly& p, const Poly& q) {
    Poly r(p.size() + q.size() - 1, Rat(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (q[j] == 0) continue;
            r[i + j] += p[i] * q[j];
        }
    }
    return r;
}

Poly padd(const Poly& p, const Poly& q) {
    Poly r(std::max(p.size(), q.size()), Rat(0));
    for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
    for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
    return r;
}

Poly pscale(const Poly& p, const Rat& c) {
    Poly r = p;
    for (auto& x : r) x *= c;
    return r;
}

void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = c.size(); k >= 1; --k) s = s * x + c[k - 1];
    return s;
}

// Clears denominators of h'(t): h'(t) * A B C^3 D^3 = P(t) + (pi/4) Q(t)
// with A = (2d+1/2)^2+t^2, B = (2d-1/2)^2+t^2, C = (d+1/2)^2+t^2,
// D = (d-1/2)^2+t^2. P collapses to degree 12; Q has degree 13 with
// leading coefficient 4 d^2 (a1 - a2).
struct HPrimePoly {
    std::vector<double> coef; // combined double coefficients
    std::vector<double> dcoef; // derivative coefficients
};

HPrimePoly build_h_prime_poly(const Params& prm) {
    const Rat d(prm.d), x1(prm.a1), x2(prm.a2), x3(prm.a3);
    const Rat half(1, 2);
    const Rat cA = (2 * d + half) * (2 * d + half);
    const Rat cB = (2 * d - half) * (2 * d - half);
    const Rat cC = (d + half) * (d + half);
    const Rat cD = (d - half) * (d - half);
    const Poly A = {cA, Rat(0), Rat(1)};
    const Poly B = {cB, Rat(0), Rat(1)};
    const Poly C = {cC, Rat(0), Rat(1)};
    const Poly D = {cD, Rat(0), Rat(1)};

    const Poly C2 = pmul(C, C), C3 = pmul(C2, C);
    const Poly D2 = pmul(D, D), D3 = pmul(D2, D);
    const Poly AB = pmul(A, B);
    const Poly ABD3 = pmul(AB, D3);
    const Poly ABC3 = pmul(AB, C3);
    const Poly t_poly = {Rat(0), Rat(1)};

    Poly P = pscale(pmul(B, pmul(C3, D3)), 2 * d + half);
    P = padd(P, pscale(pmul(A, pmul(C3, D3)), 2 * d - half));
    P = padd(P, pscale(pmul(ABD3, C2), -(2 * d + 1)));
    P = padd(P, pscale(pmul(ABC3, D2), -(2 * d - 1)));

    Poly Q = pscale(pmul(t_poly, pmul(pmul(AB, C), D3)), d * x1 * (2 * d + 1));
    Q = padd(Q, pscale(pmul(t_poly, pmul(ABC3, D)), d * x1 * (2 * d - 1)));
    const Poly q2c = pmul(t_poly, Poly{6 * cC, Rat(0), Rat(-2)});
    const Poly q2d = pmul(t_poly, Poly{6 * cD, Rat(0), Rat(-2)});
    Q = padd(Q, pscale(pmul(q2c, ABD3), d * d * x2));
    Q = padd(Q, pscale(pmul(q2d, ABC3), d * d * x2));
    const Poly q3c = {2 * (d + half) * cC, Rat(0), -6 * (d + half)};
    const Poly q3d = {2 * (d - half) * cD, Rat(0), -6 * (d - half)};
    Q = padd(Q, pscale(pmul(q3c, ABD3), -x3));
    Q = padd(Q, pscale(pmul(q3d, ABC3), -x3));

    ptrim(P);
    ptrim(Q);
    if (P.size() > 13)
        throw std::runtime_error("h' numerator: arctan part did not collapse to degree 12");
    if (Q.size() != 14)
        throw std::runtime_error("h' numerator: majorant part degree is not 13 (need a1 != a2)");

    HPrimePoly out;
    const std::size_t n = std::max(P.size(), Q.size());
    out.coef.resize(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double pk = k < P.size() ? P[k].convert_to<double>() : 0.0;
        const double qk = k < Q.size() ? Q[k].convert_to<double>() : 0.0;
        out.coef[k] = pk + (kPi / 4.0) * qk;
    }
    out.dcoef.resize(n - 1);
    for (std::size_t k = 1; k < n; ++k) out.dcoef[k - 1] = static_cast<double>(k) * out.coef[k];
    return out;
}

void check_point(KernelPoint p) {
    if (p.b < -0.5 || p.b > 0.5) throw std::domain_error("kernel point: b outside [-1/2, 1/2]");
    if (p.t == 0.0) throw std::domain_error("kernel point: t must be nonzero");
}

void check_params_basic(const Params& prm) {
    if (!(prm.d > 0.5)) throw std::domain_error("params: d must exceed 1/2");
}

} // namespace

double eval_f(KernelPoint p, const Params& prm) {
    check_point(p);
    check_params_basic(prm);
    const double d = prm.d, b = p.b, t = p.t;
    return 2.0 * std::atan((b + d) / t) + 2.0 * std::atan((d - b) / t)
           - std::atan((b + 2.0 * d) / t) - std::atan((2.0 * d - b) / t);
}

double eval_majorant(KernelPoint p, const Params& prm) {
    check_point(p);
    check_params_basic(prm);
    const double d = prm.d, b = p.b, t = p.t;
    const double cb = (d + b) * (d + b) + t * t;
    const double db = (d - b) * (d - b) + t * t;
    const double P1 = (d + b) / cb + (d - b) / db;
    const double P2 = ((d + b) * (d + b) - t * t) / (cb * cb)
                      + ((d - b) * (d - b) - t * t) / (db * db);
    const double P3 = 2.0 * (d + b) * t / (cb * cb) + 2.0 * (d - b) * t / (db * db);
    return (kPi / 4.0) * (d * prm.a1 * P1 + d * d * prm.a2 * P2 + prm.a3 * P3);
}

double eval_H(KernelPoint p, const Params& prm) {
    return eval_f(p, prm) - eval_majorant(p, prm);
}

double eval_h(double t, const Params& prm) {
    return eval_H({0.5, t}, prm);
}

double eval_h_prime(double t, const Params& prm) {
    check_params_basic(prm);
    const double d = prm.d;
    const double A = (2.0 * d + 0.5) * (2.0 * d + 0.5) + t * t;
    const double B = (2.0 * d - 0.5) * (2.0 * d - 0.5) + t * t;
    const double C = (d + 0.5) * (d + 0.5) + t * t;
    const double D = (d - 0.5) * (d - 0.5) + t * t;
    const double cC = (d + 0.5) * (d + 0.5);
    const double cD = (d - 0.5) * (d - 0.5);
    const double fp = (2.0 * d + 0.5) / A + (2.0 * d - 0.5) / B
                      - (2.0 * d + 1.0) / C - (2.0 * d - 1.0) / D;
    const double g1 = d * prm.a1 * ((2.0 * d + 1.0) * t / (C * C) + (2.0 * d - 1.0) * t / (D * D));
    const double g2 = d * d * prm.a2 * (2.0 * t * (3.0 * cC - t * t) / (C * C * C)
                                        + 2.0 * t * (3.0 * cD - t * t) / (D * D * D));
    const double g3 = prm.a3 * (2.0 * (d + 0.5) * (cC - 3.0 * t * t) / (C * C * C)
                                + 2.0 * (d - 0.5) * (cD - 3.0 * t * t) / (D * D * D));
    return fp + (kPi / 4.0) * (g1 + g2 - g3);
}

double limit_H_zero(double b, const Params& prm, int side) {
    check_params_basic(prm);
    const double d = prm.d;
    if (std::fabs(b) >= d) throw std::domain_error("limit_H_zero: |b| must stay below d");
    const double P1 = 1.0 / (d + b) + 1.0 / (d - b);
    const double P2 = 1.0 / ((d + b) * (d + b)) + 1.0 / ((d - b) * (d - b));
    const double sgn = side >= 0 ? 1.0 : -1.0;
    return sgn * kPi - (kPi / 4.0) * (d * prm.a1 * P1 + d * d * prm.a2 * P2);
}

std::vector<double> find_h_prime_roots(const Params& prm) {
    check_params_basic(prm);
    if (!(prm.a1 > prm.a2))
        throw std::domain_error("find_h_prime_roots: requires a1 > a2");
    const HPrimePoly poly = build_h_prime_poly(prm);
    const auto& c = poly.coef;

    double maxr = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        maxr = std::max(maxr, std::fabs(c[k] / c.back()));
    const double R = 1.0 + maxr;

    const int n_grid = 2000000;
    std::vector<double> roots;
    double x_prev = -R;
    double v_prev = horner(c, x_prev);
    for (int i = 1; i <= n_grid; ++i) {
        const double x = -R + 2.0 * R * static_cast<double>(i) / n_grid;
        const double v = horner(c, x);
        if (v_prev == 0.0) roots.push_back(x_prev);
        else if (v_prev * v < 0.0) {
            double lo = x_prev, hi = x, flo = v_prev;
            for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = horner(c, mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            double r = 0.5 * (lo + hi);
            for (int it = 0; it < 6; ++it) {
                const double den = horner(poly.dcoef, r);
                if (den == 0.0) break;
                const double step = horner(c, r) / den;
                r -= step;
                if (std::fabs(step) < 1e-16 * std::max(1.0, std::fabs(r))) break;
            }
            roots.push_back(r);
        }
        x_prev = x;
        v_prev = v;
    }
    std::sort(roots.begin(), roots.end());
    for (double r : roots) {
        if (std::fabs(eval_h_prime(r, prm)) > 1e-8)
            throw std::runtime_error("find_h_prime_roots: refined root fails |h'(r)| <= 1e-8");
    }
    return roots;
}

double compute_t0(const Params& prm) {
    check_params_basic(prm);
    const double d = prm.d, x1 = prm.a1, x2 = prm.a2, x3 = prm.a3;
    const double kappa = (kPi / 2.0) * d * d * (x1 - x2);
    if (kappa <= 0.0) throw std::domain_error("compute_t0: requires a1 > a2");
    const double s3max = 12.0 * d * d * d;
    const double t_floor = 2.0 * (2.0 * d + 0.5);
    double tmin = t_floor;
    for (int i = 0; i < 200; ++i) {
        const double c3 = s3max / 3.0 + kPi * x3 * d
                          + ((kPi / 2.0) * d * x1 * std::pow(d + 0.5, 3)
                             + kPi * d * d * x2 * (d + 0.5) * (d + 0.5)) / tmin
                          + (1.2 * std::pow(2.0 * d + 0.5, 5)
                             + 1.5 * kPi * x3 * std::pow(d + 0.5, 3)) / (tmin * tmin);
        const double t_new = std::max(t_floor, 2.0 * c3 / kappa);
        if (std::fabs(t_new - tmin) < 1e-9 * tmin) return t_new;
        tmin = t_new;
    }
    throw std::runtime_error("compute_t0: fixed-point iteration did not converge");
}

Lemma21Certificate verify_lemma21(const Params& prm, const VerifyOptions& opts) {
    Lemma21Certificate cert;
    cert.params = prm;
    auto fail = [&](const std::string& why) {
        cert.verdict = false;
        cert.failure = why;
        return cert;
    };

    if (!(prm.d > 0.5)) return fail("inadmissible: d <= 1/2");
    if (!(prm.a1 > 0.0 && prm.a2 > 0.0 && prm.a3 > 0.0))
        return fail("inadmissible: a1, a2, a3 must be positive");
    if (!(prm.a1 > prm.a2)) return fail("inadmissible: a1 <= a2 (tail sign)");
    if (prm.a1 + prm.a2 < 2.0 - 1e-12)
        return fail("inadmissible: a1 + a2 < 2 (t -> 0 limit positive at b = 0)");

    try {
        cert.t0 = opts.t0_override > 0.0 ? opts.t0_override : compute_t0(prm);
    } catch (const std::exception& e) {
        return fail(std::string("t0: ") + e.what());
    }

    const int nb = std::max(opts.grid_b, 3);
    double limit_max = -1e300;
    for (int i = 0; i < nb; ++i) {
        const double b = -0.5 + static_cast<double>(i) / (nb - 1);
        const double up = limit_H_zero(b, prm, +1);
        limit_max = std::max(limit_max, up);
        if (up > opts.slack)
            return fail("t -> 0+ upper limit positive at b = " + std::to_string(b));
        if (!(limit_H_zero(b, prm, -1) < 0.0))
            return fail("t -> 0- lower limit not negative at b = " + std::to_string(b));
    }
    cert.limit_margin = limit_max;

    try {
        cert.roots = find_h_prime_roots(prm);
    } catch (const std::exception& e) {
        return fail(std::string("critical points: ") + e.what());
    }

    const double delta = 1e-4;
    for (double r : cert.roots) {
        if (std::fabs(r) < 2.0 * delta) continue; // poles of h at t = 0 split the line anyway
        if (eval_h_prime(r - delta, prm) > 0.0 && eval_h_prime(r + delta, prm) < 0.0) {
            const double hv = eval_h(r, prm);
            cert.maxima.push_back({r, hv});
            if (hv > opts.slack)
                return fail("h positive at local maximum t = " + std::to_string(r));
        }
    }

    const int nt_half = std::max(opts.grid_t / 2, 8);
    double worst = -1e300;
    for (int i = 0; i < nb; ++i) {
        const double b = -0.5 + static_cast<double>(i) / (nb - 1);
        for (int j = 0; j < nt_half; ++j) {
            const double t = 1e-4 + (cert.t0 - 1e-4) * static_cast<double>(j) / (nt_half - 1);
            const double hp = eval_H({b, t}, prm);
            const double hm = eval_H({b, -t}, prm);
            worst = std::max(worst, std::max(hp, hm));
            if (worst > opts.slack) {
                cert.boundary_margin = worst;
                return fail("H positive on grid near b = " + std::to_string(b)
                            + ", t = " + std::to_string(hp > hm ? t : -t));
            }
        }
    }
    cert.boundary_margin = worst;

    for (int i = 0; i < nb; ++i) {
        const double b = -0.5 + static_cast<double>(i) / (nb - 1);
        if (eval_H({b, cert.t0}, prm) > opts.slack || eval_H({b, -cert.t0}, prm) > opts.slack)
            return fail("H positive at the t0 edge, b = " + std::to_string(b));
    }

    cert.verdict = true;
    return cert;
}

namespace {

// Inexpensive admissibility probe for the search: parameter gates, limit
// check, coarse t0, and medium-resolution sweeps of h and the rectangle.
bool probe_admissible(const Params& prm) {
    if (!(prm.d > 0.5) || !(prm.a1 > prm.a2)) return false;
    if (!(prm.a1 > 0.0 && prm.a2 > 0.0 && prm.a3 > 0.0)) return false;
    if (prm.a1 + prm.a2 < 2.0 - 1e-12) return false;
    double t0;
    try {
        t0 = compute_t0(prm);
    } catch (const std::exception&) {
        return false;
    }
    for (int i = 0; i <= 50; ++i) {
        const double b = -0.5 + static_cast<double>(i) / 50.0;
        if (limit_H_zero(b, prm, +1) > 0.0) return false;
    }
    const int nt = 4000;
    for (int j = 0; j < nt; ++j) {
        const double t = 1e-4 + (t0 - 1e-4) * static_cast<double>(j) / (nt - 1);
        if (eval_h(t, prm) > 0.0 || eval_h(-t, prm) > 0.0) return false;
    }
    for (int i = 0; i <= 40; ++i) {
        const double b = -0.5 + static_cast<double>(i) / 40.0;
        for (int j = 0; j < 400; ++j) {
            const double t = 1e-4 + (t0 - 1e-4) * static_cast<double>(j) / 399.0;
            if (eval_H({b, t}, prm) > 0.0 || eval_H({b, -t}, prm) > 0.0) return false;
        }
    }
    return true;
}

} // namespace

SearchResult search_params(const ParamBox& box) {
    if (box.d_hi < box.d_lo || box.a1_hi < box.a1_lo || box.a2_hi < box.a2_lo
        || box.a3_hi < box.a3_lo)
        throw std::invalid_argument("search_params: malformed box");

    auto clampp = [&](Params p) {
        p.d = std::clamp(p.d, box.d_lo, box.d_hi);
        p.a1 = std::clamp(p.a1, box.a1_lo, box.a1_hi);
        p.a2 = std::clamp(p.a2, box.a2_lo, box.a2_hi);
        p.a3 = std::clamp(p.a3, box.a3_lo, box.a3_hi);
        return p;
    };

    // Seed: coarse lattice, keep the admissible point with smallest d*a1
    // (ties to smaller d, then lattice order). The probe prefilters; only
    // candidates that pass the full verifier are accepted.
    bool have = false;
    Params best{};
    double best_obj = 1e300;
    Lemma21Certificate best_cert;
    const int n_seed = 4;
    for (int i = 0; i <= n_seed; ++i)
        for (int j = 0; j <= n_seed; ++j)
            for (int k = 0; k <= n_seed; ++k)
                for (int l = 0; l <= n_seed; ++l) {
                    Params p;
                    p.d = box.d_lo + (box.d_hi - box.d_lo) * i / n_seed;
                    p.a1 = box.a1_lo + (box.a1_hi - box.a1_lo) * j / n_seed;
                    p.a2 = box.a2_lo + (box.a2_hi - box.a2_lo) * k / n_seed;
                    p.a3 = box.a3_lo + (box.a3_hi - box.a3_lo) * l / n_seed;
                    const double obj = p.d * p.a1;
                    if (have && obj >= best_obj - 1e-15) continue;
                    if (!probe_admissible(p)) continue;
                    Lemma21Certificate cert = verify_lemma21(p);
                    if (!cert.verdict) continue;
                    have = true;
                    best = p;
                    best_obj = obj;
                    best_cert = std::move(cert);
                }
    if (!have) throw std::runtime_error("search_params: no admissible point in box");

    double step_d = (box.d_hi - box.d_lo) / 8.0;
    double step_a1 = (box.a1_hi - box.a1_lo) / 8.0;
    double step_a2 = (box.a2_hi - box.a2_lo) / 8.0;
    double step_a3 = (box.a3_hi - box.a3_lo) / 8.0;
    const double span = std::max({box.d_hi - box.d_lo, box.a1_hi - box.a1_lo,
                                  box.a2_hi - box.a2_lo, box.a3_hi - box.a3_lo, 1e-12});

    auto better = [](double obj, double dv, double obj0, double dv0) {
        if (obj < obj0 - 1e-15) return true;
        if (obj > obj0 + 1e-15) return false;
        return dv < dv0 - 1e-15;
    };

    while (std::max({step_d, step_a1, step_a2, step_a3}) > 1e-4 * span) {
        bool moved = false;
        const Params base = best;
        const Params cands[8] = {
            clampp({base.d - step_d, base.a1, base.a2, base.a3}),
            clampp({base.d + step_d, base.a1, base.a2, base.a3}),
            clampp({base.d, base.a1 - step_a1, base.a2, base.a3}),
            clampp({base.d, base.a1 + step_a1, base.a2, base.a3}),
            clampp({base.d, base.a1, base.a2 - step_a2, base.a3}),
            clampp({base.d, base.a1, base.a2 + step_a2, base.a3}),
            clampp({base.d, base.a1, base.a2, base.a3 - step_a3}),
            clampp({base.d, base.a1, base.a2, base.a3 + step_a3}),
        };
        for (const Params& cand : cands) {
            const double obj = cand.d * cand.a1;
            if (!better(obj, cand.d, best_obj, best.d)) continue;
            if (!probe_admissible(cand)) continue;
            Lemma21Certificate cert = verify_lemma21(cand);
            if (!cert.verdict) continue;
            best = cand;
            best_obj = obj;
            best_cert = std::move(cert);
            moved = true;
        }
        if (!moved) {
            step_d *= 0.5;
            step_a1 *= 0.5;
            step_a2 *= 0.5;
            step_a3 *= 0.5;
        }
    }

    SearchResult out;
    out.best = best;
    out.objective = best.d * best.a1;
    out.certificate = std::move(best_cert);
    return out;
}

} // namespace zc
