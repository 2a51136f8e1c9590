#include "zerocount/primes.hpp"

#include "zerocount/rounding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace zc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_alpha(double alpha) {
    if (!(alpha >= 2.0)) throw std::domain_error("phase point: alpha must be >= 2");
}

} // namespace

double f1_part(PhasePoint p, const Params& prm) {
    check_alpha(p.alpha);
    const double s1 = 0.5 + prm.d, s2 = 0.5 + 2.0 * prm.d;
    const double A1 = std::atan(std::sin(p.phi) / (std::pow(p.alpha, s1) - std::cos(p.phi)));
    const double A2 = std::atan(std::sin(p.phi) / (std::pow(p.alpha, s2) - std::cos(p.phi)));
    const double la = std::log(p.alpha);
    const double As = std::pow(p.alpha, s1);
    const double den = 1.0 - 2.0 * As * std::cos(p.phi) + As * As;
    return (4.0 / kPi) * A1 - (2.0 / kPi) * A2
           + (prm.d * prm.a1 / 2.0) * la * (1.0 - As * std::cos(p.phi)) / den;
}

double f2_part(PhasePoint p, const Params& prm) {
    check_alpha(p.alpha);
    const double s1 = 0.5 + prm.d;
    const double la = std::log(p.alpha);
    const double As = std::pow(p.alpha, s1);
    const double den = 1.0 - 2.0 * As * std::cos(p.phi) + As * As;
    const double t_a2 = (prm.d * prm.d * prm.a2 / 2.0) * la * la * As
                        * ((1.0 + As * As) * std::cos(p.phi) - 2.0 * As) / (den * den);
    const double t_a3 = (prm.a3 / 2.0) * la * la * As * (1.0 - As * As) * std::sin(p.phi)
                        / (den * den);
    return t_a2 + t_a3;
}

double q1(PhasePoint p, const Params& prm) { return f1_part(p, prm) + f2_part(p, prm); }

double q2(PhasePoint p, const Params& prm) {
    check_alpha(p.alpha);
    const double s1 = 0.5 + prm.d, s2 = 0.5 + 2.0 * prm.d;
    const double A1 = std::atan(std::sin(p.phi) / (std::pow(p.alpha, s1) - std::cos(p.phi)));
    const double A2 = std::atan(std::sin(p.phi) / (std::pow(p.alpha, s2) - std::cos(p.phi)));
    const double la = std::log(p.alpha);
    const double As = std::pow(p.alpha, s1);
    const double den = 1.0 - 2.0 * As * std::cos(p.phi) + As * As;
    const double t1 = (prm.d * prm.a1 / 2.0) * la * (1.0 - As * std::cos(p.phi)) / den;
    const double t2 = (prm.d * prm.d * prm.a2 / 2.0) * la * la * As
                      * ((1.0 + As * As) * std::cos(p.phi) - 2.0 * As) / (den * den);
    const double t3 = (prm.a3 / 2.0) * la * la * As * (1.0 - As * As) * std::sin(p.phi)
                      / (den * den);
    return (4.0 / kPi) * A1 - (2.0 / kPi) * A2 - t1 - t2 + t3;
}

PhaseMax max_over_phase(double alpha, const Params& prm, int which) {
    check_alpha(alpha);
    auto fn = [&](double phi) {
        const PhasePoint p{alpha, phi};
        return which == 0 ? q1(p, prm) : f2_part(p, prm);
    };
    const int n_seed = 512;
    int best = 0;
    double best_val = -1e300;
    for (int i = 0; i < n_seed; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / n_seed;
        const double v = fn(phi);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = 2.0 * kPi * static_cast<double>(best - 1) / n_seed;
    double hi = 2.0 * kPi * static_cast<double>(best + 1) / n_seed;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double fx1 = fn(x1), fx2 = fn(x2);
    for (int it = 0; it < 300 && hi - lo >= 1e-10; ++it) {
        if (fx1 < fx2) {
            lo = x1;
            x1 = x2;
            fx1 = fx2;
            x2 = lo + gr * (hi - lo);
            fx2 = fn(x2);
        } else {
            hi = x2;
            x2 = x1;
            fx2 = fx1;
            x1 = hi - gr * (hi - lo);
            fx1 = fn(x1);
        }
    }
    const double xm = 0.5 * (lo + hi);
    const double phi = xm < 0.0 ? xm + 2.0 * kPi : xm;
    return {phi, fn(xm)};
}

double c_constant(const Params& prm) {
    return std::hypot(prm.d * prm.d * prm.a2 / 2.0, prm.a3 / 2.0);
}

double c_constant_oracle(const Params& prm, int n_grid) {
    const double A = prm.d * prm.d * prm.a2 / 2.0, B = prm.a3 / 2.0;
    double best = -1e300;
    for (int i = 0; i < n_grid; ++i) {
        const double th = 2.0 * kPi * static_cast<double>(i) / n_grid;
        best = std::max(best, A * std::cos(th) + B * std::sin(th));
    }
    return best;
}

std::vector<int> sieve_primes(int n) {
    if (n < 2) return {};
    std::vector<char> is(n + 1, 1);
    is[0] = is[1] = 0;
    for (int i = 2; static_cast<long long>(i) * i <= n; ++i)
        if (is[i])
            for (long long j = static_cast<long long>(i) * i; j <= n; j += i) is[j] = 0;
    std::vector<int> out;
    for (int i = 2; i <= n; ++i)
        if (is[i]) out.push_back(i);
    return out;
}

namespace {

// Tail comparison function: the m = 2 prime-power bound that the crossover
// inequalities splice to the single-prime phase maxima.
double power_tail_bound(double alpha, const Params& prm) {
    const double c = c_constant(prm);
    const double la = std::log(alpha);
    const double a2s = std::pow(alpha, 1.0 + 2.0 * prm.d);
    return 2.0 * c * la * la * a2s / ((1.0 - a2s) * (1.0 - a2s));
}

double m_term_bound(double alpha, int m, const Params& prm) {
    const double c = c_constant(prm);
    const double la = std::log(alpha);
    const double ap = std::pow(alpha, m * (0.5 + prm.d));
    return m * c * la * la * ap / ((1.0 - ap) * (1.0 - ap));
}

} // namespace

ReductionReport verify_prime_power_reduction(const std::vector<double>& alpha_grid,
                                             int m_max, const Params& prm) {
    if (alpha_grid.empty()) throw std::invalid_argument("reduction: empty alpha grid");
    if (m_max < 2) throw std::invalid_argument("reduction: m_max must be >= 2");
    ReductionReport rep;
    double worst = 1e300;

    rep.envelope_ok = true;
    for (double a : alpha_grid) {
        if (a < 4.0) continue;
        const double mq = max_over_phase(a, prm, 0).value;
        const double mf = max_over_phase(a, prm, 1).value;
        worst = std::min(worst, mf - mq);
        if (mq > mf) rep.envelope_ok = false;
    }

    rep.m_monotone_ok = true;
    for (double a : alpha_grid) {
        double prev = m_term_bound(a, 2, prm);
        for (int m = 3; m <= m_max; ++m) {
            const double cur = m_term_bound(a, m, prm);
            worst = std::min(worst, prev - cur);
            if (cur > prev) rep.m_monotone_ok = false;
            prev = cur;
        }
    }

    rep.crossover_low_ok = true;
    for (int i = 0; i <= 4000; ++i) {
        const double a = 2.0 + 4.0 * static_cast<double>(i) / 4000.0;
        const double slack = q1({a, kPi / 2.0}, prm) - power_tail_bound(a, prm);
        worst = std::min(worst, slack);
        if (slack < 0.0) rep.crossover_low_ok = false;
    }

    rep.crossover_high_ok = true;
    for (int i = 0; i <= 4000; ++i) {
        const double a = 7.0 + 993.0 * static_cast<double>(i) / 4000.0;
        const double slack = q1({a, 0.0}, prm) - power_tail_bound(a, prm);
        worst = std::min(worst, slack);
        if (slack < 0.0) rep.crossover_high_ok = false;
    }
    for (double a = 1000.0; a <= 1e6; a *= 1.05) {
        const double slack = q1({a, 0.0}, prm) - power_tail_bound(a, prm);
        worst = std::min(worst, slack);
        if (slack < 0.0) rep.crossover_high_ok = false;
    }

    rep.full_ok = true;
    for (double a : alpha_grid) {
        const double ma = max_over_phase(a, prm, 0).value;
        for (int m = 2; m <= m_max; ++m) {
            const double am = std::pow(a, m);
            if (am > 1e9) break;
            const double mm = max_over_phase(am, prm, 0).value;
            const double slack = ma - mm / m;
            worst = std::min(worst, slack);
            if (slack < 0.0) rep.full_ok = false;
        }
    }

    rep.worst_slack = worst;
    rep.pass = rep.envelope_ok && rep.m_monotone_ok && rep.crossover_low_ok
               && rep.crossover_high_ok && rep.full_ok;
    return rep;
}

double head_sum(int cutoff, const Params& prm, int jobs) {
    const std::vector<int> primes = sieve_primes(cutoff);
    if (primes.empty()) return 0.0;
    const int n_jobs = std::max(1, std::min<int>(jobs, static_cast<int>(primes.size())));
    std::vector<double> partial(n_jobs, 0.0);
    auto work = [&](int w) {
        for (std::size_t i = w; i < primes.size(); i += n_jobs)
            partial[w] += max_over_phase(primes[i], prm, 0).value;
    };
    if (n_jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_jobs; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    double head = 0.0;
    for (double x : partial) head += x;
    return head;
}

namespace {

// Value with first and second derivatives with respect to s at a real point.
struct Jet2 {
    double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet2 operator*(Jet2 a, Jet2 b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Jet2 jet_inv(Jet2 a) {
    const double iv = 1.0 / a.v;
    return {iv, -a.d1 * iv * iv, (2.0 * a.d1 * a.d1 - a.v * a.d2) * iv * iv * iv};
}
Jet2 jet_npow(double n, double sigma) { // n^{-s}
    const double ln = std::log(n);
    const double v = std::exp(-sigma * ln);
    return {v, -ln * v, ln * ln * v};
}

// B_{2k}/(2k)! for k = 1..12
constexpr std::array<double, 12> kBernFact = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1124000727777607680000.0,
    -236364091.0 / 2730.0 / 620448401733239439360000.0,
};

// Euler-Maclaurin jet of zeta at real s = sigma > 1.
Jet2 zeta_jet(double sigma) {
    constexpr int N = 64;
    Jet2 z{};
    for (int n = 1; n < N; ++n) z = z + jet_npow(n, sigma);
    const Jet2 s{sigma, 1.0, 0.0};
    const Jet2 NmS = jet_npow(N, sigma);
    z = z + Jet2{static_cast<double>(N), 0.0, 0.0} * NmS * jet_inv(s - Jet2{1.0, 0.0, 0.0});
    z = z + Jet2{0.5, 0.0, 0.0} * NmS;
    for (std::size_t k = 1; k <= kBernFact.size(); ++k) {
        Jet2 poch{1.0, 0.0, 0.0};
        for (std::size_t j = 0; j + 2 <= 2 * k; ++j)
            poch = poch * Jet2{sigma + static_cast<double>(j), 1.0, 0.0};
        const double scale = std::pow(static_cast<double>(N), 1.0 - 2.0 * static_cast<double>(k));
        z = z + Jet2{kBernFact[k - 1] * scale, 0.0, 0.0} * poch * NmS;
    }
    return z;
}

// Direct von Mangoldt sum of Lambda(n) log(n) n^{-sigma} for n <= N.
double direct_lambda_sum(double sigma, int N) {
    const std::vector<int> primes = sieve_primes(N);
    double acc = 0.0;
    for (int p : primes) {
        const double lp = std::log(p);
        double npw = std::pow(p, -sigma);
        const double step = npw;
        double k = 1.0;
        double nk = static_cast<double>(p);
        while (nk <= N) {
            acc += lp * (k * lp) * npw;
            k += 1.0;
            nk *= p;
            npw *= step;
        }
    }
    return acc;
}

double direct_tail_bound(double sigma, double N) {
    const double s1 = sigma - 1.0;
    const double ln = std::log(N);
    return std::pow(N, -s1) / s1 * (ln * ln + 2.0 * ln / s1 + 2.0 / (s1 * s1));
}

} // namespace

double zeta_log_derivative2(double sigma, double tolerance) {
    if (!(sigma > 1.0)) throw std::domain_error("zeta_log_derivative2: sigma must exceed 1");
    if (!(tolerance > 0.0)) throw std::domain_error("zeta_log_derivative2: tolerance must be positive");
    const Jet2 z = zeta_jet(sigma);
    const double em = (z.d2 * z.v - z.d1 * z.d1) / (z.v * z.v);

    // Independent summation route, run whenever its rigorous tail bound can
    // reach the tolerance within the term budget.
    constexpr int kBudget = 1 << 23;
    if (direct_tail_bound(sigma, kBudget) <= tolerance) {
        int N = 1 << 12;
        while (direct_tail_bound(sigma, N) > tolerance && N < kBudget) N *= 2;
        const double direct = direct_lambda_sum(sigma, N);
        const double tail = direct_tail_bound(sigma, N);
        if (std::fabs(direct + 0.5 * tail - em) > tolerance + 0.5 * tail)
            throw std::runtime_error(
                "zeta_log_derivative2: summation routes disagree beyond tolerance");
    }
    return em;
}

double tail_bound(int cutoff, const Params& prm) {
    const double s1 = 0.5 + prm.d;
    const double c3 = round_up_dec(c_constant(prm), 3);
    const double D = zeta_log_derivative2(s1, 1e-9);
    double tower = 0.0;
    for (int p : sieve_primes(cutoff)) {
        const double lp = std::log(p);
        const double ps = std::pow(p, s1);
        tower += lp * lp * ps / ((1.0 - ps) * (1.0 - ps));
    }
    const double tail = c3 * (D - tower);
    if (tail < 0.0) throw std::runtime_error("tail_bound: cutoff tower exceeds the full sum");
    return tail;
}

PrimeSumReport prime_sum_report(int cutoff, const Params& prm, int jobs) {
    PrimeSumReport rep;
    rep.cutoff = cutoff;
    rep.primes = sieve_primes(cutoff);
    rep.head_terms.reserve(rep.primes.size());
    for (int p : rep.primes) rep.head_terms.push_back(max_over_phase(p, prm, 0));
    rep.head = head_sum(cutoff, prm, jobs);
    rep.tail = tail_bound(cutoff, prm);
    rep.total_per_degree = rep.head + rep.tail;
    return rep;
}

EnvelopeTerm e_zeta_K(double T, const FieldSignature& sig, const Params& prm, int cutoff) {
    if (!(T > 0.0)) throw std::domain_error("e_zeta_K: T must be positive");
    if (sig.n_k != sig.r1 + 2 * sig.r2)
        throw std::domain_error("e_zeta_K: n_k must equal r1 + 2 r2");
    const double per_degree = head_sum(cutoff, prm) + tail_bound(cutoff, prm);
    return {sig.n_k * per_degree, -sig.n_k * per_degree};
}

} // namespace zc
