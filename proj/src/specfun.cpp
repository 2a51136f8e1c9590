#include "zerocount/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace zc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

double abs3(ComplexPoint s) {
    return std::pow(s.sigma * s.sigma + s.t * s.t, 1.5);
}

} // namespace

SpecFunResult im_log_gamma(ComplexPoint s) {
    if (s.sigma <= 0.0) throw std::domain_error("im_log_gamma: sigma must be positive");
    const double sigma = s.sigma, t = s.t;
    const double q = sigma * sigma + t * t;
    SpecFunResult r;
    r.value = 0.5 * t * std::log(q) + (sigma - 0.5) * std::atan(t / sigma) - t
              - t / (12.0 * q);
    r.remainder_radius = 1.0 / (360.0 * abs3(s)) + 1.0 / (1022.0 * sigma * abs3(s));
    return r;
}

SpecFunResult re_digamma(ComplexPoint s) {
    if (s.sigma <= 0.0) throw std::domain_error("re_digamma: sigma must be positive");
    const double sigma = s.sigma, t = s.t;
    const double q = sigma * sigma + t * t;
    SpecFunResult r;
    r.value = 0.5 * std::log(q) - sigma / (2.0 * q)
              - (sigma * sigma - t * t) / (12.0 * q * q);
    r.remainder_radius = 1.0 / (120.0 * sigma * abs3(s));
    return r;
}

TrigammaResult trigamma(ComplexPoint s) {
    if (s.sigma <= 0.0) throw std::domain_error("trigamma: sigma must be positive");
    const double sigma = s.sigma, t = s.t;
    const double q = sigma * sigma + t * t;
    const double radius = 1.0 / (6.0 * abs3(s)) + 1.0 / (23.0 * sigma * abs3(s));
    TrigammaResult r;
    r.re.value = sigma / q + (sigma * sigma - t * t) / (2.0 * q * q);
    r.re.remainder_radius = radius;
    r.im.value = -t / q - sigma * t / (q * q);
    r.im.remainder_radius = radius;
    return r;
}

namespace {

using Cplx = std::complex<double>;

// Stirling series tail of log Gamma, valid for large |z| with Re z > 0.
Cplx stirling_log_gamma(Cplx z) {
    Cplx sum = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    const Cplx z2 = z * z;
    Cplx zp = z;
    for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
        sum += kBernoulli[j - 1] / (2.0 * j * (2.0 * j - 1.0) * zp);
        zp *= z2;
    }
    return sum;
}

Cplx stirling_digamma(Cplx z) {
    Cplx sum = std::log(z) - 0.5 / z;
    const Cplx z2 = z * z;
    Cplx zp = z2;
    for (std::size_t j = 1; j <= 12; ++j) {
        sum -= kBernoulli[j - 1] / (2.0 * j * zp);
        zp *= z2;
    }
    return sum;
}

Cplx stirling_trigamma(Cplx z) {
    Cplx sum = 1.0 / z + 0.5 / (z * z);
    const Cplx z2 = z * z;
    Cplx zp = z2 * z;
    for (std::size_t j = 1; j <= 12; ++j) {
        sum += kBernoulli[j - 1] / zp;
        zp *= z2;
    }
    return sum;
}

} // namespace

std::complex<double> reference_log_gamma(std::complex<double> s, double precision_target) {
    if (s.real() <= 0.0) throw std::domain_error("reference_log_gamma: Re(s) must be positive");
    precision_target = std::clamp(precision_target, 1e-15, 1e-6);
    (void)precision_target; // the fixed shift radius already lands at double precision
    Cplx shift = 0.0;
    while (std::abs(s) < 20.0) {
        shift += std::log(s);
        s += 1.0;
    }
    return stirling_log_gamma(s) - shift;
}

std::complex<double> reference_digamma(std::complex<double> s) {
    if (s.real() <= 0.0) throw std::domain_error("reference_digamma: Re(s) must be positive");
    Cplx shift = 0.0;
    while (std::abs(s) < 20.0) {
        shift += 1.0 / s;
        s += 1.0;
    }
    return stirling_digamma(s) - shift;
}

std::complex<double> reference_trigamma(std::complex<double> s) {
    if (s.real() <= 0.0) throw std::domain_error("reference_trigamma: Re(s) must be positive");
    Cplx shift = 0.0;
    while (std::abs(s) < 20.0) {
        shift += 1.0 / (s * s);
        s += 1.0;
    }
    return stirling_trigamma(s) + shift;
}

std::complex<double> reference_log_gamma_alt(std::complex<double> s) {
    if (s.real() <= 0.0) throw std::domain_error("reference_log_gamma_alt: Re(s) must be positive");
    static const std::array<double, 9> coef = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    Cplx shift = 0.0;
    while (s.real() < 0.5) {
        shift += std::log(s);
        s += 1.0;
    }
    Cplx x = coef[0];
    for (std::size_t i = 1; i < coef.size(); ++i) x += coef[i] / (s - 1.0 + static_cast<double>(i));
    const Cplx t = s + 6.5;
    return 0.5 * std::log(2.0 * kPi) + (s - 0.5) * std::log(t) - t + std::log(x) - shift;
}

namespace {

// Series coefficients of g(u) = 1/2 - 1/u + 1/(e^u - 1) = sum B_{2k} u^{2k-1}/(2k)!.
// f = g/u, h = u g. Fourteen terms cover u <= 0.9 far below double noise.
struct BinetSeries {
    std::array<double, 14> c{}; // c[k-1] = B_{2k}/(2k)!
    BinetSeries() {
        double fact = 2.0; // (2k)!
        for (std::size_t k = 1; k <= c.size(); ++k) {
            c[k - 1] = kBernoulli[k - 1] / fact;
            fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        }
    }
};

const BinetSeries kBinet;

double series_value_f(double u) {
    double s = 0.0;
    for (std::size_t k = kBinet.c.size(); k >= 1; --k)
        s = s * u * u + kBinet.c[k - 1];
    return s; // sum c_k u^{2k-2}
}

// Third derivative of sum c_k u^{e_k} with e_k = 2k-2 + off (off = 0 for f,
// 1 for g, 2 for h), evaluated termwise.
double series_third(double u, int off) {
    double s = 0.0;
    for (std::size_t k = 1; k <= kBinet.c.size(); ++k) {
        const int e = static_cast<int>(2 * k) - 2 + off;
        if (e < 3) continue;
        s += kBinet.c[k - 1] * e * (e - 1) * (e - 2) * std::pow(u, e - 3);
    }
    return s;
}

double closed_f(double u) { return (0.5 - 1.0 / u + 1.0 / std::expm1(u)) / u; }

double closed_kernel(double u, int off) {
    const double f = closed_f(u);
    if (off == 0) return f;
    if (off == 1) return u * f;
    return u * u * f;
}

double fd_third(double u, int off) {
    const double h = 1e-2;
    const double num = closed_kernel(u - 3 * h, off) - 8.0 * closed_kernel(u - 2 * h, off)
                       + 13.0 * closed_kernel(u - h, off) - 13.0 * closed_kernel(u + h, off)
                       + 8.0 * closed_kernel(u + 2 * h, off) - closed_kernel(u + 3 * h, off);
    return num / (8.0 * h * h * h);
}

// Exact third derivatives. With E(u) = 1/(e^u - 1) written through x = e^-u
// (so no overflow at large u):
//   E   =  x/(1-x)          E'  = -x/(1-x)^2
//   E'' =  x(1+x)/(1-x)^3   E''' = -x(1+4x+x^2)/(1-x)^4
// and g = 1/2 - 1/u + E, h = u/2 - 1 + uE, f = g/u (Leibniz for f''').
double closed_third(double u, int off) {
    const double x = std::exp(-u);
    const double m = 1.0 - x;
    const double E0 = x / m;
    const double E1 = -x / (m * m);
    const double E2 = x * (1.0 + x) / (m * m * m);
    const double E3 = -x * (1.0 + x * (4.0 + x)) / (m * m * m * m);
    const double iu = 1.0 / u;
    if (off == 1) return 6.0 * iu * iu * iu * iu + E3;
    if (off == 2) return u * E3 + 3.0 * E2;
    const double g0 = 0.5 - iu + E0;
    const double g1 = iu * iu + E1;
    const double g2 = -2.0 * iu * iu * iu + E2;
    const double g3 = 6.0 * iu * iu * iu * iu + E3;
    return iu * (g3 - 3.0 * iu * (g2 - 2.0 * iu * (g1 - iu * g0)));
}

double third_derivative(double u, int off) {
    if (u <= 0.9) return series_third(u, off);
    return closed_third(u, off);
}

} // namespace

KernelCheckReport binet_kernel_checks() {
    KernelCheckReport rep;
    rep.f_third_bound = 1.0 / 1022.0;
    rep.g_third_bound = 1.0 / 120.0;
    rep.h_third_bound = 1.0 / 23.0;
    rep.f_limit0 = series_value_f(1e-8);

    const double slack = 1e-9;
    rep.pass = true;
    if (std::fabs(rep.f_limit0 - 1.0 / 12.0) > 1e-12) {
        rep.pass = false;
        rep.failure = "f(0+) != 1/12";
    }

    // Geometric sweep of (0, 50]; the series route covers u -> 0 including the
    // u = 0 endpoint values of the derivatives.
    double u = 1e-4;
    double fs = std::fabs(series_third(0.0, 0));
    double gs = std::fabs(series_third(0.0, 1));
    double hs = std::fabs(series_third(0.0, 2));
    while (u <= 50.0) {
        fs = std::max(fs, std::fabs(third_derivative(u, 0)));
        gs = std::max(gs, std::fabs(third_derivative(u, 1)));
        hs = std::max(hs, std::fabs(third_derivative(u, 2)));
        u *= 1.001;
    }
    rep.f_third_sup = fs;
    rep.g_third_sup = gs;
    rep.h_third_sup = hs;

    if (fs > rep.f_third_bound + slack) { rep.pass = false; rep.failure = "f''' exceeds 1/1022"; }
    if (gs > rep.g_third_bound + slack) { rep.pass = false; rep.failure = "g''' exceeds 1/120"; }
    if (hs > rep.h_third_bound + slack) { rep.pass = false; rep.failure = "h''' exceeds 1/23"; }

    for (int off = 0; off <= 2; ++off) {
        rep.seam_gap = std::max(rep.seam_gap,
                                std::fabs(series_third(0.9, off) - closed_third(0.9, off)));
        for (double v : {2.0, 5.0, 10.0})
            rep.fd_gap = std::max(rep.fd_gap,
                                  std::fabs(fd_third(v, off) - closed_third(v, off)));
    }
    if (rep.seam_gap > 1e-12) { rep.pass = false; rep.failure = "series/closed-form handover gap"; }
    if (rep.fd_gap > 1e-8) { rep.pass = false; rep.failure = "closed form disagrees with finite differences"; }

    rep.tail_monotone = true;
    for (int off = 0; off <= 2 && rep.tail_monotone; ++off) {
        double prev = std::fabs(closed_third(50.0, off));
        for (double v : {55.0, 60.0, 70.0, 90.0}) {
            const double cur = std::fabs(closed_third(v, off));
            if (cur > prev + 1e-15) { rep.tail_monotone = false; break; }
            prev = cur;
        }
    }
    if (!rep.tail_monotone) { rep.pass = false; rep.failure = "kernel derivatives not decaying beyond u = 50"; }
    return rep;
}

} // namespace zc
