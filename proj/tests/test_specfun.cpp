#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zerocount/specfun.hpp"

#include <cmath>
#include <complex>

using zc::ComplexPoint;
using Cplx = std::complex<double>;

namespace {

// High-precision oracle values, frozen from an independent arbitrary-precision
// evaluation (mpmath 1.3.0 at 50 digits, rounded to double).
constexpr double kLogGamma1i_re = -0.65092319930185634;
constexpr double kLogGamma1i_im = -0.3016403204675332;
constexpr double kDigamma_re = -0.76424914662361652;  // at 0.611 + 0.5i
constexpr double kDigamma_im = 1.2067135331555349;
constexpr double kTrigamma_re = 0.16787911095488002;  // at 1.222 + 2i
constexpr double kTrigamma_im = -0.44650850612184281;
constexpr double kTrigamma1i_im = -0.79423354275931887;

constexpr double kOracleTol = 5e-14;

double grid_t(int i) { return 0.5 * std::pow(200.0, i / 199.0); }

} // namespace

TEST_CASE("references match frozen high-precision oracles") {
    const Cplx lg = zc::reference_log_gamma({1.0, 1.0});
    CHECK(std::fabs(lg.real() - kLogGamma1i_re) <= kOracleTol);
    CHECK(std::fabs(lg.imag() - kLogGamma1i_im) <= kOracleTol);

    const Cplx dg = zc::reference_digamma({0.611, 0.5});
    CHECK(std::fabs(dg.real() - kDigamma_re) <= kOracleTol);
    CHECK(std::fabs(dg.imag() - kDigamma_im) <= kOracleTol);

    const Cplx tg = zc::reference_trigamma({1.222, 2.0});
    CHECK(std::fabs(tg.real() - kTrigamma_re) <= kOracleTol);
    CHECK(std::fabs(tg.imag() - kTrigamma_im) <= kOracleTol);

    CHECK(std::fabs(zc::reference_trigamma({1.0, 1.0}).imag() - kTrigamma1i_im) <= kOracleTol);
}

TEST_CASE("two structurally different log-gamma references agree") {
    const Cplx points[] = {{1.0, 1.0}, {0.611, 0.5}, {1.222, 2.0},
                           {3.0, 10.0}, {0.6, 30.0}, {20.0, 0.5}};
    for (const Cplx& s : points) {
        const Cplx a = zc::reference_log_gamma(s);
        const Cplx b = zc::reference_log_gamma_alt(s);
        CAPTURE(s.real());
        CAPTURE(s.imag());
        CHECK(std::abs(a - b) <= 1e-10);
    }
}

TEST_CASE("trigamma imaginary closed form at 1 + i") {
    // -t/q - sigma t/q^2 with q = sigma^2 + t^2 = 2 gives exactly -3/4; the
    // true value is about -0.7942, and the gap must sit inside the radius.
    const zc::TrigammaResult r = zc::trigamma({1.0, 1.0});
    CHECK(r.im.value == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(std::fabs(r.im.value - kTrigamma1i_im) <= r.im.remainder_radius);
    CHECK(r.im.value < 0.0);
}

TEST_CASE("certified remainder radii enclose the references on the working grid") {
    const double sigmas[] = {0.611, 0.972, 1.222, 1.944};
    int violations = 0;
    double worst_ratio = 0.0;
    for (double sigma : sigmas) {
        for (int i = 0; i < 200; ++i) {
            const double t = grid_t(i);
            const ComplexPoint p{sigma, t};
            const Cplx s(sigma, t);
            const zc::SpecFunResult il = zc::im_log_gamma(p);
            const zc::SpecFunResult rd = zc::re_digamma(p);
            const zc::TrigammaResult tr = zc::trigamma(p);
            const double errs[4] = {
                std::fabs(il.value - zc::reference_log_gamma(s).imag()),
                std::fabs(rd.value - zc::reference_digamma(s).real()),
                std::fabs(tr.re.value - zc::reference_trigamma(s).real()),
                std::fabs(tr.im.value - zc::reference_trigamma(s).imag()),
            };
            const double radii[4] = {il.remainder_radius, rd.remainder_radius,
                                     tr.re.remainder_radius, tr.im.remainder_radius};
            for (int k = 0; k < 4; ++k) {
                if (errs[k] > radii[k]) ++violations;
                worst_ratio = std::max(worst_ratio, errs[k] / radii[k]);
            }
        }
    }
    CHECK(violations == 0);
    CHECK(worst_ratio <= 0.95);
    CHECK(worst_ratio > 0.0);
}

TEST_CASE("parity in t") {
    const double sigmas[] = {0.611, 1.222};
    const double ts[] = {0.5, 3.0, 40.0};
    for (double sigma : sigmas) {
        for (double t : ts) {
            const double scale_il = 1.0 + std::fabs(zc::im_log_gamma({sigma, t}).value);
            CHECK(std::fabs(zc::im_log_gamma({sigma, -t}).value
                            + zc::im_log_gamma({sigma, t}).value) <= 1e-15 * scale_il);
            CHECK(zc::re_digamma({sigma, -t}).value
                  == doctest::Approx(zc::re_digamma({sigma, t}).value).epsilon(1e-15));
            const zc::TrigammaResult plus = zc::trigamma({sigma, t});
            const zc::TrigammaResult minus = zc::trigamma({sigma, -t});
            CHECK(minus.re.value == doctest::Approx(plus.re.value).epsilon(1e-15));
            CHECK(minus.im.value == doctest::Approx(-plus.im.value).epsilon(1e-15));
        }
    }
}

TEST_CASE("remainder radii shrink as |s| grows") {
    const double ts[] = {1.0, 2.0, 5.0, 10.0, 50.0, 200.0};
    double prev_il = 1e300, prev_rd = 1e300, prev_tg = 1e300;
    for (double t : ts) {
        const double ril = zc::im_log_gamma({1.222, t}).remainder_radius;
        const double rrd = zc::re_digamma({1.222, t}).remainder_radius;
        const double rtg = zc::trigamma({1.222, t}).re.remainder_radius;
        CHECK(ril < prev_il);
        CHECK(rrd < prev_rd);
        CHECK(rtg < prev_tg);
        CHECK(ril > 0.0);
        prev_il = ril;
        prev_rd = rrd;
        prev_tg = rtg;
    }
    CHECK(zc::trigamma({1.222, 2.0}).im.remainder_radius
          == zc::trigamma({1.222, 2.0}).re.remainder_radius);
}

TEST_CASE("integrand kernel checks behind the remainder constants") {
    const zc::KernelCheckReport rep = zc::binet_kernel_checks();
    CHECK(rep.pass);
    CHECK(rep.failure.empty());
    CHECK(rep.f_limit0 == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(rep.f_third_sup <= rep.f_third_bound + 1e-9);
    CHECK(rep.f_third_sup > 0.000977);
    CHECK(rep.f_third_sup < 0.000979);
    CHECK(rep.g_third_sup == doctest::Approx(1.0 / 120.0).epsilon(1e-14));
    CHECK(rep.h_third_sup <= rep.h_third_bound + 1e-9);
    CHECK(rep.h_third_sup > 0.0423);
    CHECK(rep.h_third_sup < 0.0424);
    CHECK(rep.seam_gap <= 1e-12);
    CHECK(rep.fd_gap <= 1e-8);
    CHECK(rep.fd_gap > 0.0);
    CHECK(rep.tail_monotone);
}

TEST_CASE("domain gates") {
    CHECK_THROWS_AS((void)zc::im_log_gamma({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::re_digamma({-0.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::trigamma({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::reference_log_gamma({-1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::reference_digamma({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::reference_trigamma({-2.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS((void)zc::reference_log_gamma_alt({0.0, 0.5}), std::domain_error);
}
