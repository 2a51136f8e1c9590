#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zerocount/kernel.hpp"

#include <cmath>
#include <stdexcept>

using zc::KernelPoint;
using zc::Params;

namespace {

// Frozen outputs of the default-parameter certificate run.
constexpr double kT0 = 42.881257999060857;
constexpr double kBoundaryMargin = -5.3958425434868582e-05;
constexpr double kRoots[7] = {-0.79117940460768421, -0.34596132112221739,
                              0.052030792806419646, 0.9091100937248654,
                              1.3351212354812891,   2.7499485136128317,
                              5.8634588327860424};
constexpr double kMaxima[3] = {-0.00019159958187819903, -0.00022457555393629036,
                               -0.00015246734642927751};

} // namespace

TEST_CASE("edge function value") {
    CHECK(zc::eval_f({0.0, 1.0}, Params{}) == doctest::Approx(0.57114065437299788).epsilon(1e-14));
}

TEST_CASE("symmetry of f, majorant, and H") {
    const Params prm;
    const double bs[] = {0.1, 0.3, 0.5};
    const double ts[] = {0.4, 1.7, 12.0};
    for (double b : bs) {
        for (double t : ts) {
            CHECK(zc::eval_f({-b, t}, prm) == doctest::Approx(zc::eval_f({b, t}, prm)).epsilon(1e-15));
            CHECK(zc::eval_majorant({-b, t}, prm)
                  == doctest::Approx(zc::eval_majorant({b, t}, prm)).epsilon(1e-15));
            CHECK(zc::eval_f({b, -t}, prm) == doctest::Approx(-zc::eval_f({b, t}, prm)).epsilon(1e-15));
            CHECK(zc::eval_H({-b, t}, prm) == doctest::Approx(zc::eval_H({b, t}, prm)).epsilon(1e-14));
        }
    }
}

TEST_CASE("H equals f minus the majorant") {
    const Params prm;
    const KernelPoint p{0.25, 3.1};
    CHECK(zc::eval_H(p, prm)
          == doctest::Approx(zc::eval_f(p, prm) - zc::eval_majorant(p, prm)).epsilon(1e-15));
}

TEST_CASE("edge curve critical points are frozen") {
    const Params prm;
    const std::vector<double> roots = zc::find_h_prime_roots(prm);
    REQUIRE(roots.size() == 7);
    for (int i = 0; i < 7; ++i) {
        CHECK(roots[i] == doctest::Approx(kRoots[i]).epsilon(1e-12));
        CHECK(std::fabs(zc::eval_h_prime(roots[i], prm)) <= 1e-8);
    }
}

TEST_CASE("critical points move continuously under small parameter changes") {
    Params prm;
    prm.d += 1e-6;
    prm.a3 -= 1e-6;
    const std::vector<double> roots = zc::find_h_prime_roots(prm);
    REQUIRE(roots.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(std::fabs(roots[i] - kRoots[i]) < 1e-3);
}

TEST_CASE("zero-height limits of H") {
    const Params prm;
    // a1 + a2 = 2 makes the upper limit vanish exactly at b = 0.
    CHECK(std::fabs(zc::limit_H_zero(0.0, prm, +1)) <= 1e-12);
    CHECK(zc::limit_H_zero(0.0, prm, -1) == doctest::Approx(-2.0 * 3.14159265358979323846).epsilon(1e-15));
    for (double b : {0.0, 0.2, 0.35, 0.5}) {
        CHECK(zc::limit_H_zero(b, prm, +1) <= 1e-12);
        const double lim = zc::limit_H_zero(b, prm, +1);
        const double near = zc::eval_H({b, 1e-7}, prm);
        CHECK(std::fabs(near - lim) < 1e-4);
    }
}

TEST_CASE("default parameters certify as admissible") {
    const zc::Lemma21Certificate cert = zc::verify_lemma21(Params{});
    CHECK(cert.verdict);
    CHECK(cert.failure.empty());
    CHECK(cert.t0 == doctest::Approx(kT0).epsilon(1e-12));
    REQUIRE(cert.roots.size() == 7);
    REQUIRE(cert.maxima.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(cert.maxima[i].h == doctest::Approx(kMaxima[i]).epsilon(1e-9));
        CHECK(cert.maxima[i].h < 0.0);
    }
    CHECK(cert.boundary_margin == doctest::Approx(kBoundaryMargin).epsilon(1e-9));
    CHECK(cert.boundary_margin < 0.0);
    CHECK(cert.limit_margin < 0.0);
}

TEST_CASE("inadmissible parameters are rejected with a reason") {
    Params p;
    p.d = 0.5;
    CHECK_FALSE(zc::verify_lemma21(p).verdict);
    CHECK_FALSE(zc::verify_lemma21(p).failure.empty());

    p = Params{};
    p.a1 = p.a2;
    CHECK_FALSE(zc::verify_lemma21(p).verdict);

    p = Params{};
    p.a1 = 1.0;
    p.a2 = 0.9;
    CHECK_FALSE(zc::verify_lemma21(p).verdict);

    p = Params{};
    p.a3 = -0.1;
    CHECK_FALSE(zc::verify_lemma21(p).verdict);

    // A grossly oversized a3 pushes the majorant below f somewhere inside.
    p = Params{};
    p.a3 = 4.0;
    CHECK_FALSE(zc::verify_lemma21(p).verdict);
}

TEST_CASE("degenerate a1 = a2 collapses the critical-point polynomial") {
    Params p;
    p.a2 = p.a1;
    CHECK_THROWS(zc::find_h_prime_roots(p));
}

TEST_CASE("search over a box with the default point on the seed lattice") {
    const zc::ParamBox box{0.722, 0.76, 1.07, 1.15, 0.85, 0.93, 0.365, 0.42};
    const zc::SearchResult res = zc::search_params(box);
    CHECK(res.certificate.verdict);
    CHECK(res.objective <= 0.722 * 1.07 + 1e-12);
    CHECK(res.objective == doctest::Approx(res.best.d * res.best.a1).epsilon(1e-15));
}

TEST_CASE("search on a singleton box returns that point") {
    const zc::ParamBox box{0.722, 0.722, 1.07, 1.07, 0.93, 0.93, 0.365, 0.365};
    const zc::SearchResult res = zc::search_params(box);
    CHECK(res.best.d == 0.722);
    CHECK(res.best.a1 == 1.07);
    CHECK(res.certificate.verdict);
    CHECK(res.objective == doctest::Approx(0.722 * 1.07).epsilon(1e-15));
}

TEST_CASE("search fails cleanly when the box has no admissible point") {
    const zc::ParamBox box{0.722, 0.75, 0.8, 0.9, 0.9, 1.0, 0.3, 0.4};
    CHECK_THROWS_AS((void)zc::search_params(box), std::runtime_error);
}

TEST_CASE("malformed boxes are rejected") {
    const zc::ParamBox box{0.75, 0.72, 1.0, 1.1, 0.9, 1.0, 0.3, 0.4};
    CHECK_THROWS_AS((void)zc::search_params(box), std::invalid_argument);
}
