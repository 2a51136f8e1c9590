#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zerocount/primes.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using zc::Params;

namespace {

// Frozen phase maxima of the per-prime upper term, single golden-section run.
struct FrozenMax {
    int p;
    double phi;
    double value;
};
constexpr FrozenMax kFrozen[] = {
    {2, 1.4029358145277846, 0.34784557092123336},
    {3, 1.6946277017100888, 0.19719022072999021},
    {5, 1.8280540614705947, 0.077706449312768391},
    {7, 1.6568106809913568, 0.031767896471863746},
};

constexpr double kHead79 = 1.1083408575555884;   // sequential sum over 22 primes
constexpr double kTail79 = 4.5242835654332163;
constexpr double kC = 0.30341816803982519;       // sqrt((d^2 a2/2)^2 + (a3/2)^2)
constexpr double kD1222 = 20.123965133685292;    // log-derivative sum at 1.222
constexpr double kD25 = 0.35045248787741275;     // frozen high-precision value at 2.5

} // namespace

TEST_CASE("per-prime phase maxima are frozen") {
    const Params prm;
    for (const FrozenMax& f : kFrozen) {
        const zc::PhaseMax m = zc::max_over_phase(f.p, prm, 0);
        CAPTURE(f.p);
        CHECK(m.value == doctest::Approx(f.value).epsilon(1e-12));
        CHECK(m.phi == doctest::Approx(f.phi).epsilon(1e-8));
        CHECK(m.value >= zc::q1({static_cast<double>(f.p), f.phi + 0.1}, prm));
        CHECK(m.value >= zc::q1({static_cast<double>(f.p), f.phi - 0.1}, prm));
    }
}

TEST_CASE("q1 splits into its two parts") {
    const Params prm;
    const zc::PhasePoint p{3.0, 1.1};
    CHECK(zc::q1(p, prm)
          == doctest::Approx(zc::f1_part(p, prm) + zc::f2_part(p, prm)).epsilon(1e-15));
}

TEST_CASE("sieve") {
    const std::vector<int> primes = zc::sieve_primes(79);
    CHECK(primes.size() == 22);
    CHECK(primes.front() == 2);
    CHECK(primes.back() == 79);
    CHECK(zc::sieve_primes(1).empty());
}

TEST_CASE("head sum") {
    const Params prm;
    CHECK(zc::head_sum(79, prm, 1) == doctest::Approx(kHead79).epsilon(1e-13));
    CHECK(zc::head_sum(1, prm, 1) == 0.0);
    CHECK(zc::head_sum(79, prm, 1) <= 1.1084);
    CHECK(zc::head_sum(79, prm, 1) >= 1.09);
    CHECK(zc::head_sum(7, prm, 1) < zc::head_sum(79, prm, 1));
}

TEST_CASE("second-order envelope constant against the closed form and the oracle") {
    const Params prm;
    const double closed = std::sqrt(std::pow(prm.d * prm.d * prm.a2 / 2.0, 2)
                                    + std::pow(prm.a3 / 2.0, 2));
    CHECK(zc::c_constant(prm) == doctest::Approx(kC).epsilon(1e-15));
    CHECK(std::fabs(zc::c_constant(prm) - closed) <= 1e-12);
    CHECK(std::fabs(zc::c_constant(prm) - zc::c_constant_oracle(prm)) <= 1e-9);
    CHECK(zc::c_constant(prm) <= 0.304);
}

TEST_CASE("log-derivative series value") {
    CHECK(zc::zeta_log_derivative2(1.222) == doctest::Approx(kD1222).epsilon(1e-12));
    CHECK(zc::zeta_log_derivative2(2.5) == doctest::Approx(kD25).epsilon(1e-12));
    CHECK_THROWS_AS((void)zc::zeta_log_derivative2(1.0), std::domain_error);
    CHECK_THROWS_AS((void)zc::zeta_log_derivative2(0.9), std::domain_error);
    CHECK_THROWS_AS((void)zc::zeta_log_derivative2(2.0, -1.0), std::domain_error);
}

TEST_CASE("tail bound") {
    const Params prm;
    CHECK(zc::tail_bound(79, prm) == doctest::Approx(kTail79).epsilon(1e-12));
    CHECK(zc::tail_bound(79, prm) <= 4.5243);
    CHECK(zc::tail_bound(79, prm) > 0.0);
}

TEST_CASE("prime sum report is consistent and tightens with the cutoff") {
    const Params prm;
    const zc::PrimeSumReport rep = zc::prime_sum_report(79, prm, 1);
    CHECK(rep.cutoff == 79);
    CHECK(rep.primes.size() == 22);
    CHECK(rep.head_terms.size() == 22);
    CHECK(rep.head == doctest::Approx(kHead79).epsilon(1e-13));
    CHECK(rep.total_per_degree == rep.head + rep.tail);
    CHECK(rep.total_per_degree <= 5.633);

    double resum = 0.0;
    for (const zc::PhaseMax& m : rep.head_terms) resum += m.value;
    CHECK(resum == doctest::Approx(rep.head).epsilon(1e-14));

    const double t7 = zc::prime_sum_report(7, prm, 1).total_per_degree;
    const double t29 = zc::prime_sum_report(29, prm, 1).total_per_degree;
    CHECK(t7 >= t29);
    CHECK(t29 >= rep.total_per_degree);
}

TEST_CASE("phase maxima decay for large arguments") {
    const Params prm;
    double prev = 1e300;
    for (double alpha : {13.0, 100.0, 1000.0, 10000.0}) {
        const double v = zc::max_over_phase(alpha, prm, 0).value;
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
}

TEST_CASE("prime powers are absorbed by the tail estimate") {
    const Params prm;
    std::vector<double> grid;
    for (double a = 2.0; a <= 100.0; a += 0.5) grid.push_back(a);
    const zc::ReductionReport rep = zc::verify_prime_power_reduction(grid, 10, prm);
    CHECK(rep.envelope_ok);
    CHECK(rep.m_monotone_ok);
    CHECK(rep.crossover_low_ok);
    CHECK(rep.crossover_high_ok);
    CHECK(rep.full_ok);
    CHECK(rep.pass);
    CHECK(rep.worst_slack >= -1e-12);
}

TEST_CASE("zeta-term envelope is height independent and additive in the degree") {
    const Params prm;
    const zc::FieldSignature sig{3, 1, 1, 0.0};
    const zc::EnvelopeTerm low = zc::e_zeta_K(1.0, sig, prm);
    const zc::EnvelopeTerm high = zc::e_zeta_K(500.0, sig, prm);
    CHECK(low.upper == high.upper);
    CHECK(low.lower == high.lower);
    CHECK(low.lower == -low.upper);

    const zc::EnvelopeTerm unit = zc::e_zeta_K(1.0, {1, 1, 0, 0.0}, prm);
    CHECK(low.upper == doctest::Approx(3.0 * unit.upper).epsilon(1e-14));
}

TEST_CASE("argument validation") {
    const Params prm;
    CHECK_THROWS_AS((void)zc::q1({1.5, 0.0}, prm), std::domain_error);
    CHECK_THROWS_AS((void)zc::verify_prime_power_reduction({}, 10, prm), std::invalid_argument);
    CHECK_THROWS_AS((void)zc::verify_prime_power_reduction({2.0, 4.0}, 1, prm),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)zc::e_zeta_K(0.0, {1, 1, 0, 0.0}, prm), std::domain_error);
    CHECK_THROWS_AS((void)zc::e_zeta_K(1.0, {2, 1, 2, 0.0}, prm), std::domain_error);
}
