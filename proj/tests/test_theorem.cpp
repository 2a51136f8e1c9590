#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zerocount/rounding.hpp"
#include "zerocount/theorem.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

using zc::Params;

namespace {

constexpr double kPi = 3.14159265358979323846;

#ifndef ZC_ZERO_TABLE
#define ZC_ZERO_TABLE "data/riemann_zeros_100.txt"
#endif

std::string write_temp(const char* name, const char* content) {
    const std::string path = std::string("zc_test_") + name + ".txt";
    std::ofstream out(path);
    out << content;
    out.close();
    return path;
}

} // namespace

TEST_CASE("outward rounding with the decimal snap window") {
    CHECK(zc::round_up_dec(1.1083408575555884, 4) == 1.1084);
    CHECK(zc::round_up_dec(4.5242835654332163, 4) == 4.5243);
    CHECK(zc::round_up_dec(0.048910518195998239, 3) == 0.049);
    CHECK(zc::round_down_dec(-0.24972955726423163, 3) == -0.25);
    CHECK(zc::round_down_dec(0.00054062516870413354, 3) == 0.0);

    // 0.258 + 5.633 carries binary noise (5.891000000000001); the snap keeps
    // it at 5.891 instead of pushing up to 5.892.
    CHECK(zc::round_up_dec(0.258 + 5.633, 3) == 5.891);
    CHECK(zc::round_up_dec(0.2580000001, 3) == 0.258);
    CHECK(zc::round_up_dec(0.2580020, 3) == 0.259);
    CHECK(zc::round_down_dec(0.2579999999, 3) == 0.258);
    CHECK(zc::round_down_dec(0.2579980, 3) == 0.257);
}

TEST_CASE("constant assembly reproduces every published value exactly") {
    const zc::AssembledConstants c = zc::assemble_constants(zc::LemmaOutputs{}, Params{});
    CHECK(c.gamma_per_degree_upper == 0.258);
    CHECK(c.gamma_per_degree_lower == 0.250);
    CHECK(c.head_rounded == 1.1084);
    CHECK(c.tail_rounded == 4.5243);
    CHECK(c.zeta_per_degree == 5.633);
    CHECK(c.upper_per_degree == 5.899);
    CHECK(c.lower_per_degree == 5.891);
    CHECK(c.s_sq_upper == 2.381);
    CHECK(c.s_sq_lower == 1.458);
    CHECK(c.center == 1.919);
    CHECK(c.radius_const == 0.462);
    CHECK(c.log_coeff == 0.194);
    CHECK(c.per_degree_const == 5.543);
    CHECK(c.q_case_const == 6.005);
    CHECK(c.corollary_coeff == 0.097);
    CHECK(c.corollary_const == 3.962);
}

TEST_CASE("envelope arithmetic") {
    const zc::BoundEnvelope env = zc::bound_NK(100.0, {1, 1, 0, 0.0});
    CHECK(env.main_term
          == doctest::Approx(100.0 / kPi * std::log(100.0 / (2.0 * kPi * std::exp(1.0))))
                 .epsilon(1e-14));
    CHECK(env.radius == doctest::Approx(0.194 * std::log(100.0) + 5.543 + 0.462).epsilon(1e-14));
    CHECK(env.center == 1.919);
    CHECK(env.lower == doctest::Approx(env.main_term + env.center - env.radius).epsilon(1e-14));
    CHECK(env.upper == doctest::Approx(env.main_term + env.center + env.radius).epsilon(1e-14));

    const zc::BoundEnvelope field = zc::bound_NK(100.0, {3, 1, 1, 2.5});
    CHECK(field.main_term
          == doctest::Approx(100.0 / kPi
                             * (2.5 + 3.0 * std::log(100.0 / (2.0 * kPi * std::exp(1.0)))))
                 .epsilon(1e-14));
    CHECK(field.radius
          == doctest::Approx(0.194 * (2.5 + 3.0 * std::log(100.0)) + 3.0 * 5.543 + 0.462)
                 .epsilon(1e-14));
}

TEST_CASE("rational-field corollary halves the symmetric bound") {
    for (double T : {10.0, 50.0, 99.0}) {
        const zc::BoundEnvelope cor = zc::corollary_riemann(T);
        CHECK(cor.main_term
              == doctest::Approx(T / (2.0 * kPi) * std::log(T / (2.0 * kPi * std::exp(1.0))))
                     .epsilon(1e-14));
        CHECK(cor.radius == doctest::Approx(0.097 * std::log(T) + 3.962).epsilon(1e-14));
        CHECK(cor.center == 0.0);
        const zc::BoundEnvelope full = zc::bound_NK(T, {1, 1, 0, 0.0});
        CHECK(cor.radius
              == doctest::Approx((full.radius + full.center) / 2.0).epsilon(1e-14));
        CHECK(cor.main_term == doctest::Approx(full.main_term / 2.0).epsilon(1e-14));
    }
}

TEST_CASE("envelope argument validation") {
    CHECK_THROWS_AS((void)zc::bound_NK(0.0, {1, 1, 0, 0.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::bound_NK(10.0, {2, 1, 2, 0.0}), std::domain_error);
    CHECK_THROWS_AS((void)zc::bound_NK(10.0, {1, 1, 0, -0.5}), std::domain_error);
    CHECK_THROWS_AS((void)zc::corollary_riemann(-1.0), std::domain_error);
}

TEST_CASE("zero table parsing") {
    SUBCASE("comments, blanks, and data") {
        const std::string path = write_temp("good", "# header\n\n1.5\n2.25\n# mid\n3.125\n");
        const zc::ZeroTable t = zc::load_zero_table(path);
        REQUIRE(t.ordinates.size() == 3);
        CHECK(t.ordinates[0] == 1.5);
        CHECK(t.ordinates[2] == 3.125);
        std::remove(path.c_str());
    }
    SUBCASE("parse error carries the line number") {
        const std::string path = write_temp("bad", "1.5\nnot-a-number\n");
        CHECK_THROWS_WITH_AS((void)zc::load_zero_table(path),
                             doctest::Contains("line 2"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("trailing junk is a parse error") {
        const std::string path = write_temp("junk", "1.5\n2.5 oops\n");
        CHECK_THROWS_AS((void)zc::load_zero_table(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("nonpositive ordinate") {
        const std::string path = write_temp("nonpos", "1.5\n-2.0\n");
        CHECK_THROWS_WITH_AS((void)zc::load_zero_table(path),
                             doctest::Contains("nonpositive"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("descending data") {
        const std::string path = write_temp("desc", "2.5\n1.5\n");
        CHECK_THROWS_WITH_AS((void)zc::load_zero_table(path),
                             doctest::Contains("ascending"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("no data") {
        const std::string path = write_temp("empty", "# only a comment\n");
        CHECK_THROWS_AS((void)zc::load_zero_table(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)zc::load_zero_table("zc_test_does_not_exist.txt"),
                        std::runtime_error);
    }
}

TEST_CASE("counting weights an ordinate-exact height by one half") {
    zc::ZeroTable t;
    t.ordinates = {1.0, 2.0, 3.0};
    CHECK(zc::count_zeros(t, 0.5) == 0.0);
    CHECK(zc::count_zeros(t, 2.5) == 2.0);
    CHECK(zc::count_zeros(t, 2.0) == 1.5);
    CHECK(zc::count_zeros(t, 2.0 + 5e-10) == 1.5);
    CHECK(zc::count_zeros(t, 2.0 - 5e-10) == 1.5);
    CHECK(zc::count_zeros(t, 2.0 + 5e-9) == 2.0);
    CHECK(zc::count_zeros(t, 10.0) == 3.0);
}

TEST_CASE("bundled table validates with a comfortable margin") {
    const zc::ZeroTable table = zc::load_zero_table(ZC_ZERO_TABLE);
    REQUIRE(table.ordinates.size() == 100);
    CHECK(table.ordinates.front() == doctest::Approx(14.134725141734695).epsilon(1e-15));
    CHECK(table.ordinates.back() == doctest::Approx(236.52422966581622).epsilon(1e-15));

    const zc::ValidationReport rep = zc::validate(table, 1.0, 99.0, 0.5);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 197);
    CHECK(rep.min_margin == doctest::Approx(2.7195824719864401).epsilon(1e-10));
    CHECK(rep.arg_min == 61.0);
    CHECK(rep.min_margin >= 2.0);
    for (const zc::ValidationRow& row : rep.rows) {
        CHECK(row.margin == doctest::Approx(row.radius - row.deviation).epsilon(1e-14));
        CHECK(row.margin >= 0.0);
    }
}

TEST_CASE("validation grid must stay inside the table") {
    const zc::ZeroTable table = zc::load_zero_table(ZC_ZERO_TABLE);
    CHECK_THROWS_WITH_AS((void)zc::validate(table, 1.0, 300.0, 0.5),
                         doctest::Contains("beyond the zero table"), std::domain_error);
    CHECK_THROWS_AS((void)zc::validate(table, 1.0, 99.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)zc::validate(table, 99.0, 1.0, 0.5), std::domain_error);
}
