#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzv/constructions.hpp"
#include "kzv/petersson.hpp"

#include <cmath>

using namespace kzv;

TEST_CASE("zero form has zero norm")
{
    QExpansion z(Rat(12), 1, 50);
    CHECK(petersson_norm_numeric(z, 1, 1e-8) == 0.0);
}

TEST_CASE("level guard and cusp guard")
{
    auto delta = eta_quotient(EtaQuotientSpec::parse("1^24"), 100);
    CHECK_THROWS_AS(petersson_norm_numeric(delta, 11, 1e-6), input_error);
    auto th = theta_series(100);
    CHECK_THROWS_AS(petersson_norm_numeric(th, 4, 1e-6), input_error); // c(0) != 0
    CHECK_THROWS_AS(petersson_norm_numeric(delta, 1, -1.0), input_error);
}

TEST_CASE("<Delta,Delta>: self-consistency across truncations")
{
    auto d100 = eta_quotient(EtaQuotientSpec::parse("1^24"), 100);
    auto d200 = eta_quotient(EtaQuotientSpec::parse("1^24"), 200);
    double n100 = petersson_norm_numeric(d100, 1, 1e-13);
    double n200 = petersson_norm_numeric(d200, 1, 1e-13);
    CHECK(n100 > 0.0);
    CHECK(std::fabs(n100 - n200) / n200 < 1e-6);
    // the norm of Delta is famously tiny; sanity-check the scale
    CHECK(n200 < 1e-4);
    CHECK(n200 > 1e-8);
}

TEST_CASE("scaling bilinearity: f -> 2f multiplies the norm by 4")
{
    auto d = eta_quotient(EtaQuotientSpec::parse("1^24"), 120);
    auto d2 = scale(d, Rat(2));
    double n1 = petersson_norm_numeric(d, 1, 1e-13);
    double n4 = petersson_norm_numeric(d2, 1, 1e-13);
    CHECK(std::fabs(n4 - 4.0 * n1) <= 4e-6 * n1);
}

TEST_CASE("level 4: plus-space generator has a stable positive norm")
{
    auto g300 = kohnen_plus_basis(6, 300)[0];
    auto g500 = kohnen_plus_basis(6, 500)[0];
    double n300 = petersson_norm_numeric(g300, 4, 1e-10);
    double n500 = petersson_norm_numeric(g500, 4, 1e-10);
    CHECK(n300 > 0.0);
    CHECK(std::fabs(n300 - n500) / n500 < 1e-4);
}
