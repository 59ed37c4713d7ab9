#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzv/constructions.hpp"
#include "kzv/qexpansion.hpp"

#include <random>

using namespace kzv;

static QExpansion from_ints(std::initializer_list<long long> cs, Rat w = Rat(0))
{
    QExpansion f(w, 1, static_cast<int>(cs.size()) - 1);
    int i = 0;
    for (long long v : cs) f.coeff[static_cast<size_t>(i++)] = v;
    return f;
}

TEST_CASE("add/mul/scale basics")
{
    auto a = from_ints({1, 1});  // 1 + q
    auto b = from_ints({1, -1}); // 1 - q
    auto ab = mul(a, b);
    CHECK(ab.precision() == 1); // min precision of the operands
    CHECK(ab.c(0) == 1);
    CHECK(ab.c(1) == 0);

    QExpansion a2(Rat(0), 1, 2), b2(Rat(0), 1, 2);
    a2.coeff = {Rat(1), Rat(1), Rat(0)};
    b2.coeff = {Rat(1), Rat(-1), Rat(0)};
    auto ab2 = mul(a2, b2);
    CHECK(ab2.c(2) == -1); // 1 - q^2

    auto z = scale(a, Rat(0));
    CHECK(z.is_zero());

    auto s = add(a, b);
    CHECK(s.c(0) == 2);
    CHECK(s.c(1) == 0);

    auto c = from_ints({1}, Rat(2));
    CHECK_THROWS_AS(add(a, c), input_error); // weight mismatch
}

TEST_CASE("mul matches the naive double-loop oracle on random series")
{
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 64;
        QExpansion a(Rat(0), 1, n), b(Rat(0), 1, n);
        for (int i = 0; i <= n; ++i) {
            a.coeff[static_cast<size_t>(i)] = coeff(rng);
            b.coeff[static_cast<size_t>(i)] = coeff(rng);
        }
        auto ab = mul(a, b);
        for (int m = 0; m <= n; ++m) {
            Rat s = 0;
            for (int i = 0; i <= m; ++i) s += a.c(i) * b.c(m - i);
            CHECK(ab.c(m) == s);
        }
    }
}

TEST_CASE("theta series")
{
    auto th = theta_series(50);
    CHECK(th.weight == Rat(1, 2));
    CHECK(th.level == 4);
    CHECK(th.c(0) == 1);
    CHECK(th.c(1) == 2);
    CHECK(th.c(3) == 0);
    CHECK(th.c(4) == 2);
    CHECK(th.c(49) == 2);
}

TEST_CASE("theta^2 counts representations by two squares")
{
    int N = 200;
    auto th = theta_series(N);
    auto th2 = mul(th, th);
    for (int n = 0; n <= N; ++n) {
        long long count = 0;
        for (long long a = -15; a <= 15; ++a)
            for (long long b = -15; b <= 15; ++b)
                if (a * a + b * b == n) ++count;
        CHECK(th2.c(n) == count);
    }
}

TEST_CASE("eisenstein F")
{
    auto F = eisenstein_F(30);
    CHECK(F.weight == Rat(2));
    CHECK(F.level == 4);
    CHECK(F.c(0) == 0);
    CHECK(F.c(1) == 1);
    CHECK(F.c(2) == 0);
    CHECK(F.c(3) == 4);  // 1 + 3
    CHECK(F.c(9) == 13); // 1 + 3 + 9
    CHECK(F.c(15) == 24);
}

TEST_CASE("eta quotient: Delta")
{
    auto delta = eta_quotient(EtaQuotientSpec::parse("1^24"), 60);
    CHECK(delta.weight == Rat(12));
    CHECK(delta.level == 1);
    CHECK(delta.cuspidal);
    CHECK(delta.c(0) == 0);
    CHECK(delta.c(1) == 1);
    CHECK(delta.c(2) == -24);
    CHECK(delta.c(3) == 252);
    CHECK(delta.c(4) == -1472);
    CHECK(delta.c(5) == 4830);

    // independent oracle: multiply the factors (1 - q^n) directly, no
    // pentagonal shortcut, then raise to the 24th power
    int N = 40;
    QExpansion e(Rat(0), 1, N);
    e.coeff[0] = 1;
    for (int n = 1; n <= N; ++n) {
        QExpansion fac(Rat(0), 1, N);
        fac.coeff[0] = 1;
        fac.coeff[static_cast<size_t>(n)] = -1;
        e = mul(e, fac);
    }
    QExpansion p24(Rat(0), 1, N);
    p24.coeff[0] = 1;
    for (int i = 0; i < 24; ++i) p24 = mul(p24, e);
    for (int n = 1; n <= N; ++n) CHECK(delta.c(n) == p24.c(n - 1));
}

TEST_CASE("Delta coefficients are multiplicative")
{
    auto delta = eta_quotient(EtaQuotientSpec::parse("1^24"), 900);
    for (int m = 2; m <= 30; ++m)
        for (int n = 2; n <= 30; ++n) {
            if (gcd_ll(m, n) != 1) continue;
            CHECK(delta.c(static_cast<long long>(m) * n) == delta.c(m) * delta.c(n));
        }
}

TEST_CASE("eta quotient: level 11 newform")
{
    auto f = eta_quotient(EtaQuotientSpec::parse("1^2 11^2"), 40);
    CHECK(f.weight == Rat(2));
    CHECK(f.level == 11);
    CHECK(f.cuspidal);
    CHECK(f.c(1) == 1);
    CHECK(f.c(2) == -2);
    CHECK(f.c(3) == -1);
    CHECK(f.c(4) == 2);
    CHECK(f.c(5) == 1);
    CHECK(f.c(11) == 1); // consistent with w_11 = -1 via a(p) = -w_p p^{k-1}
}

TEST_CASE("eta quotient: rejects and degenerate cases")
{
    CHECK_THROWS_AS(eta_quotient(EtaQuotientSpec::parse("1^23"), 10), input_error);
    CHECK_THROWS_AS(eta_quotient(EtaQuotientSpec::parse("1^-24"), 10), input_error);
    auto one = eta_quotient(EtaQuotientSpec{}, 10);
    CHECK(one.c(0) == 1);
    for (int n = 1; n <= 10; ++n) CHECK(one.c(n) == 0);
    // eta(z)^24 * eta(z)^-24 = 1, exercising the series inverse
    auto unit = eta_quotient(EtaQuotientSpec::parse("1^24 1^-24"), 20);
    CHECK(unit.c(0) == 1);
    for (int n = 1; n <= 20; ++n) CHECK(unit.c(n) == 0);
}

TEST_CASE("serialize / parse round trip")
{
    auto th = theta_series(10);
    auto text = serialize(th);
    auto back = parse_qexpansion(text);
    CHECK(back.weight == th.weight);
    CHECK(back.level == th.level);
    CHECK(back.precision() == th.precision());
    for (int n = 0; n <= 10; ++n) CHECK(back.c(n) == th.c(n));

    // half-integral weight marker
    CHECK(denominator(back.weight) == 2);

    // rational coefficients survive
    QExpansion g(Rat(3, 2), 4, 5);
    g.coeff[3] = Rat(-7, 5);
    auto g2 = parse_qexpansion(serialize(g));
    CHECK(g2.c(3) == Rat(-7, 5));

    // Atkin-Lehner lines round-trip through FormFile
    FormFile ff;
    ff.form = from_ints({0, 1, -2}, Rat(2));
    ff.form.level = 11;
    ff.atkin_lehner[11] = -1;
    auto ff2 = parse_form(serialize(ff));
    CHECK(ff2.atkin_lehner.at(11) == -1);
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse_qexpansion("weight 2\nprecision 5\n1 1\n"), input_error); // no level
    CHECK_THROWS_AS(parse_qexpansion("weight 2\nlevel 1\nprecision 5\n1 x\n"), input_error);
    CHECK_THROWS_AS(parse_qexpansion("weight 2\nlevel 1\nprecision 5\n7 1\n"), input_error);
    CHECK_THROWS_AS(parse_qexpansion("bogus 3\nweight 2\nlevel 1\nprecision 5\n"), input_error);
    CHECK_NOTHROW(parse_qexpansion("weight 3/2\nlevel 4\nprecision 3\n# comment\n\n1 1\n"));
}
