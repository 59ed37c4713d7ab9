#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzv/dyadic.hpp"

#include <cmath>

using namespace kzv;

static const long long kClasses[] = {1, -1, 2, -2, 5, -5, 10, -10};

TEST_CASE("Cyclo ring basics")
{
    auto I = Cyclo::i();
    CHECK((I * I) == Cyclo(-1));
    auto s2 = Cyclo::sqrt2();
    CHECK((s2 * s2) == Cyclo(2));
    CHECK(std::abs(I.eval() - std::complex<double>(0, 1)) < 1e-14);
    CHECK(std::abs(s2.eval() - std::complex<double>(std::sqrt(2.0), 0)) < 1e-14);
    CHECK((Cyclo::unit_root(1, 8) * Cyclo::unit_root(-1, 8)) == Cyclo(1));
    CHECK_THROWS_AS(Cyclo::unit_root(1, 3), input_error);
}

TEST_CASE("weil_gamma_2: values and modulus")
{
    CHECK(weil_gamma_2(1) == Cyclo(1));
    CHECK(weil_gamma_2(5) == Cyclo(1));
    // literal evaluation of the displayed formula at chi_{-1} = -1 gives -i
    CHECK(weil_gamma_2(3) == -Cyclo::i());
    CHECK(weil_gamma_2(7) == -Cyclo::i());
    CHECK(weil_gamma_2(-1) == -Cyclo::i());
    for (long long x : {1LL, 3LL, 5LL, 7LL, 9LL, -3LL})
        CHECK(std::abs(std::abs(weil_gamma_2(x).eval()) - 1.0) < 1e-14);
    CHECK_THROWS_AS(weil_gamma_2(4), input_error);
}

TEST_CASE("gauss_sum_2: the three quoted values, exactly")
{
    Cyclo inv_sqrt2 = Cyclo::sqrt2() * Rat(1, 2);
    CHECK(gauss_sum_2(DyChar::chi_2, -3) == inv_sqrt2);
    CHECK(gauss_sum_2(DyChar::chi_m2, -3) == (-Cyclo::i()) * inv_sqrt2);
    CHECK(gauss_sum_2(DyChar::chi_m1, -2) == -Cyclo::i());
}

TEST_CASE("gauss_sum_2: conductor-mismatch vanishing on a 20-case grid")
{
    int cases = 0;
    for (DyChar nu : {DyChar::trivial, DyChar::chi_m1, DyChar::chi_2, DyChar::chi_m2}) {
        int cond = dychar_conductor(nu);
        for (int tlog = -5; tlog <= 1; ++tlog) {
            bool expect_zero;
            if (cond == 0)
                expect_zero = (tlog < -1); // unramified: dies once |t|_2 > 2
            else
                expect_zero = (tlog != -cond);
            if (!expect_zero) continue;
            CHECK(gauss_sum_2(nu, tlog).is_zero());
            ++cases;
        }
    }
    CHECK(cases >= 20);
}

TEST_CASE("gauss_sum_2: unramified values and unit-shift rule")
{
    CHECK(gauss_sum_2(DyChar::trivial, 0) == Cyclo(1));
    CHECK(gauss_sum_2(DyChar::trivial, 2) == Cyclo(1));
    CHECK(gauss_sum_2(DyChar::trivial, -1) == Cyclo(-1));
    // eta(nu, t t') = eta(nu, t) nu(t') for odd t'
    for (DyChar nu : {DyChar::chi_m1, DyChar::chi_2, DyChar::chi_m2}) {
        int cond = dychar_conductor(nu);
        for (long long t1 : {3LL, 5LL, 7LL, 9LL}) {
            Cyclo lhs = gauss_sum_2(nu, -cond, t1);
            Cyclo rhs =
                gauss_sum_2(nu, -cond) * Cyclo(static_cast<long long>(dychar_eval(nu, t1)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("gauss_sum_2: exactness is stable under raising the modulus by 2")
{
    for (DyChar nu : {DyChar::trivial, DyChar::chi_m1, DyChar::chi_2, DyChar::chi_m2})
        for (int tlog = -4; tlog <= 0; ++tlog)
            for (long long tu : {1LL, 3LL, 5LL, 7LL}) {
                CHECK(gauss_sum_2(nu, tlog, tu) == gauss_sum_2(nu, tlog, tu, 2));
            }
}

TEST_CASE("whittaker F[2,1] is the characteristic function of Z_2")
{
    CHECK(whittaker_F21({1, 0}) == MuPoly(Cyclo(1)));
    CHECK(whittaker_F21({2, 1}) == MuPoly(Cyclo(1)));
    CHECK(whittaker_F21({1, -1}).is_zero()); // |z|_2 = 4
    CHECK(whittaker_F21({2, -1}).is_zero()); // |z|_2 = 2
}

TEST_CASE("whittaker F[2,2^2]: closed table equals the T-series brute force exactly")
{
    for (long long delta : kClasses)
        for (int dlog : {-1, 0, 1, 2})
            for (int kp : {0, 1}) {
                Z2Arg z{delta, dlog};
                CAPTURE(delta);
                CAPTURE(dlog);
                CAPTURE(kp);
                auto closed = whittaker_F22(z, kp);
                auto brute = whittaker_F22_series(z, kp);
                CHECK(closed == brute);
                CHECK(closed == whittaker_F22_series(z, kp, 2));
            }
}

TEST_CASE("whittaker F[2,2^2]: displayed table rows")
{
    for (int kp : {0, 1}) {
        Cyclo om = kohnen_omega(kp);
        long long e = (kp % 2 == 0) ? 1 : -1;

        // |z|_2 > 1 -> 0
        CHECK(whittaker_F22({e, -1}, kp).is_zero());

        // z = (-1)^{k'} mod 8 (where the displayed row is on the nose):
        // (mu(2^2) + sqrt2 mu(2^3)) omega
        auto row2 = MuPoly::mono(2, om) + MuPoly::mono(3, Cyclo::sqrt2() * om);
        CHECK(whittaker_F22({e, 0}, kp) == row2);
        // finer class z = 5 (-1)^{k'} mod 8: the sqrt2 term flips sign
        auto row2m = MuPoly::mono(2, om) - MuPoly::mono(3, Cyclo::sqrt2() * om);
        CHECK(whittaker_F22({5 * e, 0}, kp) == row2m);

        // z in ((-1)^{k'+1} + P^2) u (2 + P^2): -mu(2^2) omega
        auto row3 = MuPoly::mono(2, -om);
        CHECK(whittaker_F22({-e, 0}, kp) == row3);
        CHECK(whittaker_F22({2, 0}, kp) == row3);
        CHECK(whittaker_F22({-2, 0}, kp) == row3);
        CHECK(whittaker_F22({10, 0}, kp) == row3);

        // (-1)^{k'} z/4 in (2+P^2) u (-1+P^2): (mu(2^2) - mu(2^4)) omega
        auto row4 = MuPoly::mono(2, om) - MuPoly::mono(4, om);
        CHECK(whittaker_F22({2 * e, 1}, kp) == row4); // v(z) = 3
        CHECK(whittaker_F22({-e, 1}, kp) == row4);    // v(z) = 2, z/4 = -(-1)^{k'}
    }
}

TEST_CASE("kohnen vector: vanishing exactly on (-1)^{k'} z = 2,3 mod 4")
{
    for (int kp : {0, 1})
        for (long long delta : kClasses)
            for (int dlog : {0, 1, 2}) {
                Z2Arg z{delta, dlog};
                long long zval = delta;
                for (int t = 0; t < dlog; ++t) zval *= 4;
                long long signed_z = (kp % 2 == 0) ? zval : -zval;
                long long m4 = ((signed_z % 4) + 4) % 4;
                bool expect_zero = (m4 == 2 || m4 == 3);
                CAPTURE(kp);
                CAPTURE(zval);
                CHECK(kohnen_vector_value(z, kp).is_zero() == expect_zero);
            }
    // and it dies for |z|_2 > 1
    CHECK(kohnen_vector_value({1, -1}, 0).is_zero());
    CHECK(kohnen_vector_value({-5, -1}, 1).is_zero());
}

TEST_CASE("kohnen vector: nonzero values evaluate consistently for unitary mu")
{
    std::complex<double> mus[] = {{1, 0}, {0, 1}, {std::sqrt(0.5), std::sqrt(0.5)}};
    for (auto mu : mus) {
        auto v = kohnen_vector_value({1, 0}, 0);
        auto w = whittaker_F22({1, 0}, 0) + MuPoly::mono(2, kohnen_omega(0));
        CHECK(std::abs(v.eval(mu) - w.eval(mu)) < 1e-14);
        CHECK(std::abs(v.eval(mu)) > 0.1);
    }
}
