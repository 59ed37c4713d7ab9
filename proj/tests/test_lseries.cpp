#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzv/constructions.hpp"
#include "kzv/lseries.hpp"

#include <cmath>

using namespace kzv;

static const NewformData& delta()
{
    static NewformData f =
        NewformData::from_qexpansion(eta_quotient(EtaQuotientSpec::parse("1^24"), 1200));
    return f;
}

static const NewformData& f11()
{
    static NewformData f =
        NewformData::from_qexpansion(eta_quotient(EtaQuotientSpec::parse("1^2 11^2"), 4000));
    return f;
}

// Independent second route (different test function): for eps = +1,
//   Lambda(k) = 2 int_1^inf F(t) t^{k-1} dt,  F(t) = sum b(n) e^{-nt/Q},
// evaluated by composite Simpson instead of incomplete-gamma sums.
static double central_by_quadrature(const NewformData& f, long long D)
{
    REQUIRE(root_number(f, D) == 1);
    double Q = afe::completed_Q(f, D);
    auto F = [&](double t) {
        double s = 0.0;
        for (long long n = 1; n <= f.max_index(); ++n) {
            if (n * t / Q > 60.0 && n > 20) break;
            double b = afe::bcoeff(f, D, n);
            if (b != 0.0) s += b * std::exp(-n * t / Q);
        }
        return s;
    };
    int k = f.k;
    double T = 60.0 * Q + 5.0;
    int N = 400000;
    double h = (T - 1.0) / N, acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        double t = 1.0 + i * h;
        double wgt = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += wgt * F(t) * std::pow(t, k - 1);
    }
    acc *= h / 3.0;
    return 2.0 * acc / (std::pow(Q, k) * std::tgamma(static_cast<double>(k)));
}

TEST_CASE("atkin_lehner_from_ap")
{
    CHECK(atkin_lehner_from_ap(Int(1), 11, 1) == -1); // level 11, k=1, a(11)=1
    CHECK(atkin_lehner_from_ap(Int(-125), 5, 4) == 1);
    CHECK(atkin_lehner_from_ap(Int(125), 5, 4) == -1);
    CHECK_THROWS_AS(atkin_lehner_from_ap(Int(0), 5, 4), input_error);
    CHECK_THROWS_AS(atkin_lehner_from_ap(Int(7), 5, 4), input_error);
}

TEST_CASE("newform construction and invariants")
{
    const auto& f = delta();
    CHECK(f.level == 1);
    CHECK(f.k == 6);
    CHECK(f.an(1) == 1);
    // multiplicativity and the Deligne bound on a sample range
    for (long long m = 2; m <= 20; ++m)
        for (long long n = 2; n <= 20; ++n)
            if (gcd_ll(m, n) == 1) CHECK(f.an(m * n) == f.an(m) * f.an(n));
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
        double bound = 2.0 * std::pow(static_cast<double>(p), f.k - 0.5);
        CHECK(std::fabs(to_double(f.an(p))) <= bound);
    }

    const auto& g = f11();
    CHECK(g.w.at(11) == -1);
    CHECK(g.an(11) == 1); // a(p) = -w_p p^{k-1}

    // rejects
    auto bad = eta_quotient(EtaQuotientSpec::parse("1^24"), 40);
    bad.coeff[1] = 2;
    CHECK_THROWS_AS(NewformData::from_qexpansion(bad), input_error);
    auto evenlvl = theta_series(10);
    CHECK_THROWS_AS(NewformData::from_qexpansion(evenlvl), input_error);
    // declared AL sign inconsistent with a(p)
    auto q11 = eta_quotient(EtaQuotientSpec::parse("1^2 11^2"), 40);
    CHECK_THROWS_AS(NewformData::from_qexpansion(q11, {{11, 1}}), input_error);
    CHECK_NOTHROW(NewformData::from_qexpansion(q11, {{11, -1}}));
}

TEST_CASE("root numbers")
{
    // D=1: all local twists trivial, eps = (-1)^k prod w_p
    CHECK(root_number(delta(), 1) == 1);
    CHECK(root_number(f11(), 1) == 1); // (-1)^1 * w_11 = (-1)(-1)
    // level-11, D=-3: (+1) * sgn * kron(-3,11) = (+1)(-1)(-1)
    CHECK(root_number(f11(), -3) == 1);
    // Delta and negative D: sgn(D) alone
    for (long long D : {-3LL, -4LL, -7LL, -8LL, -11LL}) CHECK(root_number(delta(), D) == -1);
    CHECK_THROWS_AS(root_number(delta(), 7), input_error); // 7 = 3 mod 4, not fundamental
}

TEST_CASE("root number depends on D only through sign and residue data")
{
    const auto& f = f11();
    for (long long D1 = -60; D1 <= 60; ++D1) {
        if (!is_fundamental(D1)) continue;
        for (long long D2 = -60; D2 <= 60; ++D2) {
            if (!is_fundamental(D2)) continue;
            bool same_sign = (D1 > 0) == (D2 > 0);
            bool same_sym = kronecker(D1, 11) == kronecker(D2, 11);
            if (same_sign && same_sym) CHECK(root_number(f, D1) == root_number(f, D2));
        }
    }
}

TEST_CASE("central L-values: sign-forced vanishing for Delta")
{
    for (long long D : {-3LL, -4LL, -7LL, -8LL}) {
        auto r = central_lvalue(delta(), D, 1e-9);
        CHECK(root_number(delta(), D) == -1);
        CHECK(std::fabs(r.value) < 1e-8);
        CHECK(std::fabs(r.value) <= 10.0 * r.abs_error_bound);
    }
}

TEST_CASE("central L-values: positivity and dual-smoothing stability at D=1")
{
    auto r = central_lvalue(delta(), 1, 1e-10);
    CHECK(r.value > 0.0);
    CHECK(r.abs_error_bound < 1e-9);
    // two different smoothing lengths agree to 1e-9
    long long n1 = afe::choose_length(delta(), 1, 2.0, 1e-10, nullptr);
    long long n2 = afe::choose_length(delta(), 1, 4.0, 1e-10, nullptr);
    double v1 = afe::central_sum(delta(), 1, 2.0, n1, 1);
    double v2 = afe::central_sum(delta(), 1, 4.0, n2, 1);
    CHECK(std::fabs(v1 - v2) < 1e-9);
}

TEST_CASE("central L-value at D=5 matches the quadrature oracle")
{
    auto r = central_lvalue(delta(), 5, 1e-10);
    double oracle = central_by_quadrature(delta(), 5);
    CHECK(std::fabs(r.value - oracle) < 1e-8);
}

TEST_CASE("nonnegativity of central values")
{
    for (long long D = -30; D <= 30; ++D) {
        if (!is_fundamental(D)) continue;
        auto r = central_lvalue(delta(), D, 1e-9);
        CHECK(r.value >= -r.abs_error_bound);
        if (root_number(delta(), D) == -1) CHECK(std::fabs(r.value) <= 10.0 * r.abs_error_bound);
    }
}

TEST_CASE("AFE invariance under doubling the smoothing length")
{
    for (long long D : {5LL, 12LL, -8LL, 21LL}) {
        int eps = root_number(delta(), D);
        double t1 = 0, t2 = 0;
        long long n1 = afe::choose_length(delta(), D, 1.5, 1e-10, &t1);
        long long n2 = afe::choose_length(delta(), D, 3.0, 1e-10, &t2);
        double v1 = afe::central_sum(delta(), D, 1.5, n1, eps);
        double v2 = afe::central_sum(delta(), D, 3.0, n2, eps);
        CHECK(std::fabs(v1 - v2) <= 2e-9);
    }
}

TEST_CASE("functional equation residual")
{
    // s = k: same point on both sides up to independent truncations
    CHECK(functional_equation_residual(delta(), 5, 6.0) < 1e-9);
    CHECK(functional_equation_residual(delta(), 5, 6.25) < 1e-7);
    CHECK(functional_equation_residual(delta(), 5, 5.75) < 1e-7);
    CHECK(functional_equation_residual(delta(), 12, 6.3) < 1e-7);
    // negative control: flipped sign must blow up
    CHECK(functional_equation_residual(delta(), 5, 6.25, true) > 0.1);
    CHECK_THROWS_AS(functional_equation_residual(delta(), 5, 8.0), input_error);
}

TEST_CASE("gcd(D, N) > 1: conductor drop keeps the functional equation")
{
    CHECK(functional_equation_residual(f11(), -11, 1.25) < 1e-8);
    auto r = central_lvalue(f11(), -11, 1e-8);
    CHECK(r.abs_error_bound < 1e-7);
    CHECK(r.value >= -r.abs_error_bound);
}

TEST_CASE("insufficient coefficients raise precision_error")
{
    auto small = NewformData::from_qexpansion(eta_quotient(EtaQuotientSpec::parse("1^24"), 30));
    CHECK_THROWS_AS(central_lvalue(small, 24, 1e-9), precision_error);
}
