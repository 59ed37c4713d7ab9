#ifndef KZV_LOCALFACTORS_HPP
#define KZV_LOCALFACTORS_HPP

#include "kzv/arith.hpp"
#include "kzv/common.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace kzv {

/* Local representation data sufficient to evaluate the closed-form local
 * constants e(phi_v, psi) and e(phitilde_v, psi^D):
 *
 *   unramified    principal series with mu = | |^s, s = i * s_im
 *   complementary principal series with mu = | |^s chi_tau, 0 < |s_re| < 1/2
 *   special       sigma^tau, tau a unit class (tau_square tells which)
 *   weil_odd      the odd Weil piece attached to sigma^tau at tau D square
 *   arch          holomorphic discrete series, psi(x) = e^{2 pi i n x}
 */
enum class RepKind { unramified, complementary, special, weil_odd, arch };

struct LocalRepSpec {
    RepKind kind = RepKind::unramified;
    long long q = 3;        // odd residue field size (nonarch kinds)
    double s_im = 0.0;      // unramified: s = i s_im
    double s_re = 0.0;      // complementary: real s, |s| < 1/2
    bool tau_square = false;
    int arch_k = 1;         // arch: weight 2k
    int arch_n = 1;         // arch: additive character scale

    static LocalRepSpec unram(long long q, double s_im)
    {
        LocalRepSpec r;
        r.kind = RepKind::unramified;
        r.q = q;
        r.s_im = s_im;
        return r;
    }
    static LocalRepSpec compl_series(long long q, double s_re, bool tau_sq)
    {
        if (std::fabs(s_re) >= 0.5) throw input_error("complementary: need |s| < 1/2");
        LocalRepSpec r;
        r.kind = RepKind::complementary;
        r.q = q;
        r.s_re = s_re;
        r.tau_square = tau_sq;
        return r;
    }
    static LocalRepSpec special_rep(long long q, bool tau_sq)
    {
        LocalRepSpec r;
        r.kind = RepKind::special;
        r.q = q;
        r.tau_square = tau_sq;
        return r;
    }
    static LocalRepSpec weil(long long q, bool tau_sq)
    {
        LocalRepSpec r;
        r.kind = RepKind::weil_odd;
        r.q = q;
        r.tau_square = tau_sq;
        return r;
    }
    static LocalRepSpec arch_series(int k, int n)
    {
        LocalRepSpec r;
        r.kind = RepKind::arch;
        r.arch_k = k;
        r.arch_n = n;
        return r;
    }
};

/* Local data of the twist D: a unit (valuation 0) with chi_D(pi) = +-1, or
 * a uniformizer class (valuation 1).  arch_D carries the positive integer D
 * for the archimedean case. */
struct DClassLocal {
    bool unit = true;
    int chi_pi = 1; // chi_D(varpi), meaningful for unit D
    long long arch_D = 1;

    static DClassLocal unit_class(int chi) { return DClassLocal{true, chi, 1}; }
    static DClassLocal prime_class() { return DClassLocal{false, 0, 1}; }
    static DClassLocal arch(long long D) { return DClassLocal{true, 1, D}; }
};

namespace local_detail {

inline double sqr(double x) { return x * x; }

// |1 - q^{-2s-1}|^2 for s = i t: (1 - q^{-1} e^{-2 i t ln q}) etc.
inline double abs2_one_minus(double qpow, double angle)
{
    // |1 - qpow * e^{i angle}|^2
    return 1.0 - 2.0 * qpow * std::cos(angle) + qpow * qpow;
}

} // namespace local_detail

// log e(phi_v, psi); the archimedean value overflows doubles already at
// n = 3, so the quotient checks run in log space.
inline double log_e_phi(const LocalRepSpec& sp)
{
    using namespace local_detail;
    double q = static_cast<double>(sp.q);
    switch (sp.kind) {
        case RepKind::unramified: {
            double denom = abs2_one_minus(1.0 / q, -2.0 * sp.s_im * std::log(q));
            return std::log(1.0 + 1.0 / q) - std::log(denom);
        }
        case RepKind::complementary: {
            double a = 1.0 - std::pow(q, -2.0 * sp.s_re - 1.0);
            double b = 1.0 - std::pow(q, 2.0 * sp.s_re - 1.0);
            return std::log(1.0 + 1.0 / q) - std::log(a * b);
        }
        case RepKind::special:
        case RepKind::weil_odd:
            return -std::log(1.0 + 1.0 / q);
        case RepKind::arch: {
            double x = 4.0 * kPi * sp.arch_n;
            return x - 2.0 * sp.arch_k * std::log(x) + std::lgamma(2.0 * sp.arch_k);
        }
    }
    throw input_error("log_e_phi: unsupported kind");
}

inline double e_phi(const LocalRepSpec& sp) { return std::exp(log_e_phi(sp)); }

inline double log_e_phitilde(const LocalRepSpec& sp, const DClassLocal& d)
{
    using namespace local_detail;
    double q = static_cast<double>(sp.q);
    switch (sp.kind) {
        case RepKind::unramified: {
            if (d.unit) {
                // |D|^{-1} (1+q^{-1}) / |1 + q^{-1/2-s} chi_D(pi)|^2
                double mag = d.chi_pi / std::sqrt(q);
                double denom = abs2_one_minus(-mag, -sp.s_im * std::log(q));
                return std::log(1.0 + 1.0 / q) - std::log(denom);
            }
            double denom = abs2_one_minus(1.0 / q, -2.0 * sp.s_im * std::log(q));
            return std::log(q) + std::log(1.0 + 1.0 / q) - std::log(denom);
        }
        case RepKind::complementary: {
            // the symbol entering the formulas is chi_{D tau}(pi)
            if (d.unit) {
                double c = (d.chi_pi == 1) == sp.tau_square ? 1.0 : -1.0;
                double a = 1.0 + c * std::pow(q, -0.5 - sp.s_re);
                double b = 1.0 + c * std::pow(q, sp.s_re - 0.5);
                return std::log(1.0 + 1.0 / q) - std::log(a * b);
            }
            double a = 1.0 - std::pow(q, 2.0 * sp.s_re - 1.0);
            double b = 1.0 - std::pow(q, -1.0 - 2.0 * sp.s_re);
            return std::log(q) + std::log(1.0 + 1.0 / q) - std::log(a * b);
        }
        case RepKind::special: {
            if (d.unit) {
                // requires tau D nonsquare (the square case is the Weil kind)
                bool tauD_square = (d.chi_pi == 1) == sp.tau_square;
                if (tauD_square)
                    throw input_error("special: tau D square belongs to the weil_odd kind");
                return std::log(0.5);
            }
            return std::log(q) - std::log(1.0 + 1.0 / q);
        }
        case RepKind::weil_odd: {
            if (!d.unit) throw input_error("weil_odd: D must be a unit");
            bool tauD_square = (d.chi_pi == 1) == sp.tau_square;
            if (!tauD_square)
                throw input_error("weil_odd: requires tau D in the square class");
            return std::log((1.0 - 1.0 / q) / 2.0);
        }
        case RepKind::arch: {
            double x = 4.0 * kPi * sp.arch_n * d.arch_D;
            return std::log(2.0) + x - (0.5 + sp.arch_k) * std::log(x) +
                   std::lgamma(0.5 + sp.arch_k);
        }
    }
    throw input_error("log_e_phitilde: unsupported kind");
}

inline double e_phitilde(const LocalRepSpec& sp, const DClassLocal& d)
{
    return std::exp(log_e_phitilde(sp, d));
}

/* Independent local L-factor L(pi_v (x) chi_D, 1/2):
 * principal series with mu(pi) = q^{-s} c0 and unramified twist chi:
 * prod_{+-} (1 - c chi q^{-1/2 -+ s})^{-1}; 1 for ramified twist;
 * the special values per square class. */
inline double local_lfactor(const LocalRepSpec& sp, const DClassLocal& d)
{
    double q = static_cast<double>(sp.q);
    switch (sp.kind) {
        case RepKind::unramified: {
            if (!d.unit) return 1.0;
            // |1 - chi_D(pi) q^{-1/2-s}|^{-2} at s = i t
            double denom = local_detail::abs2_one_minus(d.chi_pi / std::sqrt(q),
                                                        -sp.s_im * std::log(q));
            return 1.0 / denom;
        }
        case RepKind::complementary: {
            if (!d.unit) return 1.0;
            double c = (d.chi_pi == 1) == sp.tau_square ? 1.0 : -1.0;
            double a = 1.0 - c * std::pow(q, -0.5 - sp.s_re);
            double b = 1.0 - c * std::pow(q, -0.5 + sp.s_re);
            return 1.0 / (a * b);
        }
        case RepKind::special: {
            if (!d.unit) return 1.0; // L(sigma^{tau D}, 1/2) = 1, prime D
            bool tauD_square = (d.chi_pi == 1) == sp.tau_square;
            return tauD_square ? 1.0 / (1.0 - 1.0 / q)  // proof of the Weil case
                               : 1.0 / (1.0 + 1.0 / q); // proof of the special case
        }
        case RepKind::weil_odd: {
            bool tauD_square = (d.chi_pi == 1) == sp.tau_square;
            if (!d.unit || !tauD_square) throw input_error("weil_odd L-factor: wrong class");
            return 1.0 / (1.0 - 1.0 / q);
        }
        case RepKind::arch:
            throw input_error("local_lfactor: archimedean factor not in the catalogue");
    }
    throw input_error("local_lfactor: unsupported kind");
}

// Proposition-specific multiple in e(phi)/e(phitilde) = m * |D|_v * L:
// 1 for principal/complementary and prime-class special, 2 for unit-class
// special, 2(1+q^{-1})^{-1} for the odd Weil case.
inline double quotient_prefactor(const LocalRepSpec& sp, const DClassLocal& d)
{
    double q = static_cast<double>(sp.q);
    switch (sp.kind) {
        case RepKind::unramified:
        case RepKind::complementary:
            return 1.0;
        case RepKind::special:
            return d.unit ? 2.0 : 1.0;
        case RepKind::weil_odd:
            return 2.0 / (1.0 + 1.0 / q);
        case RepKind::arch:
            throw input_error("quotient_prefactor: archimedean case handled separately");
    }
    throw input_error("quotient_prefactor: unsupported kind");
}

/* Residual of the catalogued quotient identity
 *   e(phi_v,psi) / e(phitilde_v,psi^D) = m |D|_v L(pi_v (x) chi_D, 1/2).
 * Nonarchimedean kinds compare the values directly; the archimedean case
 * compares in log space against
 *   (1/2) e^{4 pi n (1-D)} D^{1/2+k} n^{1/2-k} pi^{-k} (k-1)!. */
inline double quotient_check(const LocalRepSpec& sp, const DClassLocal& d)
{
    if (sp.kind == RepKind::arch) {
        double n = sp.arch_n, D = static_cast<double>(d.arch_D);
        int k = sp.arch_k;
        double log_lhs = log_e_phi(sp) - log_e_phitilde(sp, d);
        double log_rhs = -std::log(2.0) + 4.0 * kPi * n * (1.0 - D) +
                         (0.5 + k) * std::log(D) + (0.5 - k) * std::log(n) -
                         k * std::log(kPi) + std::lgamma(static_cast<double>(k));
        return std::fabs(log_lhs - log_rhs);
    }
    double lhs = std::exp(log_e_phi(sp) - log_e_phitilde(sp, d));
    double Dv = d.unit ? 1.0 : 1.0 / static_cast<double>(sp.q);
    double rhs = quotient_prefactor(sp, d) * Dv * local_lfactor(sp, d);
    return std::fabs(lhs - rhs);
}

// Gamma(2k) = pi^{-1/2} 2^{2k-1} Gamma(k) Gamma(k+1/2), relative residual.
inline double gamma_duplication_check(int k)
{
    if (k < 1 || k > 20) throw input_error("gamma_duplication_check: 1 <= k <= 20");
    double lhs = std::tgamma(2.0 * k);
    double rhs = std::pow(kPi, -0.5) * std::pow(2.0, 2 * k - 1) * std::tgamma(double(k)) *
                 std::tgamma(k + 0.5);
    return std::fabs(lhs - rhs) / lhs;
}

/* The unramified computation at the even place (q = 2, mu_2 = | |^{ir}):
 *   e(phi_2, psi)            = (3/2) |1 - 2^{-1-2ir}|^{-2}
 *   e(phitilde_2, psi^{|D|}) = (3/4) |1 + 2^{-1/2-ir}|^{-2}            D unit, 1 mod 4
 *                            = (3/4) |1 - 2^{-1-2ir}|^{-2} |D|_2^{-1}  D/4 = 2,3 mod 4
 * with the quotients 2 |D|_2 L(pi_2, 1/2) and 2 |D|_2 respectively. */
struct E2Values {
    double e_phi = 0.0;
    double e_phitilde = 0.0;
    double quotient_residual = 0.0;
};

inline E2Values e2_unramified(double r, bool unit_case, int v2_of_D = 2)
{
    using namespace local_detail;
    double l2 = std::log(2.0);
    double den_full = abs2_one_minus(0.5, -2.0 * r * l2); // |1 - 2^{-1-2ir}|^2
    E2Values out;
    out.e_phi = 1.5 / den_full;
    if (unit_case) {
        double den_half = abs2_one_minus(-std::pow(2.0, -0.5), -r * l2); // |1 + 2^{-1/2-ir}|^2
        out.e_phitilde = 0.75 / den_half;
        double L = 1.0 / abs2_one_minus(std::pow(2.0, -0.5), -r * l2); // |1-2^{-1/2-ir}|^{-2}
        double lhs = out.e_phi / out.e_phitilde;
        out.quotient_residual = std::fabs(lhs - 2.0 * L); // |D|_2 = 1
    } else {
        if (v2_of_D < 2) throw input_error("e2_unramified: D/4 case needs 4 | D");
        double D2inv = std::pow(2.0, v2_of_D); // |D|_2^{-1}
        out.e_phitilde = 0.75 / den_full * D2inv;
        double lhs = out.e_phi / out.e_phitilde;
        out.quotient_residual = std::fabs(lhs - 2.0 / D2inv); // 2 |D|_2
    }
    return out;
}

/* Whittaker values of the K0'-fixed vector in the special representation,
 * the four-case table: z = delta Delta^2,
 *   0                     |Delta|_v > 1
 *   2 |Delta|_v           |delta|=1, delta tau nonsquare
 *   0                     |delta|=1, delta tau square     (defining condition)
 *   (q^{-1}+1) |Delta|_v  |delta| = q^{-1}.
 * Exact rational output; Delta_e is the valuation of Delta (negative means
 * |Delta|_v > 1). */
inline Rat special_whittaker_table(int delta_valuation, bool delta_tau_square, int Delta_e,
                                   long long q)
{
    if (delta_valuation != 0 && delta_valuation != 1)
        throw input_error("special_whittaker_table: delta valuation must be 0 or 1");
    if (Delta_e < 0) return Rat(0);
    Rat absDelta(1, int_pow(Int(q), static_cast<unsigned>(Delta_e)));
    if (delta_valuation == 0) {
        if (delta_tau_square) return Rat(0);
        return Rat(2) * absDelta;
    }
    return (Rat(1, q) + 1) * absDelta;
}

} // namespace kzv

#endif
