#ifndef KZV_KZVERIFY_HPP
#define KZV_KZVERIFY_HPP

#include "kzv/constructions.hpp"
#include "kzv/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace kzv {

// S(D) = { p | N : (D/p) = -w_p }.  Primes dividing D never enter: the
// symbol is 0 there, never -w_p.
inline std::set<long long> class_of(long long D, const NewformData& f)
{
    if (!is_fundamental(D)) throw input_error("class_of: D must be fundamental");
    std::set<long long> S;
    for (auto& [p, wp] : f.w)
        if (kronecker(D, p) == -wp) S.insert(p);
    return S;
}

inline int class_t(long long D, const NewformData& f)
{
    int t = 0;
    for (auto& [p, wp] : f.w)
        if (D % p == 0) ++t;
    return t;
}

// Sign-forced vanishing: (-1)^{s+k} != sgn(D) with s = |S(D)|.
inline bool predict_vanishing(long long D, const NewformData& f)
{
    int s = static_cast<int>(class_of(D, f).size());
    int lhs = ((s + f.k) % 2 == 0) ? 1 : -1;
    int sgn = (D > 0) ? 1 : -1;
    return lhs != sgn;
}

// (k-1)!/pi^k * 2^{nu(N)-t} * prod_{p in S} p/(p+1), kept as an exact
// rational together with the power of pi.
struct KzConstant {
    Rat rational;
    int pi_power = 0; // value = rational / pi^{pi_power}

    double value() const { return to_double(rational) / std::pow(kPi, pi_power); }
};

inline KzConstant kz_constant(const NewformData& f, const std::set<long long>& S, int t)
{
    for (long long p : S)
        if (f.level % p != 0) throw input_error("kz_constant: S must consist of primes dividing N");
    Int fact = 1;
    for (int i = 2; i <= f.k - 1; ++i) fact *= i;
    int nu = static_cast<int>(f.w.size());
    Rat r(fact);
    int twos = nu - t;
    if (twos >= 0)
        r *= int_pow(Int(2), static_cast<unsigned>(twos));
    else
        r /= int_pow(Int(2), static_cast<unsigned>(-twos));
    for (long long p : S) r *= Rat(p, p + 1);
    return KzConstant{r, f.k};
}

struct RatioResult {
    double value = 0.0;
    bool defined = false;
    std::string reason; // set when undefined
};

/* R(D) = |c(|D|)|^2 / ( L(f,D,k) |D|^{k-1/2} kz_constant(S(D), t(D)) ).
 * By the ratio formula this is <g_S,g_S>/<f,f> for every admissible D, so
 * constancy across D is the content of the identity.  Undefined when the
 * L-value is indistinguishable from zero. */
inline RatioResult kz_ratio(const NewformData& f, const QExpansion& g, long long D,
                            const LValueResult& L)
{
    RatioResult r;
    long long aD = std::llabs(D);
    Rat cD = g.c(aD);
    if (std::fabs(L.value) <= 10.0 * L.abs_error_bound) {
        r.reason = "L-value indistinguishable from zero";
        return r;
    }
    auto S = class_of(D, f);
    int t = class_t(D, f);
    double denom = L.value * std::pow(static_cast<double>(aD), f.k - 0.5) *
                   kz_constant(f, S, t).value();
    double csq = to_double(cD * cD);
    r.value = csq / denom;
    r.defined = true;
    return r;
}

inline RatioResult kz_ratio(const NewformData& f, const QExpansion& g, long long D,
                            double target_abs_err = 1e-9)
{
    return kz_ratio(f, g, D, central_lvalue(f, D, target_abs_err));
}

struct DiscriminantRecord {
    long long D = 0;
    std::set<long long> S;
    int t = 0;
    int s = 0;
    bool sign_ok = false;
    LValueResult lvalue;
    Rat coeff_sq;
    double ratio = 0.0;
    bool ratio_defined = false;
    std::string status;
};

struct ConstancyReport {
    std::vector<DiscriminantRecord> records;
    double ratio_mean = 0.0;
    double max_rel_deviation = 0.0;
    int defined_count = 0;
    std::vector<std::pair<long long, std::string>> skipped;
    bool kohnen_ok = true;
    bool vanishing_ok = true;
    bool class_cond_ok = true;
    std::string verdict; // PASS / FAIL / INCONCLUSIVE
    double tol = 0.0;
};

namespace detail {

inline void finish_constancy(ConstancyReport& rep, double tol)
{
    rep.tol = tol;
    double sum = 0.0;
    rep.defined_count = 0;
    for (auto& r : rep.records)
        if (r.ratio_defined) {
            sum += r.ratio;
            ++rep.defined_count;
        }
    if (rep.defined_count >= 1) rep.ratio_mean = sum / rep.defined_count;
    rep.max_rel_deviation = 0.0;
    for (auto& r : rep.records)
        if (r.ratio_defined && rep.ratio_mean != 0.0)
            rep.max_rel_deviation = std::max(
                rep.max_rel_deviation, std::fabs(r.ratio - rep.ratio_mean) /
                                           std::fabs(rep.ratio_mean));
    bool checks_ok = rep.kohnen_ok && rep.vanishing_ok && rep.class_cond_ok;
    if (rep.defined_count < 2)
        rep.verdict = checks_ok ? "INCONCLUSIVE" : "FAIL";
    else if (checks_ok && rep.max_rel_deviation <= tol)
        rep.verdict = "PASS";
    else
        rep.verdict = "FAIL";
}

} // namespace detail

/* Ratio constancy over an explicit list of discriminants, all expected in
 * one sign-compatible class family. */
inline ConstancyReport constancy_check(const NewformData& f, const QExpansion& g,
                                       const std::vector<long long>& Ds, double tol,
                                       double lvalue_target = 1e-9)
{
    ConstancyReport rep;
    for (long long D : Ds) {
        DiscriminantRecord rec;
        rec.D = D;
        rec.S = class_of(D, f);
        rec.s = static_cast<int>(rec.S.size());
        rec.t = class_t(D, f);
        rec.sign_ok = !predict_vanishing(D, f);
        rec.coeff_sq = g.c(std::llabs(D)) * g.c(std::llabs(D));
        if (!rec.sign_ok) {
            rec.status = "sign-mismatch";
            rep.skipped.emplace_back(D, rec.status);
            rep.records.push_back(std::move(rec));
            continue;
        }
        rec.lvalue = central_lvalue(f, D, lvalue_target);
        auto rr = kz_ratio(f, g, D, rec.lvalue);
        rec.ratio = rr.value;
        rec.ratio_defined = rr.defined;
        rec.status = rr.defined ? "ratio" : "skipped: " + rr.reason;
        if (!rr.defined) rep.skipped.emplace_back(D, rr.reason);
        rep.records.push_back(std::move(rec));
    }
    detail::finish_constancy(rep, tol);
    return rep;
}

// |R(D1) - R(D2)| / max(R): the two-discriminant residual, zero in exact
// arithmetic whenever both ratios are defined.
inline double two_discriminant_check(const NewformData& f, const QExpansion& g,
                                     long long D1, long long D2,
                                     double lvalue_target = 1e-9)
{
    if (class_of(D1, f) != class_of(D2, f))
        throw input_error("two_discriminant_check: discriminants in different classes");
    if (predict_vanishing(D1, f) || predict_vanishing(D2, f))
        throw input_error("two_discriminant_check: sign-forced vanishing in the pair");
    auto r1 = kz_ratio(f, g, D1, lvalue_target);
    auto r2 = kz_ratio(f, g, D2, lvalue_target);
    if (!r1.defined || !r2.defined)
        throw input_error("two_discriminant_check: undefined ratio in the pair");
    double m = std::max(std::fabs(r1.value), std::fabs(r2.value));
    if (m == 0.0) return 0.0;
    return std::fabs(r1.value - r2.value) / m;
}

// max over squarefree n <= n_max of |c(n)| n^{-(k/2 - 1/4)}; diagnostic
// scan for the coefficient growth conjecture (no pass/fail).
inline std::pair<double, long long> ramanujan_scan(const QExpansion& g, int k, long long n_max)
{
    double best = 0.0;
    long long arg = 0;
    double expo = k / 2.0 - 0.25;
    long long top = std::min<long long>(n_max, g.precision());
    for (long long n = 1; n <= top; ++n) {
        if (!is_squarefree(n)) continue;
        double v = std::fabs(to_double(g.c(n))) * std::pow(static_cast<double>(n), -expo);
        if (v > best) {
            best = v;
            arg = n;
        }
    }
    return {best, arg};
}

// Fundamental discriminants in [d_min, d_max], ordered by increasing |D|
// with positive before negative at equal |D|.
inline std::vector<long long> fundamental_range(long long d_min, long long d_max)
{
    std::vector<long long> out;
    long long top = std::max(std::llabs(d_min), std::llabs(d_max));
    for (long long a = 1; a <= top; ++a)
        for (long long D : {a, -a})
            if (D >= d_min && D <= d_max && is_fundamental(D)) out.push_back(D);
    return out;
}

/* Full verification sweep: iterates fundamental discriminants in range,
 * fills one record per D, and checks
 *   - the plus-space vanishing pattern of g (all indices up to precision),
 *   - coefficient vanishing off the declared class,
 *   - sign-predicted L-vanishing against the numeric value,
 *   - ratio constancy over the admissible records. */
inline ConstancyReport verify_report(const NewformData& f, const QExpansion& g,
                                     long long d_min, long long d_max, double tol,
                                     const std::set<long long>& declared_S = {},
                                     double lvalue_target = 1e-9)
{
    ConstancyReport rep;
    int s_g = static_cast<int>(declared_S.size());

    // Kohnen condition (and cusp condition c(0) = 0): parity k' = k + s
    int bad = ((f.k + s_g) % 2 == 0) ? 3 : 1;
    if (g.c(0) != 0) rep.kohnen_ok = false;
    for (long long n = 0; n <= g.precision(); ++n)
        if ((n % 4 == 2 || n % 4 == bad) && g.c(n) != 0) {
            rep.kohnen_ok = false;
            break;
        }

    for (long long D : fundamental_range(d_min, d_max)) {
        DiscriminantRecord rec;
        rec.D = D;
        rec.S = class_of(D, f);
        rec.s = static_cast<int>(rec.S.size());
        rec.t = class_t(D, f);
        rec.sign_ok = !predict_vanishing(D, f);
        long long aD = std::llabs(D);
        if (aD <= g.precision()) rec.coeff_sq = g.c(aD) * g.c(aD);

        bool in_class = (rec.S == declared_S);
        // theorem condition (3): for positive fundamental D, the coefficient
        // c(D) dies unless (-1)^{s+k} D lands back in the declared class
        if (D > 0 && aD <= g.precision()) {
            long long e = ((f.k + s_g) % 2 == 0) ? D : -D;
            bool carries = is_fundamental(e) && class_of(e, f) == declared_S;
            if (!carries && g.c(aD) != 0) {
                rec.status = "class-condition-violated";
                rep.class_cond_ok = false;
                rep.records.push_back(std::move(rec));
                continue;
            }
        }

        if (!in_class) {
            rec.status = "out-of-class";
            rep.records.push_back(std::move(rec));
            continue;
        }
        if (!rec.sign_ok) {
            rec.lvalue = central_lvalue(f, D, lvalue_target);
            bool zero_ok = std::fabs(rec.lvalue.value) <= 10.0 * rec.lvalue.abs_error_bound;
            rec.status = zero_ok ? "predicted-zero" : "predicted-zero-VIOLATED";
            if (!zero_ok) rep.vanishing_ok = false;
            rep.records.push_back(std::move(rec));
            continue;
        }
        if (aD > g.precision()) {
            rec.status = "skipped: coefficient beyond precision";
            rep.skipped.emplace_back(D, "coefficient beyond precision");
            rep.records.push_back(std::move(rec));
            continue;
        }
        rec.lvalue = central_lvalue(f, D, lvalue_target);
        auto rr = kz_ratio(f, g, D, rec.lvalue);
        if (rr.defined && g.c(aD) == 0) {
            // c vanishes while L does not: Waldspurger-vanishing anomaly
            rec.ratio = 0.0;
            rec.ratio_defined = true;
            rec.status = "waldspurger-anomaly";
            rep.records.push_back(std::move(rec));
            continue;
        }
        rec.ratio = rr.value;
        rec.ratio_defined = rr.defined;
        rec.status = rr.defined ? "ratio" : "skipped: " + rr.reason;
        if (!rr.defined) rep.skipped.emplace_back(D, rr.reason);
        rep.records.push_back(std::move(rec));
    }
    detail::finish_constancy(rep, tol);
    return rep;
}

inline std::string set_to_string(const std::set<long long>& S)
{
    std::string s = "{";
    bool first = true;
    for (long long p : S) {
        if (!first) s += ",";
        s += std::to_string(p);
        first = false;
    }
    return s + "}";
}

// Machine-readable report: one record per line plus a summary line.
inline std::string report_machine(const ConstancyReport& rep)
{
    std::ostringstream os;
    for (const auto& r : rep.records) {
        os << "D=" << r.D << " S=" << set_to_string(r.S) << " t=" << r.t
           << " sign_ok=" << (r.sign_ok ? 1 : 0) << " L=" << fmt_g(r.lvalue.value)
           << " err=" << fmt_g(r.lvalue.abs_error_bound)
           << " csq=" << rat_to_string(r.coeff_sq)
           << " R=" << (r.ratio_defined ? fmt_g(r.ratio) : "undefined")
           << " status=" << r.status << "\n";
    }
    os << "summary defined=" << rep.defined_count << " mean=" << fmt_g(rep.ratio_mean)
       << " max_rel_dev=" << fmt_g(rep.max_rel_deviation)
       << " kohnen=" << (rep.kohnen_ok ? "OK" : "FAIL")
       << " class_cond=" << (rep.class_cond_ok ? "OK" : "FAIL")
       << " vanishing=" << (rep.vanishing_ok ? "OK" : "FAIL") << " verdict=" << rep.verdict
       << "\n";
    return os.str();
}

// Human-readable table.
inline std::string report_text(const ConstancyReport& rep)
{
    std::ostringstream os;
    os << "   D    S      t  sign  L-value                 |c|^2        R\n";
    for (const auto& r : rep.records) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%4lld  %-6s %2d  %-4s  %-22s  %-11s  %s  [%s]\n",
                      static_cast<long long>(r.D), set_to_string(r.S).c_str(), r.t,
                      r.sign_ok ? "ok" : "flip", fmt_g(r.lvalue.value).c_str(),
                      rat_to_string(r.coeff_sq).c_str(),
                      r.ratio_defined ? fmt_g(r.ratio).c_str() : "-", r.status.c_str());
        os << buf;
    }
    os << "mean R = " << fmt_g(rep.ratio_mean)
       << ", max rel deviation = " << fmt_g(rep.max_rel_deviation) << " (tol "
       << fmt_g(rep.tol) << ")\n";
    os << "kohnen=" << (rep.kohnen_ok ? "OK" : "FAIL")
       << " class_cond=" << (rep.class_cond_ok ? "OK" : "FAIL")
       << " vanishing=" << (rep.vanishing_ok ? "OK" : "FAIL") << "\n";
    os << "verdict: " << rep.verdict << "\n";
    return os.str();
}

} // namespace kzv

#endif
