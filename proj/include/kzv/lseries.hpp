#ifndef KZV_LSERIES_HPP
#define KZV_LSERIES_HPP

#include "kzv/newform.hpp"

#include <cmath>
#include <vector>

namespace kzv {

/* Regularized upper incomplete gamma Q(s,y) = Gamma(s,y)/Gamma(s).
 * Series for y < s+1, Lentz continued fraction otherwise. */
inline double gamma_q(double s, double y)
{
    if (y <= 0.0) return 1.0;
    if (y < s + 1.0) {
        double term = 1.0 / s, sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= y / (s + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
        }
        double p = sum * std::exp(-y + s * std::log(y) - std::lgamma(s));
        return 1.0 - p;
    }
    const double tiny = 1e-300;
    double b = y + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-17) break;
    }
    return std::exp(-y + s * std::log(y) - std::lgamma(s)) * h;
}

// Q(k,y) for integer k, the elementary closed form e^{-y} sum y^j/j!.
inline double gamma_q_int(int k, double y)
{
    if (y <= 0.0) return 1.0;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < k; ++j) {
        term *= y / j;
        sum += term;
    }
    return std::exp(-y) * sum;
}

struct LValueResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
    long long terms_used = 0;
};

namespace afe {

// Twisted coefficient b(n) = a(n) (D/n) as a double.
inline double bcoeff(const NewformData& f, long long D, long long n)
{
    int ch = kronecker(D, n);
    if (ch == 0) return 0.0;
    double an = to_double(f.an(n));
    return ch > 0 ? an : -an;
}

/* sqrt(conductor)/(2 pi) for the completed twisted L-function.  The
 * conductor is N D^2 away from the level; at a prime p | gcd(N, D) the
 * special component twisted by the ramified quadratic character has
 * conductor exponent 2, not 3, so one factor of p drops out.  With the
 * naive N D^2 the functional equation visibly fails at such D. */
inline double completed_Q(const NewformData& f, long long D)
{
    long long aD = std::llabs(D);
    double cond = static_cast<double>(f.level) * aD * aD / gcd_ll(f.level, aD);
    return std::sqrt(cond) / (2.0 * kPi);
}

/* Smoothed approximate functional equation for the completed function
 * Lambda(s) = Q^s Gamma(s) L(f,D,s), Q = sqrt(N)|D|/(2 pi), with
 * Lambda(s) = eps Lambda(2k-s):
 *
 *   Lambda(s) = sum_n b(n) [ (Q/n)^s Gamma(s, nA/Q)
 *                          + eps (Q/n)^{2k-s} Gamma(2k-s, n/(AQ)) ].
 *
 * The split point A is a free smoothing parameter; exact independence of A
 * is what the dual-length consistency checks exploit. */
inline double lambda_hat(const NewformData& f, long long D, double s, double A,
                         long long nmax, int eps)
{
    double Q = completed_Q(f, D);
    double k2 = 2.0 * f.k;
    double sum = 0.0;
    for (long long n = 1; n <= nmax; ++n) {
        double b = bcoeff(f, D, n);
        if (b == 0.0) continue;
        double t1 = std::exp(s * std::log(Q / n) + std::lgamma(s)) * gamma_q(s, n * A / Q);
        double t2 = std::exp((k2 - s) * std::log(Q / n) + std::lgamma(k2 - s)) *
                    gamma_q(k2 - s, n / (A * Q));
        sum += b * (t1 + eps * t2);
    }
    return sum;
}

// Central value via the integer-order closed form,
//   L(k) = sum_n b(n) n^{-k} [ Q_k(nA/Q) + eps Q_k(n/(AQ)) ].
inline double central_sum(const NewformData& f, long long D, double A, long long nmax,
                          int eps, double* abs_accum = nullptr)
{
    double Q = completed_Q(f, D);
    int k = f.k;
    double sum = 0.0, acc = 0.0;
    for (long long n = 1; n <= nmax; ++n) {
        double b = bcoeff(f, D, n);
        if (b == 0.0) continue;
        double t = std::pow(static_cast<double>(n), -k) *
                   (gamma_q_int(k, n * A / Q) + eps * gamma_q_int(k, n / (A * Q)));
        sum += b * t;
        acc += std::fabs(b * t);
    }
    if (abs_accum) *abs_accum = acc;
    return sum;
}

// Bound on |b(n)| n^{-k} [Q_k(nA/Q) + Q_k(n/(AQ))] from the Deligne bound
// |a(n)| <= d(n) n^{k-1/2}.
inline double term_bound(const NewformData& f, long long D, double A, long long n)
{
    double Q = completed_Q(f, D);
    return divisor_count(n) * std::pow(static_cast<double>(n), -0.5) *
           (gamma_q_int(f.k, n * A / Q) + gamma_q_int(f.k, n / (A * Q)));
}

/* Number of terms needed to push the certified tail below `target` with
 * smoothing length A, plus the resulting tail estimate.  Throws
 * precision_error when the coefficient supply runs out. */
inline long long choose_length(const NewformData& f, long long D, double A, double target,
                               double* tail_out)
{
    long long n = 1;
    double tb = term_bound(f, D, A, n);
    for (;; ++n) {
        if (n > f.max_index())
            throw precision_error("central_lvalue: newform has too few coefficients for |D|=" +
                                  std::to_string(std::llabs(D)) +
                                  " at the requested accuracy (have " +
                                  std::to_string(f.max_index()) + ")");
        tb = term_bound(f, D, A, n);
        if (tb < target / 100.0 && n > 8) {
            // geometric domination of the remaining tail
            double ratio = term_bound(f, D, A, n + 1) / std::max(tb, 1e-300);
            if (ratio < 0.95) {
                double tail = tb * ratio / (1.0 - ratio) + tb;
                if (tail < target / 2.0) {
                    if (tail_out) *tail_out = tail;
                    return n;
                }
            }
        }
    }
}

} // namespace afe

/* Central twisted value L(f,D,k) = sum a(n) (D/n) n^{-k}, analytically
 * continued through the completed functional equation.  Two smoothing
 * lengths (A and 2A) are evaluated; their disagreement enters the error
 * bound together with the certified truncation tail. */
inline LValueResult central_lvalue(const NewformData& f, long long D,
                                   double target_abs_err = 1e-9)
{
    if (!is_fundamental(D)) throw input_error("central_lvalue: D must be fundamental");
    int eps = root_number(f, D);
    const double A1 = 2.0, A2 = 4.0;
    double tail1 = 0.0, tail2 = 0.0;
    long long n1 = afe::choose_length(f, D, A1, target_abs_err, &tail1);
    long long n2 = afe::choose_length(f, D, A2, target_abs_err, &tail2);
    double acc = 0.0;
    double v1 = afe::central_sum(f, D, A1, n1, eps, &acc);
    double v2 = afe::central_sum(f, D, A2, n2, eps);
    LValueResult r;
    r.value = v1;
    r.abs_error_bound = tail1 + tail2 + std::fabs(v1 - v2) + 1e-14 * acc;
    r.terms_used = n1;
    return r;
}

/* |Lambda(s) - eps Lambda(2k-s)| with the two sides evaluated through
 * independent smoothing lengths and truncations; a diagnostic for
 * coefficient or sign errors.  `flip_eps` deliberately corrupts the root
 * number (negative control). */
inline double functional_equation_residual(const NewformData& f, long long D, double s,
                                           bool flip_eps = false)
{
    if (!is_fundamental(D)) throw input_error("functional_equation_residual: D fundamental");
    if (s <= f.k - 1 || s >= f.k + 1)
        throw input_error("functional_equation_residual: s must lie in (k-1, k+1)");
    int eps = root_number(f, D) * (flip_eps ? -1 : 1);
    double tail = 0.0;
    long long nA = afe::choose_length(f, D, 1.7, 1e-10, &tail);
    long long nB = afe::choose_length(f, D, 1.0 / 1.3, 1e-10, &tail);
    double lhs = afe::lambda_hat(f, D, s, 1.7, nA, eps);
    double rhs = afe::lambda_hat(f, D, 2.0 * f.k - s, 1.3, nB, eps);
    return std::fabs(lhs - eps * rhs);
}

} // namespace kzv

#endif
