#ifndef KZV_PETERSSON_HPP
#define KZV_PETERSSON_HPP

#include "kzv/qexpansion.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace kzv {

namespace quad {

// Adaptive Simpson with absolute tolerance.
inline double simpson_rec(const std::function<double(double)>& fn, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = fn(lm), frm = fn(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(fn, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           simpson_rec(fn, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                               double tol, int depth = 18)
{
    if (a >= b) return 0.0;
    double fa = fn(a), fb = fn(b), m = 0.5 * (a + b), fm = fn(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(fn, a, b, fa, fm, fb, whole, tol, depth);
}

} // namespace quad

namespace detail {

// Evaluate the truncated expansion at z = x + iy by Horner in q = e^{2 pi i z}.
struct SeriesEvaluator {
    std::vector<double> c;
    explicit SeriesEvaluator(const QExpansion& f)
    {
        c.reserve(f.coeff.size());
        for (const Rat& r : f.coeff) c.push_back(to_double(r));
    }
    std::complex<double> operator()(double x, double y) const
    {
        std::complex<double> q = std::exp(std::complex<double>(-2.0 * kPi * y, 2.0 * kPi * x));
        std::complex<double> acc(0.0, 0.0);
        for (size_t n = c.size(); n-- > 0;) acc = acc * q + c[n];
        return acc;
    }
};

} // namespace detail

/* Index-normalized Petersson norm
 *   <f,f> = [Gamma(1):Gamma]^{-1}  int_{Gamma \ H} |f(z)|^2 y^{wt-2} dx dy
 * by adaptive 2D quadrature over an explicit fundamental domain.
 *
 * level 1: the standard domain |x| <= 1/2, |z| >= 1.
 * level 4: the strip domain |x| <= 1/2 above the isometric circles
 *          |z +- 1/4| = 1/4, truncated at a floor y_min tied to the series
 *          precision.  The clipped cusp neighborhoods at 0 and +-1/2
 *          contribute O(exp(-c/y_min)) for a cusp form and are folded into
 *          the error estimate.
 */
inline double petersson_norm_numeric(const QExpansion& f, int group_level, double tol,
                                     double* err_estimate = nullptr)
{
    if (group_level != 1 && group_level != 4)
        throw input_error("petersson_norm_numeric: only levels 1 and 4 are supported");
    if (f.coeff.empty()) throw input_error("petersson_norm_numeric: empty expansion");
    if (f.c(0) != 0)
        throw input_error("petersson_norm_numeric: not a cusp form (c(0) != 0)");
    if (f.is_zero()) {
        if (err_estimate) *err_estimate = 0.0;
        return 0.0;
    }
    if (tol <= 0) throw input_error("petersson_norm_numeric: tolerance must be positive");

    detail::SeriesEvaluator ev(f);
    double w = to_double(f.weight);
    int prec = f.precision();

    auto integrand = [&](double x, double y) {
        std::complex<double> v = ev(x, y);
        return std::norm(v) * std::pow(y, w - 2.0);
    };

    double index = (group_level == 1) ? 1.0 : 6.0;
    double y_min = 0.0;
    std::function<double(double)> y_low;
    if (group_level == 1) {
        y_low = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
        y_min = std::sqrt(3.0) / 2.0;
    } else {
        // keep the truncated q-series honest: 2 pi y_min prec >= 30
        y_min = std::max(0.015, 30.0 / (2.0 * kPi * prec));
        y_low = [y_min](double x) {
            double ax = std::fabs(x);
            double circ2 = 1.0 / 16.0 - (ax - 0.25) * (ax - 0.25);
            double circ = circ2 > 0.0 ? std::sqrt(circ2) : 0.0;
            return std::max(y_min, circ);
        };
    }

    // beyond y_top the integrand is dead: |f|^2 ~ e^{-4 pi y}
    double y_top = y_min + 5.0;
    double run_tol = tol / 4.0;

    auto column = [&](double x) {
        double a = y_low(x);
        return quad::adaptive_simpson([&](double y) { return integrand(x, y); }, a, y_top,
                                      run_tol * 0.2);
    };
    // integrand is even in x for real coefficients
    double I = 2.0 * quad::adaptive_simpson(column, 0.0, 0.5, run_tol);

    double est = run_tol;
    if (group_level == 4) est += I * std::exp(-kPi / (2.0 * y_min)) + 1e-18;
    if (err_estimate) *err_estimate = est;
    return I / index;
}

} // namespace kzv

#endif
