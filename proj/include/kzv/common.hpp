#ifndef KZV_COMMON_HPP
#define KZV_COMMON_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kzv {

// Exact integer / rational coefficient types. Everything that feeds the
// linear algebra (plus-space solver, Shimura proportionality) stays exact;
// doubles only appear in the analytic layer.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Bad or inconsistent input (malformed files, rejected specs).  CLI exit 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Not enough coefficients / precision for a requested computation.  CLI exit 3.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double to_double(const Int& x) { return x.convert_to<double>(); }
inline double to_double(const Rat& x) { return x.convert_to<double>(); }

constexpr double kPi = std::numbers::pi;

// Fixed 15-significant-digit formatting; reports must be byte-reproducible.
inline std::string fmt_g(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::string(buf);
}

inline std::string rat_to_string(const Rat& r)
{
    std::string s = numerator(r).convert_to<std::string>();
    if (denominator(r) != 1)
        s += "/" + denominator(r).convert_to<std::string>();
    return s;
}

} // namespace kzv

#endif
