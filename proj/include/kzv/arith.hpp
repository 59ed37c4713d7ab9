#ifndef KZV_ARITH_HPP
#define KZV_ARITH_HPP

#include "kzv/common.hpp"

#include <cstdlib>
#include <utility>
#include <vector>

namespace kzv {

// Kronecker symbol (a/n), the completely multiplicative extension of the
// Legendre symbol, with the usual supplementary conventions:
//   (a/2)  = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
//   (a/-1) = +1 for a >= 0, -1 for a < 0
//   (a/0)  = 1 iff a = +-1
inline int kronecker(long long a, long long n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v2 = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v2;
    }
    if (v2 & 1) {
        long long am8 = ((a % 8) + 8) % 8;
        result *= (am8 == 1 || am8 == 7) ? 1 : -1; // a odd here
    }
    // Jacobi symbol (a/n) for odd n > 0, by reciprocity.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

inline bool is_squarefree(long long n)
{
    n = std::llabs(n);
    if (n == 0) return false;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

// Fundamental discriminant test.  D = 1 counts as the trivial discriminant;
// it carries the trivial character and the untwisted L-value.
inline bool is_fundamental(long long D)
{
    if (D == 0) return false;
    long long m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree(D);
    if (m4 == 0) {
        long long m = D / 4;
        long long mm4 = ((m % 4) + 4) % 4;
        return (mm4 == 2 || mm4 == 3) && is_squarefree(m);
    }
    return false;
}

// n = squarefree_part * conductor^2, by trial factorization.
inline std::pair<long long, long long> squarefree_decompose(long long n)
{
    if (n < 1) throw input_error("squarefree_decompose: need n >= 1");
    long long sf = 1, f = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) f *= p;
        if (e & 1) sf *= p;
    }
    sf *= n; // leftover prime
    return {sf, f};
}

// 2-adic Hilbert symbol [a,b].  Write a = 2^alpha u, b = 2^beta v with u, v
// odd; then [a,b] = (-1)^{eps(u)eps(v) + alpha w(v) + beta w(u)} where
// eps(u) = (u-1)/2 and w(u) = (u^2-1)/8 mod 2.
inline int hilbert2(long long a, long long b)
{
    if (a == 0 || b == 0) throw input_error("hilbert2: arguments must be nonzero");
    int alpha = 0, beta = 0;
    while ((a & 1) == 0) {
        a /= 2;
        ++alpha;
    }
    while ((b & 1) == 0) {
        b /= 2;
        ++beta;
    }
    auto eps = [](long long u) { return (((u % 4) + 4) % 4 == 3) ? 1 : 0; };
    auto w = [](long long u) {
        long long m = ((u % 8) + 8) % 8;
        return (m == 3 || m == 5) ? 1 : 0;
    };
    int e = eps(a) * eps(b) + alpha * w(b) + beta * w(a);
    return (e & 1) ? -1 : 1;
}

inline int valuation(long long n, long long p)
{
    if (n == 0) throw input_error("valuation of 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline std::vector<long long> prime_factors(long long n)
{
    n = std::llabs(n);
    std::vector<long long> ps;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// Number of divisors, used for Deligne-type tail bounds.
inline long long divisor_count(long long n)
{
    long long d = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            d *= (e + 1);
        }
    }
    if (n > 1) d *= 2;
    return d;
}

inline long long gcd_ll(long long a, long long b)
{
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long long lcm_ll(long long a, long long b) { return a / gcd_ll(a, b) * b; }

inline Int int_pow(Int base, unsigned e)
{
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace kzv

#endif
