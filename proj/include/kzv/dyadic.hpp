#ifndef KZV_DYADIC_HPP
#define KZV_DYADIC_HPP

#include "kzv/common.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>

namespace kzv {

/* Exact element of Q(zeta_64), coefficients over the power basis
 * zeta^0..zeta^31 with zeta^32 = -1.  Large enough for every root of unity
 * the 2-adic Gauss sums on the test grids produce (|t|_2 <= 64), and it
 * contains i and sqrt(2). */
class Cyclo {
public:
    static constexpr int Deg = 32; // [Q(zeta_64):Q]

    Cyclo() = default;
    explicit Cyclo(const Rat& r) { c_[0] = r; }
    explicit Cyclo(long long n) { c_[0] = Rat(n); }

    // zeta_64^k
    static Cyclo root64(long long k)
    {
        Cyclo z;
        k %= 64;
        if (k < 0) k += 64;
        if (k < Deg)
            z.c_[static_cast<size_t>(k)] = 1;
        else
            z.c_[static_cast<size_t>(k - Deg)] = -1;
        return z;
    }

    // e^{2 pi i num/den} for den | 64
    static Cyclo unit_root(long long num, long long den)
    {
        if (den <= 0 || 64 % den != 0) throw input_error("Cyclo: root order must divide 64");
        return root64(num * (64 / den));
    }

    static Cyclo i() { return root64(16); }
    static Cyclo sqrt2() { return root64(8) + root64(-8); }

    Cyclo operator+(const Cyclo& o) const
    {
        Cyclo r;
        for (int j = 0; j < Deg; ++j) r.c_[j] = c_[j] + o.c_[j];
        return r;
    }
    Cyclo operator-(const Cyclo& o) const
    {
        Cyclo r;
        for (int j = 0; j < Deg; ++j) r.c_[j] = c_[j] - o.c_[j];
        return r;
    }
    Cyclo operator-() const
    {
        Cyclo r;
        for (int j = 0; j < Deg; ++j) r.c_[j] = -c_[j];
        return r;
    }
    Cyclo operator*(const Cyclo& o) const
    {
        Cyclo r;
        for (int a = 0; a < Deg; ++a) {
            if (c_[a] == 0) continue;
            for (int b = 0; b < Deg; ++b) {
                if (o.c_[b] == 0) continue;
                int k = a + b;
                if (k < Deg)
                    r.c_[k] += c_[a] * o.c_[b];
                else
                    r.c_[k - Deg] -= c_[a] * o.c_[b];
            }
        }
        return r;
    }
    Cyclo operator*(const Rat& s) const
    {
        Cyclo r;
        for (int j = 0; j < Deg; ++j) r.c_[j] = c_[j] * s;
        return r;
    }
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }

    bool operator==(const Cyclo& o) const { return c_ == o.c_; }
    bool is_zero() const
    {
        for (const Rat& x : c_)
            if (x != 0) return false;
        return true;
    }

    std::complex<double> eval() const
    {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < Deg; ++j) {
            if (c_[j] == 0) continue;
            double t = 2.0 * kPi * j / 64.0;
            acc += to_double(c_[j]) * std::complex<double>(std::cos(t), std::sin(t));
        }
        return acc;
    }

    std::string to_string() const
    {
        std::string s;
        for (int j = 0; j < Deg; ++j) {
            if (c_[j] == 0) continue;
            if (!s.empty()) s += " + ";
            s += rat_to_string(c_[j]) + "*z64^" + std::to_string(j);
        }
        return s.empty() ? "0" : s;
    }

private:
    std::array<Rat, Deg> c_{};
};

/* Laurent polynomial in mu = mu(2), the unramified character value at 2,
 * with Cyclo coefficients.  Keeps Whittaker values exact in the ring
 * Z[i, sqrt2, mu, 1/2]. */
class MuPoly {
public:
    MuPoly() = default;
    explicit MuPoly(const Cyclo& c)
    {
        if (!c.is_zero()) t_[0] = c;
    }
    static MuPoly mono(int e, const Cyclo& c)
    {
        MuPoly p;
        if (!c.is_zero()) p.t_[e] = c;
        return p;
    }

    MuPoly operator+(const MuPoly& o) const
    {
        MuPoly r = *this;
        for (auto& [e, c] : o.t_) {
            auto it = r.t_.find(e);
            if (it == r.t_.end())
                r.t_[e] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
        return r;
    }
    MuPoly operator-(const MuPoly& o) const
    {
        MuPoly r = *this;
        for (auto& [e, c] : o.t_) {
            auto it = r.t_.find(e);
            if (it == r.t_.end())
                r.t_[e] = -c;
            else {
                it->second -= c;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
        return r;
    }
    MuPoly operator*(const Cyclo& s) const
    {
        MuPoly r;
        for (auto& [e, c] : t_) {
            Cyclo p = c * s;
            if (!p.is_zero()) r.t_[e] = p;
        }
        return r;
    }
    MuPoly& operator+=(const MuPoly& o) { return *this = *this + o; }

    bool operator==(const MuPoly& o) const { return t_ == o.t_; }
    bool is_zero() const { return t_.empty(); }

    std::complex<double> eval(std::complex<double> mu) const
    {
        std::complex<double> acc(0.0, 0.0);
        for (auto& [e, c] : t_) acc += std::pow(mu, e) * c.eval();
        return acc;
    }

    std::string to_string() const
    {
        std::string s;
        for (auto& [e, c] : t_) {
            if (!s.empty()) s += "  +  ";
            s += "mu^" + std::to_string(e) + "*(" + c.to_string() + ")";
        }
        return s.empty() ? "0" : s;
    }

private:
    std::map<int, Cyclo> t_;
};

inline bool operator==(const MuPoly& a, const Cyclo& c) { return a == MuPoly(c); }

// The four quadratic character classes of Q_2^* restricted to units.
enum class DyChar { trivial, chi_m1, chi_2, chi_m2 };

inline int dychar_eval(DyChar nu, long long u)
{
    if (u % 2 == 0) throw input_error("dychar_eval: argument must be a 2-adic unit");
    long long m8 = ((u % 8) + 8) % 8;
    switch (nu) {
        case DyChar::trivial: return 1;
        case DyChar::chi_m1: return (m8 == 1 || m8 == 5) ? 1 : -1;
        case DyChar::chi_2: return (m8 == 1 || m8 == 7) ? 1 : -1;
        case DyChar::chi_m2: return (m8 == 1 || m8 == 3) ? 1 : -1;
    }
    throw input_error("dychar_eval: bad character");
}

inline int dychar_conductor(DyChar nu)
{
    switch (nu) {
        case DyChar::trivial: return 0;
        case DyChar::chi_m1: return 2;
        case DyChar::chi_2:
        case DyChar::chi_m2: return 3;
    }
    throw input_error("dychar_conductor: bad character");
}

inline DyChar dychar_mul(DyChar a, DyChar b)
{
    auto bits = [](DyChar x) -> int {
        switch (x) {
            case DyChar::trivial: return 0;
            case DyChar::chi_m1: return 1;
            case DyChar::chi_2: return 2;
            case DyChar::chi_m2: return 3;
        }
        return 0;
    };
    int r = bits(a) ^ bits(b);
    switch (r) {
        case 0: return DyChar::trivial;
        case 1: return DyChar::chi_m1;
        case 2: return DyChar::chi_2;
        default: return DyChar::chi_m2;
    }
}

// Normalized Weil constant at a 2-adic unit:
// gamma~(x) = (1 - i + (1 + i) chi_{-1}(x)) / 2, values 1 and -i.
inline Cyclo weil_gamma_2(long long x)
{
    if (x % 2 == 0) throw input_error("weil_gamma_2: argument must be odd");
    Cyclo one(1), I = Cyclo::i();
    Cyclo chi(static_cast<long long>(dychar_eval(DyChar::chi_m1, x)));
    return (one - I + (one + I) * chi) * Rat(1, 2);
}

/* Gauss sum eta(nu, t) = avg over units u of nu(u) e^{-2 pi i t u}, with
 * t = 2^{tlog} tunit.  Realized as the exact finite average over units mod
 * 2^m, m = max(conductor, -tlog) + 1 + m_extra: every integrand here is
 * locally constant at that depth, so the sum is exact (stability under
 * m_extra += 2 is a test invariant). */
inline Cyclo gauss_sum_2(DyChar nu, int tlog, long long tunit = 1, int m_extra = 0)
{
    if (tunit % 2 == 0) throw input_error("gauss_sum_2: tunit must be odd");
    if (tlog < -6) throw input_error("gauss_sum_2: |t|_2 beyond the supported 2^6 grid");
    int m = std::max(3, std::max(dychar_conductor(nu), -tlog) + 1) + m_extra;
    long long M = 1LL << m;
    Cyclo acc;
    long long count = 0;
    for (long long u = 1; u < M; u += 2) {
        ++count;
        Cyclo term(static_cast<long long>(dychar_eval(nu, u)));
        if (tlog < 0) {
            long long L = 1LL << (-tlog);
            long long a = ((tunit % L) * (u % L)) % L;
            a = ((a % L) + L) % L;
            term = term * Cyclo::unit_root(-a, L);
        }
        acc += term;
    }
    return acc * Rat(1, count);
}

// Closed-form eta: the quoted values eta(chi_{-1}, 2^{-2}) = -i,
// eta(chi_2, 2^{-3}) = 1/sqrt2, eta(chi_{-2}, 2^{-3}) = -i/sqrt2, the
// unramified values 1 / -1 / 0, the conductor-vanishing rule, and the unit
// shift eta(nu, t t') = eta(nu, t) nu(t').
inline Cyclo gauss_sum_2_closed(DyChar nu, int tlog, long long tunit = 1)
{
    if (tunit % 2 == 0) throw input_error("gauss_sum_2_closed: tunit must be odd");
    int cond = dychar_conductor(nu);
    if (cond == 0) {
        if (tlog >= 0) return Cyclo(1);
        if (tlog == -1) return Cyclo(-1);
        return Cyclo();
    }
    if (tlog != -cond) return Cyclo();
    Cyclo base;
    switch (nu) {
        case DyChar::chi_m1: base = -Cyclo::i(); break;
        case DyChar::chi_2: base = Cyclo::sqrt2() * Rat(1, 2); break;
        case DyChar::chi_m2: base = (-Cyclo::i()) * Cyclo::sqrt2() * Rat(1, 2); break;
        default: return Cyclo();
    }
    return base * Cyclo(static_cast<long long>(dychar_eval(nu, tunit)));
}

/* 2-adic argument z = delta * (2^{scale_log})^2 with delta one of the eight
 * square classes {+-1, +-2, +-5, +-10}; scale_log may be negative
 * (|z|_2 > 1). */
struct Z2Arg {
    long long delta = 1;
    int scale_log = 0;

    int valuation() const
    {
        long long d = delta < 0 ? -delta : delta;
        int v = 0;
        while (d % 2 == 0) {
            d /= 2;
            ++v;
        }
        return v + 2 * scale_log;
    }
    long long odd_part() const
    {
        long long d = delta;
        while (d % 2 == 0) d /= 2;
        return d;
    }
};

namespace dyadic_detail {

// One term T(z, i) of the defining sum for L^z(F[2,2^2]):
//   T = (1/2) mu(2^i) [ (1-i)/2 eta(nu1, -2^{-i} z) + (1+i)/2 eta(nu0, -2^{-i} z) ]
// where nu1 = chi_{-1}^{k'+1} (* chi_2 for odd i), nu0 = chi_{-1}^{k'} (same).
// The overall 1/2 normalization is pinned by the displayed value table; see
// the row tests.
template <typename EtaFn>
MuPoly T_term(const Z2Arg& z, int i, int kparity, EtaFn&& eta)
{
    int vz = z.valuation();
    long long uz = z.odd_part();
    int tlog = vz - i;
    long long tunit = -uz;
    DyChar nu1 = (kparity % 2 == 0) ? DyChar::chi_m1 : DyChar::trivial;
    DyChar nu0 = (kparity % 2 == 0) ? DyChar::trivial : DyChar::chi_m1;
    if (i % 2 == 1) {
        nu1 = dychar_mul(nu1, DyChar::chi_2);
        nu0 = dychar_mul(nu0, DyChar::chi_2);
    }
    Cyclo one(1), I = Cyclo::i();
    Cyclo bracket = (one - I) * Rat(1, 2) * eta(nu1, tlog, tunit) +
                    (one + I) * Rat(1, 2) * eta(nu0, tlog, tunit);
    return MuPoly::mono(i, bracket * Rat(1, 2));
}

template <typename EtaFn>
MuPoly F22_sum(const Z2Arg& z, int kparity, EtaFn&& eta)
{
    MuPoly acc;
    int imax = std::max(2, z.valuation() + 3) + 2; // +2: margin, verified zero
    for (int i = 2; i <= imax; ++i) acc += T_term(z, i, kparity, eta);
    return acc;
}

} // namespace dyadic_detail

// L_2^z(F[2,1]) = char(Z_2)(z).
inline MuPoly whittaker_F21(const Z2Arg& z)
{
    return z.valuation() >= 0 ? MuPoly(Cyclo(1)) : MuPoly();
}

// Closed-form L_2^z(F[2,2^2]), assembled from the quoted Gauss-sum table
// plus the conductor-vanishing rule.
inline MuPoly whittaker_F22(const Z2Arg& z, int kparity)
{
    return dyadic_detail::F22_sum(z, kparity, [](DyChar nu, int tlog, long long tunit) {
        return gauss_sum_2_closed(nu, tlog, tunit);
    });
}

// Independent brute force: the same defining sum with every Gauss sum
// evaluated as an explicit finite unit average.
inline MuPoly whittaker_F22_series(const Z2Arg& z, int kparity, int m_extra = 0)
{
    return dyadic_detail::F22_sum(z, kparity, [&](DyChar nu, int tlog, long long tunit) {
        return gauss_sum_2(nu, tlog, tunit, m_extra);
    });
}

// omega = (1 + (-1)^{k'} i)/4, the recurring constant of the value table.
inline Cyclo kohnen_omega(int kparity)
{
    Cyclo I = Cyclo::i();
    return (Cyclo(1) + (kparity % 2 == 0 ? I : -I)) * Rat(1, 4);
}

// The distinguished 2-adic vector: mu(2^2) omega F[2,1] + F[2,2^2],
// evaluated under L_2^z.  Vanishes exactly when (-1)^{k'} z = 2, 3 mod 4
// (and for |z|_2 > 1), nowhere else.
inline MuPoly kohnen_vector_value(const Z2Arg& z, int kparity)
{
    MuPoly acc = whittaker_F22(z, kparity);
    if (!whittaker_F21(z).is_zero()) acc += MuPoly::mono(2, kohnen_omega(kparity));
    return acc;
}

} // namespace kzv

#endif
