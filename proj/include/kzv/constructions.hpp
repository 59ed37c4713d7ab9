#ifndef KZV_CONSTRUCTIONS_HPP
#define KZV_CONSTRUCTIONS_HPP

#include "kzv/qexpansion.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kzv {

namespace series {

// Dense truncated integer series, index = q-power.  The constructors work
// over Int and convert to rational QExpansion once at the end; the heavy
// convolutions stay in integer arithmetic.
using IVec = std::vector<Int>;

inline IVec mul(const IVec& a, const IVec& b, int prec)
{
    IVec r(static_cast<size_t>(prec) + 1, Int(0));
    int na = std::min<int>(prec, static_cast<int>(a.size()) - 1);
    for (int i = 0; i <= na; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        int nb = std::min<int>(prec - i, static_cast<int>(b.size()) - 1);
        const Int& ai = a[static_cast<size_t>(i)];
        for (int j = 0; j <= nb; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            r[static_cast<size_t>(i + j)] += ai * b[static_cast<size_t>(j)];
        }
    }
    return r;
}

// Reciprocal of a series with constant term +-1 (coefficient recurrence).
inline IVec inverse(const IVec& a, int prec)
{
    if (a.empty() || (a[0] != 1 && a[0] != -1))
        throw input_error("series inverse: constant term must be a unit");
    Int a0 = a[0];
    IVec r(static_cast<size_t>(prec) + 1, Int(0));
    r[0] = a0; // 1/(+-1)
    for (int n = 1; n <= prec; ++n) {
        Int s = 0;
        int top = std::min<int>(n, static_cast<int>(a.size()) - 1);
        for (int k = 1; k <= top; ++k)
            if (a[static_cast<size_t>(k)] != 0)
                s += a[static_cast<size_t>(k)] * r[static_cast<size_t>(n - k)];
        r[static_cast<size_t>(n)] = -a0 * s;
    }
    return r;
}

inline IVec pow(IVec base, long long e, int prec)
{
    if (e < 0) {
        base = inverse(base, prec);
        e = -e;
    }
    IVec r(static_cast<size_t>(prec) + 1, Int(0));
    r[0] = 1;
    while (e) {
        if (e & 1) r = mul(r, base, prec);
        e >>= 1;
        if (e) base = mul(base, base, prec);
    }
    return r;
}

// prod_{n>=1} (1 - q^n) up to q^prec, by the pentagonal number theorem:
// sum_{j in Z} (-1)^j q^{j(3j-1)/2}.
inline IVec pentagonal(int prec)
{
    IVec r(static_cast<size_t>(prec) + 1, Int(0));
    for (long long j = 0;; ++j) {
        long long g1 = j * (3 * j - 1) / 2;
        long long g2 = j * (3 * j + 1) / 2;
        if (g1 > prec && g2 > prec) break;
        Int sgn = (j % 2 == 0) ? 1 : -1;
        if (g1 <= prec) r[static_cast<size_t>(g1)] += sgn;
        if (j > 0 && g2 <= prec) r[static_cast<size_t>(g2)] += sgn;
    }
    return r;
}

// Substitute q -> q^d.
inline IVec dilate(const IVec& a, int d, int prec)
{
    IVec r(static_cast<size_t>(prec) + 1, Int(0));
    for (int n = 0; n < static_cast<int>(a.size()) && static_cast<long long>(n) * d <= prec; ++n)
        r[static_cast<size_t>(n * d)] = a[static_cast<size_t>(n)];
    return r;
}

} // namespace series

/* Eta quotient prod_delta eta(delta z)^{r_delta}.  The q-power offset
 * sum(delta r_delta)/24 must be a nonnegative integer, otherwise the
 * expansion has fractional or negative leading exponent and is rejected. */
struct EtaQuotientSpec {
    std::vector<std::pair<int, int>> factors; // (scale delta, exponent r)

    // "1^24", "1^2 11^2", "1^-1 2^3" -- tokens separated by spaces or commas
    static EtaQuotientSpec parse(const std::string& s)
    {
        EtaQuotientSpec spec;
        std::string tok;
        std::istringstream is(s);
        std::string chunk;
        while (is >> chunk) {
            std::istringstream cs(chunk);
            while (std::getline(cs, tok, ',')) {
                if (tok.empty()) continue;
                size_t caret = tok.find('^');
                try {
                    int delta = std::stoi(tok.substr(0, caret));
                    int r = (caret == std::string::npos) ? 1 : std::stoi(tok.substr(caret + 1));
                    if (delta < 1) throw input_error("eta spec: scale must be positive");
                    spec.factors.emplace_back(delta, r);
                } catch (const input_error&) {
                    throw;
                } catch (...) {
                    throw input_error("eta spec: bad token '" + tok + "'");
                }
            }
        }
        return spec;
    }

    long long weight_times_2() const
    {
        long long s = 0;
        for (auto [d, r] : factors) s += r;
        return s;
    }
};

inline QExpansion eta_quotient(const EtaQuotientSpec& spec, int prec)
{
    long long shift24 = 0;
    for (auto [d, r] : spec.factors) shift24 += static_cast<long long>(d) * r;
    if (shift24 % 24 != 0)
        throw input_error("eta quotient: sum of delta*r = " + std::to_string(shift24) +
                          " is not divisible by 24 (fractional q-power)");
    long long shift = shift24 / 24;
    if (shift < 0)
        throw input_error("eta quotient: negative leading q-exponent");
    if (shift > prec)
        throw precision_error("eta quotient: leading exponent beyond precision");

    series::IVec acc(static_cast<size_t>(prec) + 1, Int(0));
    acc[0] = 1;
    series::IVec penta = series::pentagonal(prec);
    for (auto [d, r] : spec.factors) {
        series::IVec piece = series::pow(series::dilate(penta, d, prec), r, prec);
        acc = series::mul(acc, piece, prec);
    }

    // Level: the smallest multiple L of lcm(delta) with 24 | L*sum(r/delta).
    long long L0 = 1;
    for (auto [d, r] : spec.factors) L0 = lcm_ll(L0, d);
    long long L = L0;
    for (int t = 1; t <= 24; ++t) {
        L = L0 * t;
        long long s = 0;
        for (auto [d, r] : spec.factors) s += L / d * r;
        if (s % 24 == 0) break;
    }

    long long w2 = spec.weight_times_2();
    QExpansion f(Rat(w2, 2), L, prec);
    bool all_nonneg = true;
    for (auto [d, r] : spec.factors) all_nonneg = all_nonneg && r >= 0;
    f.cuspidal = all_nonneg && shift >= 1 && !spec.factors.empty();
    for (long long n = shift; n <= prec; ++n)
        f.coeff[static_cast<size_t>(n)] = Rat(acc[static_cast<size_t>(n - shift)]);
    return f;
}

// theta(z) = 1 + 2 sum_{n>=1} q^{n^2}; weight 1/2, level 4.
inline QExpansion theta_series(int prec)
{
    QExpansion f(Rat(1, 2), 4, prec);
    f.coeff[0] = 1;
    for (long long n = 1; n * n <= prec; ++n) f.coeff[static_cast<size_t>(n * n)] = 2;
    return f;
}

// F = sum_{n odd} sigma_1(n) q^n; the weight-2 Eisenstein series on
// Gamma_0(4) that together with theta generates the level-4 graded ring.
inline QExpansion eisenstein_F(int prec)
{
    QExpansion f(Rat(2), 4, prec);
    // sigma_1 over odd n only, accumulated divisor-by-divisor
    for (int d = 1; d <= prec; ++d) {
        for (int m = d; m <= prec; m += d) {
            if (m & 1) f.coeff[static_cast<size_t>(m)] += d;
        }
    }
    return f;
}

/* Basis of the cuspidal Kohnen plus space of weight k+1/2 on Gamma_0(4).
 * The ambient space is spanned by theta^{2k+1-4j} F^j, 0 <= j <= (2k+1)/4;
 * the plus/cusp conditions c(0) = 0 and c(n) = 0 for n = 2 or (-1)^{k+1}
 * mod 4 are imposed as an exact linear system up to the working precision.
 * Basis vectors are reduced-echelon by leading index and normalized so the
 * first nonzero coefficient is 1. */
inline std::vector<QExpansion> kohnen_plus_basis(int k, int prec)
{
    if (k < 1) throw input_error("kohnen_plus_basis: k must be positive");
    if (prec < 4 * k)
        throw precision_error("kohnen_plus_basis: precision below 4k");

    int jmax = (2 * k + 1) / 4;
    int ncols = jmax + 1;

    // Integer expansions of the spanning monomials.
    series::IVec theta(static_cast<size_t>(prec) + 1, Int(0));
    theta[0] = 1;
    for (long long n = 1; n * n <= prec; ++n) theta[static_cast<size_t>(n * n)] = 2;
    series::IVec F(static_cast<size_t>(prec) + 1, Int(0));
    for (int d = 1; d <= prec; ++d)
        for (int m = d; m <= prec; m += d)
            if (m & 1) F[static_cast<size_t>(m)] += d;

    std::vector<series::IVec> span;
    span.reserve(static_cast<size_t>(ncols));
    for (int j = 0; j <= jmax; ++j) {
        series::IVec t = series::pow(theta, 2 * k + 1 - 4 * j, prec);
        series::IVec fj = series::pow(F, j, prec);
        span.push_back(series::mul(t, fj, prec));
    }

    int bad_residue = (k % 2 == 0) ? 3 : 1; // (-1)^{k+1} mod 4
    auto constrained = [&](long long n) {
        return n == 0 || n % 4 == 2 || n % 4 == bad_residue;
    };

    // Nullspace of the constraint matrix, exact Gaussian elimination.  The
    // system is heavily overdetermined (hundreds of rows, a handful of
    // columns); rank stability against dropping the last rows guards
    // against an under-resolved space.
    auto nullspace = [&](long long nmax) {
        std::vector<std::vector<Rat>> rows;
        for (long long n = 0; n <= nmax; ++n) {
            if (!constrained(n)) continue;
            std::vector<Rat> row(static_cast<size_t>(ncols));
            bool nonzero = false;
            for (int j = 0; j < ncols; ++j) {
                row[static_cast<size_t>(j)] = Rat(span[static_cast<size_t>(j)][static_cast<size_t>(n)]);
                nonzero = nonzero || row[static_cast<size_t>(j)] != 0;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
        // forward elimination
        std::vector<int> pivot_col;
        size_t r = 0;
        for (int col = 0; col < ncols && r < rows.size(); ++col) {
            size_t sel = r;
            while (sel < rows.size() && rows[sel][static_cast<size_t>(col)] == 0) ++sel;
            if (sel == rows.size()) continue;
            std::swap(rows[r], rows[sel]);
            Rat inv = rows[r][static_cast<size_t>(col)];
            for (int c = col; c < ncols; ++c) rows[r][static_cast<size_t>(c)] /= inv;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == r) continue;
                const Rat& f = rows[i][static_cast<size_t>(col)];
                if (f == 0) continue;
                Rat fac = f;
                for (int c = col; c < ncols; ++c)
                    rows[i][static_cast<size_t>(c)] -= fac * rows[r][static_cast<size_t>(c)];
            }
            pivot_col.push_back(col);
            ++r;
        }
        // free columns give the nullspace basis
        std::vector<std::vector<Rat>> basis;
        std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
        for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
        for (int c = 0; c < ncols; ++c) {
            if (is_pivot[static_cast<size_t>(c)]) continue;
            std::vector<Rat> v(static_cast<size_t>(ncols), Rat(0));
            v[static_cast<size_t>(c)] = 1;
            for (size_t i = 0; i < pivot_col.size(); ++i)
                v[static_cast<size_t>(pivot_col[i])] = -rows[i][static_cast<size_t>(c)];
            basis.push_back(std::move(v));
        }
        return basis;
    };

    auto basis = nullspace(prec);
    auto basis_short = nullspace(std::max<long long>(4 * k, prec - 8));
    if (basis.size() != basis_short.size())
        throw precision_error("kohnen_plus_basis: rank not stable at this precision, "
                              "increase it");

    std::vector<QExpansion> out;
    for (const auto& v : basis) {
        QExpansion g(Rat(2 * k + 1, 2), 4, prec);
        g.cuspidal = true;
        for (long long n = 0; n <= prec; ++n) {
            Rat s = 0;
            for (int j = 0; j < ncols; ++j)
                if (v[static_cast<size_t>(j)] != 0)
                    s += v[static_cast<size_t>(j)] *
                         Rat(span[static_cast<size_t>(j)][static_cast<size_t>(n)]);
            g.coeff[static_cast<size_t>(n)] = s;
        }
        long long lead = g.first_nonzero_index();
        if (lead < 0) continue;
        Rat leadc = g.coeff[static_cast<size_t>(lead)];
        for (Rat& x : g.coeff) x /= leadc;
        out.push_back(std::move(g));
    }
    // echelonize by leading index for a canonical, deterministic basis
    std::sort(out.begin(), out.end(), [](const QExpansion& a, const QExpansion& b) {
        return a.first_nonzero_index() < b.first_nonzero_index();
    });
    for (size_t i = 1; i < out.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            long long lj = out[j].first_nonzero_index();
            const Rat& f = out[i].coeff[static_cast<size_t>(lj)];
            if (f != 0) {
                Rat fac = f;
                for (int n = 0; n <= out[i].precision(); ++n)
                    out[i].coeff[static_cast<size_t>(n)] -=
                        fac * out[j].coeff[static_cast<size_t>(n)];
            }
        }
    return out;
}

/* Hecke operator T_p on an integral-weight expansion of weight 2k:
 * b(n) = c(pn) + p^{2k-1} c(n/p), the second term only when p | n and the
 * level is coprime to p (U_p otherwise). */
inline QExpansion hecke_Tp(const QExpansion& f, long long p, int k)
{
    if (!is_prime(p)) throw input_error("hecke_Tp: p must be prime");
    if (f.weight != Rat(2 * k)) throw input_error("hecke_Tp: weight must equal 2k");
    int out_prec = f.precision() / static_cast<int>(p);
    if (f.precision() > 0 && out_prec < 1)
        throw precision_error("hecke_Tp: insufficient precision");
    QExpansion r(f.weight, f.level, out_prec);
    r.character = f.character;
    r.cuspidal = f.cuspidal;
    bool good_prime = (f.level % p != 0);
    Int pk = int_pow(Int(p), static_cast<unsigned>(2 * k - 1));
    for (long long n = 0; n <= out_prec; ++n) {
        Rat b = f.c(p * n);
        if (good_prime && n % p == 0) b += Rat(pk) * f.c(n / p);
        r.coeff[static_cast<size_t>(n)] = b;
    }
    return r;
}

/* Shimura lift at a fundamental discriminant D0:
 * A(n) = sum_{d|n} chi(d) d^{k-1} c(|D0| n^2 / d^2), chi the quadratic
 * character of the discriminant (-1)^k D0. */
inline QExpansion shimura_lift(const QExpansion& g, long long D0, int k, int prec)
{
    if (!is_fundamental(D0)) throw input_error("shimura_lift: D0 must be fundamental");
    long long absD0 = std::llabs(D0);
    long long need = absD0 * static_cast<long long>(prec) * prec;
    if (need > g.precision())
        throw precision_error("shimura_lift: need c(n) of g up to " + std::to_string(need) +
                              ", have " + std::to_string(g.precision()));
    long long twist = (k % 2 == 0) ? D0 : -D0;
    QExpansion r(Rat(2 * k), std::max<long long>(1, g.level / 4), prec);
    r.cuspidal = g.cuspidal;
    for (long long n = 1; n <= prec; ++n) {
        Rat A = 0;
        for (long long d = 1; d <= n; ++d) {
            if (n % d) continue;
            int ch = kronecker(twist, d);
            if (ch == 0) continue;
            long long m = n / d;
            Rat term = Rat(int_pow(Int(d), static_cast<unsigned>(k - 1))) * g.c(absD0 * m * m);
            A += (ch > 0) ? term : -term;
        }
        r.coeff[static_cast<size_t>(n)] = A;
    }
    return r;
}

} // namespace kzv

#endif
