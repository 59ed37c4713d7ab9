#ifndef KZV_CHARACTERS_HPP
#define KZV_CHARACTERS_HPP

#include "kzv/arith.hpp"
#include "kzv/common.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

namespace kzv {

using Cx = std::complex<double>;

// e^{2 pi i num/den}, exact at quarter turns so quadratic characters stay
// in {+-1, +-i} without rounding fuzz.
inline Cx root_of_unity(long long num, long long den)
{
    num %= den;
    if (num < 0) num += den;
    if (4 * num % den == 0) {
        switch (4 * num / den) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double t = 2.0 * kPi * double(num) / double(den);
    return {std::cos(t), std::sin(t)};
}

namespace detail {

inline long long pow_mod(long long b, long long e, long long m)
{
    long long r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// Smallest generator of (Z/p^e)^* for odd p.
inline long long primitive_root(long long p, int e)
{
    long long m = 1;
    for (int i = 0; i < e; ++i) m *= p;
    long long phi = m / p * (p - 1);
    auto qs = prime_factors(phi);
    for (long long g = 2; g < m; ++g) {
        if (gcd_ll(g, m) != 1) continue;
        bool ok = true;
        for (long long q : qs)
            if (pow_mod(g, phi / q, m) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw input_error("no primitive root found");
}

} // namespace detail

// A finite-order character of (Z/p^e)^*, stored as a full value table filled
// in once from the values on a fixed generating set.  The generating set is
// canonical: the smallest primitive root for odd p; {-1} for p=2, e=2;
// {-1, 5} for p=2, e>=3.  Generator values are recorded as exponents j, the
// value being exp(2 pi i j / ord(gen)).
struct LocalCharacterSpec {
    long long p = 2;
    int e = 0;
    long long modulus = 1;
    std::vector<long long> gen_exponents; // one per canonical generator
    std::vector<Cx> table;                // indexed by residue mod p^e, 0 off units

    LocalCharacterSpec() = default;

    LocalCharacterSpec(long long p_, int e_, std::vector<long long> exps)
        : p(p_), e(e_), gen_exponents(std::move(exps))
    {
        modulus = 1;
        for (int i = 0; i < e; ++i) modulus *= p;
        build_table();
    }

    bool is_trivial() const
    {
        for (long long j : gen_exponents)
            if (j != 0) return false;
        return true;
    }

    Cx eval(long long n) const
    {
        long long r = ((n % modulus) + modulus) % modulus;
        return table[static_cast<size_t>(r)];
    }

    Cx value_at_minus1() const { return eval(modulus - 1); }

private:
    void build_table()
    {
        table.assign(static_cast<size_t>(modulus), Cx(0.0, 0.0));
        if (modulus == 1) {
            table[0] = Cx(1.0, 0.0);
            return;
        }
        if (p == 2) {
            if (e == 1) {
                if (!gen_exponents.empty())
                    throw input_error("character: (Z/2)^* has no generators");
                table[1] = Cx(1.0, 0.0);
                return;
            }
            if (e == 2) {
                if (gen_exponents.size() != 1)
                    throw input_error("character mod 4: expected one generator exponent");
                long long j = gen_exponents[0];
                table[1] = Cx(1.0, 0.0);
                table[3] = root_of_unity(j, 2);
                return;
            }
            // (Z/2^e)^* = <-1> x <5>, orders 2 and 2^{e-2}
            if (gen_exponents.size() != 2)
                throw input_error("character mod 2^e: expected two generator exponents");
            long long ord5 = modulus / 4;
            long long r = 1;
            for (long long b = 0; b < ord5; ++b) {
                table[static_cast<size_t>(r)] =
                    root_of_unity(gen_exponents[1] * b, ord5);
                table[static_cast<size_t>(modulus - r)] =
                    root_of_unity(gen_exponents[0], 2) * table[static_cast<size_t>(r)];
                r = r * 5 % modulus;
            }
            return;
        }
        if (gen_exponents.size() != 1)
            throw input_error("character mod p^e: expected one generator exponent");
        long long g = detail::primitive_root(p, e);
        long long ord = modulus / p * (p - 1);
        long long r = 1;
        for (long long a = 0; a < ord; ++a) {
            table[static_cast<size_t>(r)] = root_of_unity(gen_exponents[0] * a, ord);
            r = r * g % modulus;
        }
    }
};

// A Dirichlet character mod M assembled from local components covering the
// prime factorization of M.  Evaluation is the product of local values on
// residues coprime to M and zero otherwise.
struct DirichletCharacterSpec {
    long long modulus = 1;
    std::vector<LocalCharacterSpec> locals;

    DirichletCharacterSpec() = default;

    DirichletCharacterSpec(long long m, std::vector<LocalCharacterSpec> ls)
        : modulus(m), locals(std::move(ls))
    {
        long long prod = 1;
        for (const auto& l : locals) prod *= l.modulus;
        if (prod != modulus)
            throw input_error("character: local components do not cover the modulus");
    }

    static DirichletCharacterSpec trivial(long long m = 1)
    {
        std::vector<LocalCharacterSpec> ls;
        for (long long p : prime_factors(m)) {
            int e = valuation(m, p);
            size_t ngens = (p == 2) ? (e == 1 ? 0 : (e == 2 ? 1 : 2)) : 1;
            ls.emplace_back(p, e, std::vector<long long>(ngens, 0));
        }
        return DirichletCharacterSpec(m, std::move(ls));
    }

    // Quadratic character attached to a fundamental discriminant, as local
    // data: chi_D(n) = kronecker(D, n), modulus |D|.
    static DirichletCharacterSpec quadratic(long long D);

    bool is_trivial() const
    {
        for (const auto& l : locals)
            for (long long j : l.gen_exponents)
                if (j != 0) return false;
        return true;
    }

    Cx eval(long long n) const
    {
        if (modulus == 1) return Cx(1.0, 0.0);
        if (gcd_ll(n, modulus) != 1) return Cx(0.0, 0.0);
        Cx v(1.0, 0.0);
        for (const auto& l : locals) v *= l.eval(n);
        return v;
    }

    Cx value_at_minus1() const
    {
        Cx v(1.0, 0.0);
        for (const auto& l : locals) v *= l.value_at_minus1();
        return v;
    }

    bool operator==(const DirichletCharacterSpec& o) const
    {
        if (modulus != o.modulus || locals.size() != o.locals.size()) return false;
        for (size_t i = 0; i < locals.size(); ++i) {
            if (locals[i].p != o.locals[i].p || locals[i].e != o.locals[i].e ||
                locals[i].gen_exponents != o.locals[i].gen_exponents)
                return false;
        }
        return true;
    }
};

inline DirichletCharacterSpec char_eval_product(const DirichletCharacterSpec& a,
                                                const DirichletCharacterSpec& b)
{
    if (a.is_trivial() && a.modulus == 1) return b;
    if (b.is_trivial() && b.modulus == 1) return a;
    if (a.modulus != b.modulus)
        throw input_error("character product: mixed moduli not supported");
    std::vector<LocalCharacterSpec> ls;
    for (size_t i = 0; i < a.locals.size(); ++i) {
        const auto& la = a.locals[i];
        const auto& lb = b.locals[i];
        if (la.p != lb.p || la.e != lb.e)
            throw input_error("character product: mismatched local data");
        std::vector<long long> exps(la.gen_exponents.size());
        for (size_t g = 0; g < exps.size(); ++g) {
            long long ord;
            if (la.p == 2)
                ord = (g == 0) ? 2 : la.modulus / 4;
            else
                ord = la.modulus / la.p * (la.p - 1);
            exps[g] = (la.gen_exponents[g] + lb.gen_exponents[g]) % ord;
        }
        ls.emplace_back(la.p, la.e, std::move(exps));
    }
    return DirichletCharacterSpec(a.modulus, std::move(ls));
}

inline Cx char_eval(const DirichletCharacterSpec& chi, long long n) { return chi.eval(n); }

// Text form: "1" for the trivial modulus-1 character, otherwise
//   M:p^e:j[,j2][;p^e:j...]
inline std::string character_to_string(const DirichletCharacterSpec& chi)
{
    if (chi.modulus == 1) return "1";
    std::ostringstream os;
    os << chi.modulus;
    for (size_t i = 0; i < chi.locals.size(); ++i) {
        const auto& l = chi.locals[i];
        os << (i == 0 ? ':' : ';') << l.p << '^' << l.e << ':';
        for (size_t g = 0; g < l.gen_exponents.size(); ++g)
            os << (g ? "," : "") << l.gen_exponents[g];
        if (l.gen_exponents.empty()) os << 0;
    }
    return os.str();
}

inline DirichletCharacterSpec parse_character(const std::string& s)
{
    size_t colon = s.find(':');
    long long m = 0;
    try {
        m = std::stoll(s.substr(0, colon));
    } catch (...) {
        throw input_error("character: bad modulus in '" + s + "'");
    }
    if (colon == std::string::npos) {
        if (m != 1) throw input_error("character: missing local components");
        return DirichletCharacterSpec::trivial(1);
    }
    std::vector<LocalCharacterSpec> ls;
    std::string rest = s.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ';')) {
        size_t caret = tok.find('^');
        size_t c2 = tok.find(':', caret);
        if (caret == std::string::npos || c2 == std::string::npos)
            throw input_error("character: malformed local component '" + tok + "'");
        long long p = std::stoll(tok.substr(0, caret));
        int e = std::stoi(tok.substr(caret + 1, c2 - caret - 1));
        std::vector<long long> exps;
        std::istringstream js(tok.substr(c2 + 1));
        std::string jt;
        while (std::getline(js, jt, ',')) exps.push_back(std::stoll(jt));
        size_t ngens = (p == 2) ? (e == 1 ? 0 : (e == 2 ? 1 : 2)) : 1;
        if (ngens == 0) exps.clear();
        if (exps.size() != ngens)
            throw input_error("character: wrong generator count for p^e component");
        ls.emplace_back(p, e, std::move(exps));
    }
    return DirichletCharacterSpec(m, std::move(ls));
}

namespace detail {

// CRT lift: the residue g mod q, extended by 1 modulo cof (gcd(q, cof) = 1).
inline long long crt_lift(long long g, long long q, long long cof)
{
    if (cof == 1) return g % q;
    for (long long x = 0; x < q * cof; ++x)
        if (x % q == g % q && x % cof == 1) return x;
    throw input_error("crt_lift: no solution");
}

} // namespace detail

inline DirichletCharacterSpec DirichletCharacterSpec::quadratic(long long D)
{
    if (!is_fundamental(D)) throw input_error("quadratic character needs a fundamental discriminant");
    long long m = std::llabs(D);
    auto chi = DirichletCharacterSpec::trivial(m);
    // Local exponents so that the product over components reproduces
    // kronecker(D, .).  Each generator is lifted to be 1 modulo the rest of
    // the modulus before plugging it into the symbol.
    for (auto& l : chi.locals) {
        long long cof = m / l.modulus;
        if (l.p == 2) {
            if (l.e == 2) {
                long long v = kronecker(D, detail::crt_lift(3, 4, cof));
                l = LocalCharacterSpec(2, 2, {v == 1 ? 0LL : 1LL});
            } else if (l.e >= 3) {
                // generators -1 and 5
                long long j0 =
                    kronecker(D, detail::crt_lift(l.modulus - 1, l.modulus, cof)) == 1 ? 0 : 1;
                long long ord5 = l.modulus / 4;
                long long j5 =
                    kronecker(D, detail::crt_lift(5, l.modulus, cof)) == 1 ? 0 : ord5 / 2;
                l = LocalCharacterSpec(2, l.e, {j0, j5});
            }
        } else {
            long long g = detail::primitive_root(l.p, l.e);
            long long ord = l.modulus / l.p * (l.p - 1);
            long long j =
                kronecker(D, detail::crt_lift(g, l.modulus, cof)) == 1 ? 0 : ord / 2;
            l = LocalCharacterSpec(l.p, l.e, {j});
        }
    }
    return chi;
}

} // namespace kzv

#endif
