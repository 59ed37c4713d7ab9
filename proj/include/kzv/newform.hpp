#ifndef KZV_NEWFORM_HPP
#define KZV_NEWFORM_HPP

#include "kzv/qexpansion.hpp"

#include <cstdlib>
#include <map>
#include <vector>

namespace kzv {

// Atkin-Lehner sign from the p-th coefficient: a(p) = -w_p p^{k-1} at a
// prime exactly dividing the level.
inline int atkin_lehner_from_ap(const Int& ap, long long p, int k)
{
    Int pk = int_pow(Int(p), static_cast<unsigned>(k - 1));
    if (ap == -pk) return 1;
    if (ap == pk) return -1;
    throw input_error("atkin_lehner_from_ap: a_p / p^{k-1} is not +-1");
}

/* An integral-weight newform: odd squarefree level N, weight 2k, trivial
 * character, integer coefficients a(1..M) with a(1) = 1, and the
 * Atkin-Lehner signs at the primes dividing N. */
struct NewformData {
    long long level = 1;
    int k = 1; // weight = 2k
    std::vector<Int> a;
    std::map<long long, int> w;

    long long max_index() const { return static_cast<long long>(a.size()) - 1; }

    const Int& an(long long n) const
    {
        if (n < 1 || n > max_index())
            throw precision_error("newform coefficient a(" + std::to_string(n) +
                                  ") not available (have " + std::to_string(max_index()) + ")");
        return a[static_cast<size_t>(n)];
    }

    static NewformData from_qexpansion(const QExpansion& f,
                                       const std::map<long long, int>& al = {})
    {
        NewformData nf;
        if (denominator(f.weight) != 1 || numerator(f.weight) % 2 != 0 || f.weight <= 0)
            throw input_error("newform: weight must be a positive even integer");
        nf.k = static_cast<int>(numerator(f.weight)) / 2;
        nf.level = f.level;
        if (nf.level % 2 == 0 || !is_squarefree(nf.level))
            throw input_error("newform: level must be odd and squarefree");
        nf.a.resize(f.coeff.size());
        nf.a[0] = 0;
        for (size_t n = 1; n < f.coeff.size(); ++n) {
            if (denominator(f.coeff[n]) != 1)
                throw input_error("newform: coefficients must be integers");
            nf.a[n] = numerator(f.coeff[n]);
        }
        if (nf.max_index() < 1 || nf.a[1] != 1) throw input_error("newform: a(1) must be 1");
        for (long long p : prime_factors(nf.level)) {
            auto it = al.find(p);
            if (it != al.end()) {
                nf.w[p] = it->second;
                if (nf.max_index() >= p &&
                    nf.an(p) != -Int(it->second) * int_pow(Int(p), static_cast<unsigned>(nf.k - 1)))
                    throw input_error("newform: declared w_p inconsistent with a(p)");
            } else {
                if (nf.max_index() < p)
                    throw precision_error("newform: need a(p) to derive the Atkin-Lehner sign at " +
                                          std::to_string(p));
                nf.w[p] = atkin_lehner_from_ap(nf.an(p), p, nf.k);
            }
        }
        return nf;
    }

    static NewformData from_file_text(const std::string& text)
    {
        auto ff = parse_form(text);
        return from_qexpansion(ff.form, ff.atkin_lehner);
    }
};

/* Root number of the twisted L-function,
 *   eps(f (x) chi_D) = [(-1)^k prod_{p|N} w_p] * sgn(D) * prod_{p|N} eps_p(D),
 * with eps_p(D) = w_p at p | D and the Kronecker symbol (D/p) otherwise. */
inline int root_number(const NewformData& f, long long D)
{
    if (!is_fundamental(D)) throw input_error("root_number: D must be fundamental");
    int eps = (f.k % 2 == 0) ? 1 : -1;
    for (auto& [p, wp] : f.w) eps *= wp;
    eps *= (D > 0) ? 1 : -1;
    for (auto& [p, wp] : f.w) eps *= (D % p == 0) ? wp : kronecker(D, p);
    return eps;
}

} // namespace kzv

#endif
