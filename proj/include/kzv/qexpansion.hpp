#ifndef KZV_QEXPANSION_HPP
#define KZV_QEXPANSION_HPP

#include "kzv/characters.hpp"
#include "kzv/common.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace kzv {

/* Truncated q-series sum c(n) q^n, n = 0..precision, with exact rational
 * coefficients and weight/level/character metadata.  Arithmetic never reads
 * beyond the stored precision; products report the min precision of the
 * operands. */
struct QExpansion {
    Rat weight = 0;                 // half-integers allowed, e.g. 13/2
    long long level = 1;
    DirichletCharacterSpec character; // trivial by default
    bool cuspidal = false;
    std::vector<Rat> coeff;         // coeff[n], n = 0..precision

    QExpansion() = default;

    QExpansion(Rat w, long long lvl, int precision)
        : weight(std::move(w)), level(lvl), coeff(static_cast<size_t>(precision) + 1, Rat(0))
    {
        if (precision < 0) throw input_error("QExpansion: negative precision");
        if (lvl < 1) throw input_error("QExpansion: level must be positive");
    }

    int precision() const { return static_cast<int>(coeff.size()) - 1; }

    const Rat& c(long long n) const
    {
        if (n < 0 || n > precision())
            throw precision_error("coefficient index " + std::to_string(n) +
                                  " beyond precision " + std::to_string(precision()));
        return coeff[static_cast<size_t>(n)];
    }

    Rat& c(long long n)
    {
        if (n < 0 || n > precision())
            throw precision_error("coefficient index " + std::to_string(n) +
                                  " beyond precision " + std::to_string(precision()));
        return coeff[static_cast<size_t>(n)];
    }

    bool is_zero() const
    {
        for (const Rat& x : coeff)
            if (x != 0) return false;
        return true;
    }

    long long first_nonzero_index() const
    {
        for (int n = 0; n <= precision(); ++n)
            if (coeff[static_cast<size_t>(n)] != 0) return n;
        return -1;
    }

    void truncate(int new_prec)
    {
        if (new_prec < precision()) coeff.resize(static_cast<size_t>(new_prec) + 1);
    }
};

inline QExpansion add(const QExpansion& a, const QExpansion& b)
{
    if (a.weight != b.weight)
        throw input_error("add: weight mismatch (" + rat_to_string(a.weight) + " vs " +
                          rat_to_string(b.weight) + ")");
    if (!(a.character == b.character) && !a.character.is_trivial() && !b.character.is_trivial())
        throw input_error("add: incompatible characters");
    int prec = std::min(a.precision(), b.precision());
    QExpansion r(a.weight, lcm_ll(a.level, b.level), prec);
    r.character = a.character.is_trivial() && a.character.modulus == 1 ? b.character : a.character;
    r.cuspidal = a.cuspidal && b.cuspidal;
    for (int n = 0; n <= prec; ++n)
        r.coeff[static_cast<size_t>(n)] =
            a.coeff[static_cast<size_t>(n)] + b.coeff[static_cast<size_t>(n)];
    return r;
}

inline QExpansion mul(const QExpansion& a, const QExpansion& b)
{
    int prec = std::min(a.precision(), b.precision());
    QExpansion r(a.weight + b.weight, lcm_ll(a.level, b.level), prec);
    r.character = char_eval_product(a.character, b.character);
    r.cuspidal = a.cuspidal || b.cuspidal;
    for (int i = 0; i <= prec; ++i) {
        const Rat& ai = a.coeff[static_cast<size_t>(i)];
        if (ai == 0) continue;
        for (int j = 0; i + j <= prec; ++j) {
            const Rat& bj = b.coeff[static_cast<size_t>(j)];
            if (bj == 0) continue;
            r.coeff[static_cast<size_t>(i + j)] += ai * bj;
        }
    }
    return r;
}

inline QExpansion scale(const QExpansion& a, const Rat& s)
{
    QExpansion r = a;
    for (Rat& x : r.coeff) x *= s;
    return r;
}

/* ---- q-expansion file format -------------------------------------------
 *
 * Line-oriented text.  Header lines:
 *     weight <p>[/<q>]
 *     level <N>
 *     character <spec>          (optional; "1" = trivial)
 *     precision <N>
 *     cuspidal <0|1>            (optional)
 *     al <p> <sign>             (optional, integral-weight newforms only)
 * then one "<index> <numerator>[/<denominator>]" line per nonzero
 * coefficient.  Unlisted indices are zero.  '#' starts a comment line.
 */
struct FormFile {
    QExpansion form;
    std::map<long long, int> atkin_lehner;
};

inline std::string serialize(const QExpansion& f,
                             const std::map<long long, int>& al = {})
{
    std::ostringstream os;
    if (denominator(f.weight) == 1)
        os << "weight " << numerator(f.weight) << "\n";
    else
        os << "weight " << numerator(f.weight) << "/" << denominator(f.weight) << "\n";
    os << "level " << f.level << "\n";
    os << "character " << character_to_string(f.character) << "\n";
    os << "precision " << f.precision() << "\n";
    if (f.cuspidal) os << "cuspidal 1\n";
    for (const auto& [p, w] : al) os << "al " << p << " " << (w > 0 ? "1" : "-1") << "\n";
    for (int n = 0; n <= f.precision(); ++n) {
        const Rat& x = f.coeff[static_cast<size_t>(n)];
        if (x != 0) os << n << " " << rat_to_string(x) << "\n";
    }
    return os.str();
}

inline std::string serialize(const FormFile& ff) { return serialize(ff.form, ff.atkin_lehner); }

namespace detail {

inline Rat parse_rational_token(const std::string& tok)
{
    size_t slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(tok));
        Int num(tok.substr(0, slash));
        Int den(tok.substr(slash + 1));
        if (den == 0) throw input_error("zero denominator");
        return Rat(num, den);
    } catch (const input_error&) {
        throw;
    } catch (...) {
        throw input_error("bad rational token '" + tok + "'");
    }
}

} // namespace detail

inline FormFile parse_form(const std::string& text)
{
    FormFile ff;
    bool have_weight = false, have_level = false, have_prec = false;
    long long level = 0;
    Rat weight;
    int prec = -1;
    bool cuspidal = false;
    DirichletCharacterSpec chi = DirichletCharacterSpec::trivial(1);
    std::vector<std::pair<long long, Rat>> entries;
    std::map<long long, int> al;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t h = line.find_first_not_of(" \t\r");
        if (h == std::string::npos || line[h] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        auto fail = [&](const std::string& what) {
            throw input_error("q-expansion file line " + std::to_string(lineno) + ": " + what);
        };
        if (key == "weight") {
            std::string tok;
            if (!(ls >> tok)) fail("missing weight value");
            weight = detail::parse_rational_token(tok);
            have_weight = true;
        } else if (key == "level") {
            if (!(ls >> level) || level < 1) fail("bad level");
            have_level = true;
        } else if (key == "character") {
            std::string tok;
            if (!(ls >> tok)) fail("missing character spec");
            chi = parse_character(tok);
        } else if (key == "precision") {
            if (!(ls >> prec) || prec < 0) fail("bad precision");
            have_prec = true;
        } else if (key == "cuspidal") {
            int v;
            if (!(ls >> v)) fail("bad cuspidal flag");
            cuspidal = (v != 0);
        } else if (key == "al") {
            long long p;
            int w;
            if (!(ls >> p >> w) || (w != 1 && w != -1)) fail("bad al line");
            al[p] = w;
        } else if (!key.empty() && (std::isdigit(static_cast<unsigned char>(key[0])))) {
            long long idx;
            try {
                idx = std::stoll(key);
            } catch (...) {
                fail("bad coefficient index");
                idx = 0;
            }
            std::string tok;
            if (!(ls >> tok)) fail("missing coefficient value");
            entries.emplace_back(idx, detail::parse_rational_token(tok));
        } else {
            fail("unrecognized header keyword '" + key + "'");
        }
    }
    if (!have_weight) throw input_error("q-expansion file: missing weight");
    if (!have_level) throw input_error("q-expansion file: missing level");
    if (!have_prec) throw input_error("q-expansion file: missing precision");

    QExpansion f(weight, level, prec);
    f.character = chi;
    f.cuspidal = cuspidal;
    for (auto& [idx, val] : entries) {
        if (idx > prec)
            throw input_error("q-expansion file: index " + std::to_string(idx) +
                              " beyond declared precision");
        f.coeff[static_cast<size_t>(idx)] = val;
    }
    if (f.cuspidal && f.coeff[0] != 0)
        throw input_error("q-expansion file: cuspidal form with c(0) != 0");
    ff.form = std::move(f);
    ff.atkin_lehner = std::move(al);
    return ff;
}

inline QExpansion parse_qexpansion(const std::string& text) { return parse_form(text).form; }

} // namespace kzv

#endif
