// kzv: construct the modular forms of the half-integral-weight ratio
// formula, compute twisted central L-values, run verification reports, and
// sweep the closed-form local constants.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 precision
// error, 4 inconclusive.

#include "kzv/dyadic.hpp"
#include "kzv/kzverify.hpp"
#include "kzv/localfactors.hpp"
#include "kzv/petersson.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace kzv;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << text;
}

NewformData load_newform(const std::string& path)
{
    return NewformData::from_file_text(read_file(path));
}

QExpansion load_qexp(const std::string& path) { return parse_qexpansion(read_file(path)); }

int cmd_construct(const std::string& eta, bool theta, bool plus_space, int k, int prec,
                  const std::string& out)
{
    if (out.empty()) throw input_error("construct: --out is required");
    if (static_cast<int>(!eta.empty()) + static_cast<int>(theta) +
            static_cast<int>(plus_space) != 1)
        throw input_error("construct: choose exactly one of --eta, --theta, --plus-space");
    if (!eta.empty()) {
        auto f = eta_quotient(EtaQuotientSpec::parse(eta), prec);
        write_file(out, serialize(f));
        std::printf("wrote %s (eta quotient, weight %s, level %lld)\n", out.c_str(),
                    rat_to_string(f.weight).c_str(), f.level);
        return 0;
    }
    if (theta) {
        auto f = theta_series(prec);
        write_file(out, serialize(f));
        std::printf("wrote %s (theta, weight 1/2, level 4)\n", out.c_str());
        return 0;
    }
    auto basis = kohnen_plus_basis(k, prec);
    if (basis.empty()) {
        std::printf("plus space is zero at k=%d; nothing written\n", k);
        return 0;
    }
    if (basis.size() == 1) {
        write_file(out, serialize(basis[0]));
        std::printf("wrote %s (plus-space generator, weight %s)\n", out.c_str(),
                    rat_to_string(basis[0].weight).c_str());
    } else {
        for (size_t i = 0; i < basis.size(); ++i) {
            std::string path = out;
            auto dot = path.rfind('.');
            std::string suffix = "_" + std::to_string(i);
            if (dot == std::string::npos)
                path += suffix;
            else
                path.insert(dot, suffix);
            write_file(path, serialize(basis[i]));
            std::printf("wrote %s (plus-space basis vector %zu)\n", path.c_str(), i);
        }
    }
    return 0;
}

int cmd_lvalue(const std::string& form, long long d_min, long long d_max, double target)
{
    auto f = load_newform(form);
    std::printf("   D  eps  L(f,D,k)                err\n");
    for (long long D : fundamental_range(d_min, d_max)) {
        auto r = central_lvalue(f, D, target);
        std::printf("%4lld  %+d   %-22s  %s\n", D, root_number(f, D), fmt_g(r.value).c_str(),
                    fmt_g(r.abs_error_bound).c_str());
    }
    return 0;
}

int cmd_verify(const std::string& form, const std::string& gpath, long long d_min,
               long long d_max, double tol, const std::string& class_spec,
               const std::string& out)
{
    auto f = load_newform(form);
    auto g = load_qexp(gpath);
    std::set<long long> S;
    if (!class_spec.empty()) {
        std::istringstream is(class_spec);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) S.insert(std::stoll(tok));
    }
    auto rep = verify_report(f, g, d_min, d_max, tol, S);
    std::fputs(report_text(rep).c_str(), stdout);
    if (!out.empty()) write_file(out, report_machine(rep));
    if (rep.verdict == "PASS") return 0;
    if (rep.verdict == "INCONCLUSIVE") return 4;
    return 1;
}

int cmd_shimura(const std::string& gpath, long long d0, int k, int prec,
                const std::string& out)
{
    auto g = load_qexp(gpath);
    auto lift = shimura_lift(g, d0, k, prec);
    if (out.empty())
        std::fputs(serialize(lift).c_str(), stdout);
    else {
        write_file(out, serialize(lift));
        std::printf("wrote %s (Shimura lift at D0=%lld)\n", out.c_str(), d0);
    }
    return 0;
}

int cmd_scan(const std::string& gpath, long long n_max)
{
    auto g = load_qexp(gpath);
    Rat two_k_plus_1 = g.weight * 2;
    if (denominator(two_k_plus_1) != 1)
        throw input_error("scan: form must have half-integral weight k+1/2");
    int k = static_cast<int>((numerator(two_k_plus_1) - 1) / 2);
    auto [stat, arg] = ramanujan_scan(g, k, n_max);
    std::printf("max over squarefree n <= %lld of |c(n)| n^{-(k/2-1/4)}: %s at n = %lld\n",
                n_max, fmt_g(stat).c_str(), arg);
    return 0;
}

// ---- local sweeps ---------------------------------------------------------

const char* kind_name(RepKind k)
{
    switch (k) {
        case RepKind::unramified: return "unramified";
        case RepKind::complementary: return "complementary";
        case RepKind::special: return "special";
        case RepKind::weil_odd: return "weil-odd";
        case RepKind::arch: return "arch";
    }
    return "?";
}

void sweep_row(const LocalRepSpec& sp, const DClassLocal& d, const std::string& sname,
               double& worst)
{
    double res = quotient_check(sp, d);
    worst = std::max(worst, res);
    if (sp.kind == RepKind::arch) {
        std::printf("%-13s  %-10s D=%-4lld log-residual=%s\n", kind_name(sp.kind),
                    sname.c_str(), d.arch_D, fmt_g(res).c_str());
    } else {
        std::printf("%-13s  q=%-3lld s=%-6s %-6s e_phi=%-18s e_phitilde=%-18s L=%-18s "
                    "residual=%s\n",
                    kind_name(sp.kind), sp.q, sname.c_str(), d.unit ? "unit" : "prime",
                    fmt_g(e_phi(sp)).c_str(), fmt_g(e_phitilde(sp, d)).c_str(),
                    fmt_g(local_lfactor(sp, d)).c_str(), fmt_g(res).c_str());
    }
}

void cmd_local_grid(double& worst)
{
    const long long primes[] = {3, 5, 7, 11, 13};
    for (long long q : primes) {
        for (double t : {0.0, 0.3, 0.7}) {
            for (int chi : {1, -1})
                sweep_row(LocalRepSpec::unram(q, t), DClassLocal::unit_class(chi),
                          fmt_g(t) + "i", worst);
            sweep_row(LocalRepSpec::unram(q, t), DClassLocal::prime_class(), fmt_g(t) + "i",
                      worst);
        }
        for (double s : {0.1, 0.3})
            for (bool tausq : {false, true}) {
                for (int chi : {1, -1})
                    sweep_row(LocalRepSpec::compl_series(q, s, tausq),
                              DClassLocal::unit_class(chi), fmt_g(s), worst);
                sweep_row(LocalRepSpec::compl_series(q, s, tausq), DClassLocal::prime_class(),
                          fmt_g(s), worst);
            }
        // unit-class special (factor 2), prime-class special (factor 1),
        // and the odd-Weil branch (factor 2(1+q^{-1})^{-1})
        for (bool tausq : {false, true}) {
            sweep_row(LocalRepSpec::special_rep(q, tausq),
                      DClassLocal::unit_class(tausq ? -1 : 1), "1/2", worst);
            sweep_row(LocalRepSpec::special_rep(q, tausq), DClassLocal::prime_class(), "1/2",
                      worst);
            sweep_row(LocalRepSpec::weil(q, tausq), DClassLocal::unit_class(tausq ? 1 : -1),
                      "1/2", worst);
        }
    }
}

void cmd_local_arch(double& worst)
{
    for (int k = 1; k <= 8; ++k)
        for (int n : {1, 2})
            for (long long D : {1LL, 5LL, 13LL})
                sweep_row(LocalRepSpec::arch_series(k, n), DClassLocal::arch(D),
                          "k=" + std::to_string(k) + ",n=" + std::to_string(n), worst);
    for (int k = 1; k <= 20; ++k) {
        double res = gamma_duplication_check(k);
        worst = std::max(worst, res);
        std::printf("gamma-duplication k=%-3d residual=%s\n", k, fmt_g(res).c_str());
    }
}

void cmd_local_e2(double& worst)
{
    for (double r : {0.0, 0.25, 0.7}) {
        auto u = e2_unramified(r, true);
        worst = std::max(worst, u.quotient_residual);
        std::printf("e2 unit      r=%-5s e_phi=%-18s e_phitilde=%-18s residual=%s\n",
                    fmt_g(r).c_str(), fmt_g(u.e_phi).c_str(), fmt_g(u.e_phitilde).c_str(),
                    fmt_g(u.quotient_residual).c_str());
        auto v = e2_unramified(r, false);
        worst = std::max(worst, v.quotient_residual);
        std::printf("e2 4*unit    r=%-5s e_phi=%-18s e_phitilde=%-18s residual=%s\n",
                    fmt_g(r).c_str(), fmt_g(v.e_phi).c_str(), fmt_g(v.e_phitilde).c_str(),
                    fmt_g(v.quotient_residual).c_str());
    }
}

void cmd_local_gauss2(double& worst)
{
    struct Row {
        DyChar nu;
        int tlog;
        const char* label;
    } rows[] = {
        {DyChar::chi_2, -3, "eta(chi_2, 2^-3)"},
        {DyChar::chi_m2, -3, "eta(chi_-2, 2^-3)"},
        {DyChar::chi_m1, -2, "eta(chi_-1, 2^-2)"},
    };
    for (auto& r : rows) {
        Cyclo brute = gauss_sum_2(r.nu, r.tlog);
        Cyclo closed = gauss_sum_2_closed(r.nu, r.tlog);
        if (!(brute == closed)) worst = std::max(worst, 1.0);
        auto v = brute.eval();
        std::printf("%-18s = %s %+s i   exact: %s\n", r.label, fmt_g(v.real()).c_str(),
                    fmt_g(v.imag()).c_str(), brute.to_string().c_str());
    }
    int zeros = 0;
    for (DyChar nu : {DyChar::trivial, DyChar::chi_m1, DyChar::chi_2, DyChar::chi_m2}) {
        int cond = dychar_conductor(nu);
        for (int tlog = -5; tlog <= 1; ++tlog) {
            bool expect_zero = (cond == 0) ? (tlog < -1) : (tlog != -cond);
            if (!expect_zero) continue;
            if (!gauss_sum_2(nu, tlog).is_zero()) worst = std::max(worst, 1.0);
            ++zeros;
        }
    }
    std::printf("conductor-mismatch vanishing verified on %d cases\n", zeros);
}

void cmd_local_kohnen(double& worst)
{
    for (int kp : {0, 1})
        for (long long delta : {1LL, -1LL, 2LL, -2LL, 5LL, -5LL, 10LL, -10LL})
            for (int dlog : {0, 1}) {
                Z2Arg z{delta, dlog};
                long long zval = delta;
                for (int t = 0; t < dlog; ++t) zval *= 4;
                auto val = kohnen_vector_value(z, kp);
                long long m4 = ((((kp % 2 == 0) ? zval : -zval) % 4) + 4) % 4;
                bool expect_zero = (m4 == 2 || m4 == 3);
                bool ok = val.is_zero() == expect_zero;
                if (!ok) worst = std::max(worst, 1.0);
                std::printf("kohnen-vector k'=%d z=%-5lld value %s  (expected %s)%s\n", kp,
                            zval, val.is_zero() ? "= 0" : "!= 0",
                            expect_zero ? "= 0" : "!= 0", ok ? "" : "  MISMATCH");
            }
}

void cmd_local_special(double& worst)
{
    for (long long q : {3LL, 5LL, 7LL})
        for (int dval : {0, 1})
            for (bool dts : {false, true})
                for (int e = -1; e <= 2; ++e) {
                    Rat v = special_whittaker_table(dval, dts, e, q);
                    std::printf(
                        "special-whittaker q=%-3lld |delta|=%s deltatau=%-9s |Delta|=q^-%-2d "
                        "value=%s\n",
                        q, dval == 0 ? "1  " : "1/q", dts ? "square" : "nonsquare", e,
                        rat_to_string(v).c_str());
                    if (dval == 0 && dts && v != 0) worst = std::max(worst, 1.0);
                }
}

int cmd_local(const std::string& kind)
{
    double worst = 0.0;
    if (kind == "all" || kind == "grid") cmd_local_grid(worst);
    if (kind == "all" || kind == "arch") cmd_local_arch(worst);
    if (kind == "all" || kind == "e2") cmd_local_e2(worst);
    if (kind == "all" || kind == "gauss2") cmd_local_gauss2(worst);
    if (kind == "all" || kind == "kohnen-vector") cmd_local_kohnen(worst);
    if (kind == "all" || kind == "special") cmd_local_special(worst);
    std::printf("worst residual: %s\n", fmt_g(worst).c_str());
    return worst < 1e-12 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"modular-form ratio-formula verification toolkit"};
    app.require_subcommand(1);

    // construct
    auto* c = app.add_subcommand("construct", "build a form and write its q-expansion file");
    std::string eta, out;
    bool theta = false, plus_space = false;
    int k = 6, prec = 200;
    c->add_option("--eta", eta, "eta quotient spec, e.g. \"1^24\" or \"1^2 11^2\"");
    c->add_flag("--theta", theta, "the weight-1/2 theta series");
    c->add_flag("--plus-space", plus_space, "cuspidal Kohnen plus-space basis at weight k+1/2");
    c->add_option("--k", k, "integer k for --plus-space (weight k+1/2)");
    c->add_option("--prec", prec, "number of q-expansion coefficients");
    c->add_option("--out", out, "output file");

    // lvalue
    auto* l = app.add_subcommand("lvalue", "twisted central L-values of a newform");
    std::string lform;
    long long d_min = 1, d_max = 24;
    double target = 1e-9;
    l->add_option("--form", lform, "newform q-expansion file")->required();
    l->add_option("--d-min", d_min, "lower end of the discriminant range");
    l->add_option("--d-max", d_max, "upper end of the discriminant range");
    l->add_option("--target", target, "absolute error target per value");

    // verify
    auto* v = app.add_subcommand("verify", "ratio-constancy and vanishing report");
    std::string vform, vg, vclass, vout;
    long long vd_min = 1, vd_max = 24;
    double tol = 1e-6;
    v->add_option("--form", vform, "newform q-expansion file")->required();
    v->add_option("--g", vg, "half-integral-weight form file")->required();
    v->add_option("--d-min", vd_min, "lower end of the discriminant range");
    v->add_option("--d-max", vd_max, "upper end of the discriminant range");
    v->add_option("--tol", tol, "relative tolerance for ratio constancy");
    v->add_option("--class", vclass, "declared prime class of g, comma separated");
    v->add_option("--out", vout, "write the machine-readable report here");

    // local
    auto* lo = app.add_subcommand("local", "closed-form local constants against their checks");
    std::string kind = "all";
    lo->add_option("--kind", kind, "all|grid|arch|e2|gauss2|kohnen-vector|special")
        ->check(CLI::IsMember(
            {"all", "grid", "arch", "e2", "gauss2", "kohnen-vector", "special"}));

    // shimura
    auto* sh = app.add_subcommand("shimura", "Shimura lift of a plus-space form");
    std::string sg, sout;
    long long d0 = 1;
    int sk = 6, sprec = 50;
    sh->add_option("--g", sg, "half-integral-weight form file")->required();
    sh->add_option("--d0", d0, "fundamental discriminant of the lift");
    sh->add_option("--k", sk, "integer k (form has weight k+1/2)");
    sh->add_option("--prec", sprec, "coefficients of the lift");
    sh->add_option("--out", sout, "output file (stdout if omitted)");

    // scan
    auto* sc = app.add_subcommand("scan", "coefficient-growth scan over squarefree indices");
    std::string scg;
    long long n_max = 200;
    sc->add_option("--g", scg, "half-integral-weight form file")->required();
    sc->add_option("--n-max", n_max, "scan bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c) return cmd_construct(eta, theta, plus_space, k, prec, out);
        if (*l) return cmd_lvalue(lform, d_min, d_max, target);
        if (*v) return cmd_verify(vform, vg, vd_min, vd_max, tol, vclass, vout);
        if (*lo) return cmd_local(kind);
        if (*sh) return cmd_shimura(sg, d0, sk, sprec, sout);
        if (*sc) return cmd_scan(scg, n_max);
    } catch (const precision_error& e) {
        std::fprintf(stderr, "precision error: %s\n", e.what());
        return 3;
    } catch (const input_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
