#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "octolattice/green.hpp"
#include "octolattice/hardy.hpp"
#include "octolattice/harness.hpp"
#include "octolattice/octonion.hpp"
#include "octolattice/split.hpp"

using namespace octolattice;

namespace {

void add_config_options(CLI::App* cmd, SuiteConfig& cfg, std::optional<int>& trials, std::optional<double>& tol) {
    cmd->add_option("--seed", cfg.seed, "PRNG seed");
    cmd->add_option("--trials", trials, "trials per check (suite default when omitted)");
    cmd->add_option("--tol", tol, "override every check tolerance");
    cmd->add_option("--T", cfg.T, "torus size (even, >= 4)");
    cmd->add_option("--h", cfg.h, "lattice spacing");
    cmd->add_option("--domain", cfg.domain, "cuboid:N[,..] | lshape:N | file:<mask>");
    cmd->add_option("--report", cfg.out, "write the JSON report here");
    cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
}

int print_report(const RunReport& rep) {
    for (const auto& s : rep.suites) {
        for (const auto& c : s.checks) {
            std::printf("%-4s %-14s %-44s residual %.3e  tol %.3e%s%s\n", c.pass ? "PASS" : "FAIL", s.name.c_str(),
                        c.formula.c_str(), c.max_residual, c.tolerance, c.expect_failure ? "  (expected to fail)" : "",
                        c.gating ? "" : "  [info]");
        }
        std::printf("%s suite %s (%.2f s)\n", s.pass ? "PASS" : "FAIL", s.name.c_str(), s.seconds);
    }
    std::printf("overall %s in %.2f s\n", rep.pass ? "PASS" : "FAIL", rep.seconds);
    return rep.pass ? 0 : 1;
}

int run_verify(std::string suite, SuiteConfig cfg, const std::optional<int>& trials, const std::optional<double>& tol) {
    if (suite == "hardy-symbols") suite = "hardy";
    if (trials) cfg.trials = trials;
    if (tol) cfg.tol = tol;
    return print_report(run_suite(suite, cfg));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"octolattice: split-generator algebra, lattice kernels and identity checks on hZ^8"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(0, 1);
    bool show_errata = false;
    app.add_flag("--errata", show_errata, "print the errata applied to the printed formulas");

    auto* dump = app.add_subcommand("dump-cayley", "print the octonion basis table as 'i j sign k'");
    std::string dump_out;
    dump->add_option("--out", dump_out, "write to a file instead of stdout");

    auto* reduce = app.add_subcommand("reduce", "canonical form of a split-generator expression");
    std::string expr;
    reduce->add_option("expression", expr, "e.g. \"(e1+ * e2-) * e3+\"")->required();

    auto* green = app.add_subcommand("compute-green", "compute the torus Green's function table");
    int gT = 8;
    double gh = 1.0;
    std::string gout;
    bool goracle = false;
    green->add_option("--T", gT, "torus size (even)");
    green->add_option("--h", gh, "lattice spacing");
    green->add_option("--out", gout, "output .octk file")->required();
    green->add_flag("--oracle", goracle, "compare |m| <= 1 offsets with the Bessel integral");

    SuiteConfig vcfg;
    std::optional<int> vtrials;
    std::optional<double> vtol;
    auto* verify = app.add_subcommand("verify", "run one verification suite (or 'all')");
    std::string vsuite;
    verify->add_option("suite", vsuite, "octonion | split-algebra | lattice | operators | green | stokes | "
                                        "borel-pompeiu | cauchy | hardy | hardy-symbols | all")
        ->required();
    add_config_options(verify, vcfg, vtrials, vtol);

    SuiteConfig rcfg;
    std::optional<int> rtrials;
    std::optional<double> rtol;
    auto* run = app.add_subcommand("run", "run suites from a config file (e.g. the 'config' of a report)");
    std::string rsuite = "all", rconfig;
    run->add_option("suite", rsuite, "suite name (default all)");
    run->add_option("--config", rconfig, "JSON config; command-line options override it");
    add_config_options(run, rcfg, rtrials, rtol);

    auto* hp = app.add_subcommand("hardy-project", "apply the Plemelj projection to boundary data");
    std::string side = "+", hdata, hdomain, hout;
    bool hliteral = false;
    hp->add_option("--side", side, "+ (gamma+) or - (gamma-)")->check(CLI::IsMember({"+", "-"}));
    hp->add_option("--data", hdata, "mask format with 8 reals per line")->required();
    hp->add_option("--domain", hdomain, "cuboid:N | lshape:N | file:<mask>")->required();
    hp->add_option("--out", hout, "write the projected octonion part here");
    hp->add_flag("--printed-radical", hliteral, "use sqrt(4 - h^2 d^2) in H_i^- as printed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (show_errata) {
            for (const auto& e : errata()) std::printf("- %s\n", e.c_str());
            if (app.get_subcommands().empty()) return 0;
        }
        if (*dump) {
            if (dump_out.empty()) {
                std::fputs(cayley_golden_text().c_str(), stdout);
            } else {
                std::ofstream os(dump_out);
                if (!os) throw ConfigError("cannot write " + dump_out);
                os << cayley_golden_text();
            }
            return 0;
        }
        if (*reduce) {
            auto e = parse_expression(expr);
            std::printf("%s\n", canonical_form(*e).to_string().c_str());
            return 0;
        }
        if (*green) {
            if (gT < 4 || gT % 2) throw ConfigError("T must be even and >= 4");
            auto t0 = std::chrono::steady_clock::now();
            KernelTable E = KernelTable::compute(gT, gh);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            E.save(gout);
            std::printf("T=%d h=%g  G(0)=%.15g  defect=%.6e  %.2f s -> %s\n", gT, gh, E.G(Point{}), E.defect(), secs,
                        gout.c_str());
            if (goracle) {
                for (int k = 0; k <= 1; ++k) {
                    Point m{};
                    for (int j = 0; j < k; ++j) m[j] = 1;
                    double ref = green_bessel(m) * std::pow(gh, -6);
                    std::printf("  G(%s) = %.12g  oracle %.12g  rel %.2e\n", to_string(m).c_str(), E.G(m), ref,
                                std::abs(E.G(m) - ref) / std::abs(ref));
                }
            }
            return 0;
        }
        if (*verify) return run_verify(vsuite, vcfg, vtrials, vtol);
        if (*run) {
            SuiteConfig cfg;
            if (!rconfig.empty()) {
                std::ifstream is(rconfig);
                if (!is) throw ConfigError("cannot read " + rconfig);
                nlohmann::json j;
                try {
                    is >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw ConfigError(std::string("config: ") + e.what());
                }
                cfg = config_from_json(j.contains("config") ? j["config"] : j);
            }
            for (auto* opt : run->get_options()) {
                if (opt->count() == 0) continue;
                const std::string n = opt->get_name();
                if (n == "--seed") cfg.seed = rcfg.seed;
                else if (n == "--T") cfg.T = rcfg.T;
                else if (n == "--h") cfg.h = rcfg.h;
                else if (n == "--domain") cfg.domain = rcfg.domain;
                else if (n == "--threads") cfg.threads = rcfg.threads;
            }
            if (!rcfg.out.empty()) cfg.out = rcfg.out;
            return run_verify(rsuite, cfg, rtrials ? rtrials : cfg.trials, rtol ? rtol : cfg.tol);
        }
        if (*hp) {
            LatticeDomain dom = [&] {
                try {
                    return parse_domain(hdomain);
                } catch (const std::exception& e) {
                    throw ConfigError(e.what());
                }
            }();
            OctField f = [&] {
                try {
                    return read_field(hdata);
                } catch (const std::exception& e) {
                    throw ConfigError(e.what());
                }
            }();
            auto layers = classify(dom);
            HardyOptions opt;
            opt.literal_radical = hliteral;
            HardySide s = side == "+" ? HardySide::Plus : HardySide::Minus;
            HardyStats st;
            auto data = embed_data(f);
            auto P = plemelj(s, data, dom, layers, opt, &st);
            double residue = 0;
            OctField out = octonion_part(P, f.h, &residue);
            auto m = hardy_membership(data, s, dom, layers, 1e-6, opt);
            std::printf("faces %d  multi-face points %d  dropped mean mode %.3e\n", st.faces, st.multi_face_points,
                        st.mean_mode);
            std::printf("non-octonion part of P f: %.3e\n", residue);
            std::printf("|f - H f| = %.3e  (%s)\n", m.residual, m.member ? "member" : "not a member");
            if (!hout.empty()) write_field(out, hout);
            return 0;
        }
        std::cout << app.help();
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DegreeOverflow& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
