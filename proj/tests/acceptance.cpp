#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <map>
#include <string>
#include <thread>

#include "octolattice/harness.hpp"

using namespace octolattice;

namespace {

std::map<std::string, SuiteReport> suites;

const Check* find(const std::string& suite, const std::string& formula) {
    for (const auto& c : suites.at(suite).checks)
        if (c.formula == formula) return &c;
    return nullptr;
}

struct Line {
    bool pass = true;
    std::string detail;

    void check(const std::string& suite, const std::string& formula, int min_trials = 1) {
        const Check* c = find(suite, formula);
        char buf[256];
        if (!c) {
            pass = false;
            std::snprintf(buf, sizeof buf, " %s=missing", formula.c_str());
        } else {
            bool ok = c->pass && c->trials >= min_trials;
            pass = pass && ok;
            std::snprintf(buf, sizeof buf, " %s=%.2e/%.2e%s", formula.c_str(), c->max_residual, c->tolerance,
                          ok ? "" : "(!)");
        }
        detail += buf;
    }
    void runtime(const std::string& suite, double limit) {
        double s = suites.at(suite).seconds;
        char buf[128];
        bool ok = s < limit;
        pass = pass && ok;
        std::snprintf(buf, sizeof buf, " %s-time=%.1fs/<%.0fs%s", suite.c_str(), s, limit, ok ? "" : "(!)");
        detail += buf;
    }
};

int failures = 0;

void report(int n, const char* title, const Line& l) {
    if (!l.pass) ++failures;
    std::printf("%s criterion %2d %-34s%s\n", l.pass ? "PASS" : "FAIL", n, title, l.detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    SuiteConfig cfg;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out = argc > 1 ? argv[1] : "";

    RunReport all;
    all.config = cfg;
    for (const char* name : {"octonion", "split-algebra", "operators", "green", "stokes", "borel-pompeiu", "cauchy",
                             "hardy"}) {
        auto r = run_suite(name, cfg);
        suites[name] = r.suites.front();
        all.suites.push_back(r.suites.front());
        std::fprintf(stderr, "suite %-14s %s %.1f s\n", name, r.pass ? "pass" : "FAIL", r.seconds);
    }
    std::printf("threads %d\n", cfg.threads);

    Line l;
    l.check("octonion", "cayley-table-vs-doubling");
    l.runtime("octonion", 1);
    report(1, "cayley table vs doubling", l);

    l = {};
    for (const char* f : {"weyl-relations", "rebracketing-antiassociative", "rebracketing-associative", "confluence-scan"})
        l.check("split-algebra", f);
    l.runtime("split-algebra", 60);
    report(2, "relations and confluence", l);

    l = {};
    l.check("operators", "factorization-pm", 100);
    l.check("operators", "factorization-mp", 100);
    l.runtime("operators", 60);
    report(3, "factorization D^2 = -Lap", l);

    l = {};
    l.check("stokes", "stokes-whole", 20);
    l.runtime("stokes", 120);
    report(4, "whole-lattice stokes", l);

    l = {};
    l.check("stokes", "stokes-upper-half", 20);
    l.check("stokes", "stokes-lower-half", 20);
    l.check("stokes", "stokes-half-separated-equals-whole", 20);
    report(5, "half-space stokes", l);

    l = {};
    l.check("stokes", "stokes-cuboid", 20);
    l.check("stokes", "cuboid-vs-bounded-groups", 20);
    report(6, "cuboid stokes", l);

    l = {};
    l.check("stokes", "stokes-bounded-interior", 20);
    l.check("stokes", "stokes-bounded-exterior", 20);
    report(7, "bounded interior/exterior stokes", l);

    l = {};
    for (const char* f : {"green-vs-bessel", "green-vs-bessel-improves", "definition-residual-origin",
                          "definition-residual-off-origin"})
        l.check("green", f);
    l.runtime("green", 300);
    report(8, "green's function", l);

    l = {};
    for (const char* f : {"borel-pompeiu-interior", "borel-pompeiu-defect-decreases", "borel-pompeiu-exterior"})
        l.check("borel-pompeiu", f);
    report(9, "borel-pompeiu", l);

    l = {};
    for (const char* f : {"cauchy-constant", "cauchy-monogenic", "cauchy-constant-bp-difference-is-volume",
                          "cauchy-monogenic-bp-difference-is-volume"})
        l.check("cauchy", f);
    report(10, "cauchy formula", l);

    l = {};
    l.check("cauchy", "cauchy-transform-interior-monogenic");
    l.check("cauchy", "cauchy-transform-exterior-monogenic");
    report(11, "cauchy transform monogenicity", l);

    l = {};
    for (const char* f : {"hardy-symbol-involution-plus", "hardy-symbol-involution-minus",
                          "hardy-symbol-involution-minus-printed-radical", "plemelj-idempotent-plus",
                          "plemelj-idempotent-minus", "layer-symbols-vs-torus"})
        l.check("hardy", f);
    report(12, "hardy symbols and projections", l);

    l = {};
    l.check("green", "scaling-law");
    report(13, "kernel scaling law", l);

    if (!out.empty()) {
        std::ofstream os(out);
        os << to_json(all).dump(2) << "\n";
    }
    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
