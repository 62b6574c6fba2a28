#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "octolattice/harness.hpp"

using namespace octolattice;
using nlohmann::json;

namespace {

int cli(const std::string& args, std::string* output = nullptr) {
    std::string cmd = std::string(OCTOLATTICE_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return -1;
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, p)) out += buf;
    int status = pclose(p);
    if (output) *output = out;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::vector<double> residuals(const RunReport& r) {
    std::vector<double> v;
    for (const auto& s : r.suites)
        for (const auto& c : s.checks) v.push_back(c.max_residual);
    return v;
}

}  // namespace

TEST(Harness, SplitMix) {
    EXPECT_EQ(mix_seed(0, 0), 0xE220A8397B1DCDAFull);
    EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
}

TEST(Harness, RandomFieldIsFrozen) {
    auto f = random_field(1, Box::cube(0, 0));
    const double expect[8] = {-0.73224671197493474, -0.72718592726760556, -0.097570192310923787,
                              -0.95795154316654596, -0.29820377243416107, 0.82271609582235361,
                              -0.0584957350195352,  -0.85114991985766664};
    for (int k = 0; k < 8; ++k) EXPECT_EQ(f.at(Point{}).c[k], expect[k]);
}

TEST(Harness, RandomFieldProperties) {
    Box b = Box::cube(0, 1);
    b.hi[7] = 9;
    auto a = random_field(5, b, 2.0, 0.5), c = random_field(5, b, 2.0, 0.5);
    EXPECT_EQ(a.h, 0.5);
    double sum = 0;
    int n = 0;
    for (const auto& p : a.support()) {
        EXPECT_EQ(a.at(p), c.at(p));
        for (double x : a.at(p).c) {
            EXPECT_LE(std::abs(x), 2.0);
            sum += std::abs(x);
            ++n;
        }
    }
    EXPECT_GE(n, 10000);
    EXPECT_NEAR(sum / n, 1.0, 0.03);
    EXPECT_EQ(random_field(5, b, 0.0).size(), 0u);
}

TEST(Harness, ConfigRoundTrip) {
    SuiteConfig c;
    c.seed = 42;
    c.trials = 3;
    c.tol = 1e-9;
    c.T = 10;
    c.h = 0.5;
    c.domain = "lshape:3";
    auto back = config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_THROW(config_from_json(json{{"seed", "x"}}), ConfigError);
}

TEST(Harness, SuiteList) {
    EXPECT_GE(suite_names().size(), 9u);
    auto rep = run_suite("octonion", {});
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.suites.size(), 1u);
    EXPECT_EQ(to_json(rep)["suites"][0]["name"], "octonion");
}

TEST(Harness, ConfigErrors) {
    EXPECT_THROW(run_suite("nosuch", {}), ConfigError);
    SuiteConfig c;
    c.trials = 0;
    EXPECT_THROW(run_suite("octonion", c), ConfigError);
    SuiteConfig d;
    d.domain = "file:/nonexistent/mask.txt";
    EXPECT_THROW(run_suite("stokes", d), ConfigError);
}

TEST(Harness, ZeroToleranceFails) {
    SuiteConfig c;
    c.tol = 0;
    EXPECT_FALSE(run_suite("octonion", c).pass);
}

TEST(Harness, Deterministic) {
    SuiteConfig c;
    c.trials = 1;
    c.seed = 9;
    auto a = run_suite("stokes", c), b = run_suite("stokes", c);
    EXPECT_EQ(residuals(a), residuals(b));
    c.threads = 2;
    EXPECT_EQ(residuals(run_suite("stokes", c)), residuals(a));
}

TEST(Harness, ParallelFor) {
    std::vector<int> v(50, 0);
    parallel_for(50, 4, [&](int i) { v[i] = i * i; });
    for (int i = 0; i < 50; ++i) EXPECT_EQ(v[i], i * i);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("verify octonion"), 0);
    EXPECT_EQ(cli("verify octonion --tol 0"), 1);
    EXPECT_EQ(cli("verify nosuch"), 2);
    EXPECT_EQ(cli("verify octonion --trials 0"), 2);
    EXPECT_EQ(cli("verify stokes --domain file:/nonexistent/mask.txt"), 2);
    EXPECT_EQ(cli("--no-such-flag"), 2);
    EXPECT_EQ(cli("reduce \"e1+ * e2+ * e3+ * e4+\""), 2);
    EXPECT_EQ(cli("--help"), 0);
}

TEST(Cli, Reduce) {
    std::string out;
    EXPECT_EQ(cli("reduce \"(e1+ * e2-) * e3+\"", &out), 0);
    EXPECT_EQ(out, "-e1+(e2-e3+)\n");
}

TEST(Cli, DumpCayley) {
    std::string out;
    EXPECT_EQ(cli("dump-cayley", &out), 0);
    EXPECT_EQ(out, cayley_golden_text());
}

TEST(Cli, ReportReplay) {
    const auto path = temp("octolattice_report_test.json"), again = temp("octolattice_report_again.json");
    ASSERT_EQ(cli("verify split-algebra --seed 5 --report " + path), 0);
    std::ifstream in(path);
    json a = json::parse(in);
    EXPECT_EQ(a["tool"], "octolattice");
    EXPECT_EQ(a["config"]["seed"], 5);
    ASSERT_EQ(cli("run split-algebra --config " + path + " --report " + again), 0);
    std::ifstream in2(again);
    json b = json::parse(in2);
    ASSERT_EQ(a["suites"].size(), b["suites"].size());
    for (size_t s = 0; s < a["suites"].size(); ++s)
        for (size_t c = 0; c < a["suites"][s]["checks"].size(); ++c)
            EXPECT_EQ(a["suites"][s]["checks"][c]["max_residual"], b["suites"][s]["checks"][c]["max_residual"]);
    std::filesystem::remove(path);
    std::filesystem::remove(again);
}

TEST(Cli, HardyProject) {
    const auto data = temp("octolattice_hp_data.txt"), out = temp("octolattice_hp_out.txt");
    {
        std::ofstream os(data);
        os << "h=1\n1 1 1 1 1 1 1 1 0 1 0 0 0 0 0 0\n";
    }
    std::string log;
    EXPECT_EQ(cli("hardy-project --side + --data " + data + " --domain cuboid:3 --out " + out, &log), 0) << log;
    EXPECT_TRUE(std::filesystem::exists(out));
    EXPECT_EQ(cli("hardy-project --side + --data /nonexistent --domain cuboid:3"), 2);
    std::filesystem::remove(data);
    std::filesystem::remove(out);
}
