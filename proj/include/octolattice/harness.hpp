#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "octolattice/field.hpp"

namespace octolattice {

inline constexpr const char* kVersion = "0.1.0";

// Configuration problems (unknown suite, unreadable domain, bad values): exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::optional<int> trials;      // per-suite defaults when unset
    std::optional<double> tol;      // overrides every check tolerance when set
    int T = 8;
    double h = 1.0;
    std::string domain;             // per-suite default when empty
    std::string out;                // JSON report path, empty = none
    int threads = 1;
};

nlohmann::json to_json(const SuiteConfig& c);
SuiteConfig config_from_json(const nlohmann::json& j);

struct Check {
    std::string formula;
    std::string domain;
    int trials = 1;
    double max_residual = 0;
    double tolerance = 0;
    bool pass = false;
    bool expect_failure = false;  // passes when the residual exceeds the tolerance
    bool gating = true;           // informational checks do not affect the suite verdict
    std::map<std::string, double> groups;
    nlohmann::json extra = nlohmann::json::object();

    void decide() { pass = expect_failure ? max_residual > tolerance : max_residual <= tolerance; }
};

struct SuiteReport {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0;
    bool pass = false;
};

struct RunReport {
    std::string version = kVersion;
    SuiteConfig config;
    std::vector<SuiteReport> suites;
    double seconds = 0;
    bool pass = false;
};

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const RunReport& r);

const std::vector<std::string>& suite_names();  // without "all"

// Components uniform in [-amplitude, amplitude]: mt19937_64 seeded with `seed`, points in
// Box order (axis 7 fastest), 8 draws per point, value = amplitude * (2 * (x >> 11) * 2^-53 - 1).
OctField random_field(std::uint64_t seed, const Box& box, double amplitude = 1.0, double h = 1.0);
OctField random_field(std::uint64_t seed, const std::vector<Point>& points, double amplitude = 1.0,
                      double h = 1.0);

// splitmix64 step, used to derive per-trial seeds
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

RunReport run_suite(const std::string& name, const SuiteConfig& config);

// Cayley-Dickson doubling of the quaternions (e1 = i, e2 = j, e4 = k, e3 = (0, 1)).
Octonion doubling_product(const Octonion& a, const Octonion& b);

// Runs fn(i) for i in [0, n) on up to `threads` workers; results are collected by index.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

// Errata applied by the library, as printed by the CLI.
const std::vector<std::string>& errata();

}  // namespace octolattice
