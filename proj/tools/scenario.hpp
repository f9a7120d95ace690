#pragma once

#include "minkbranch/branch.hpp"
#include "minkbranch/problem.hpp"

#include "json.hpp"

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace minkbranch::cli {

/// Invalid scenario configuration; `invariant` names the violated rule.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string invariant)
        : std::runtime_error(what), invariant_(std::move(invariant)) {}

    [[nodiscard]] const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

struct NonlinearitySpec {
    /// linear_plus: m(r) s (1 + c s); power: mu(r) s^q; root: s^p
    std::string family = "linear_plus";
    /// Polynomial coefficients of m or mu in r.
    std::vector<double> weight{1.0};
    double coefficient = 1.0;
    double exponent = 2.0;
};

struct ScenarioConfig {
    int dimension = 2;
    double inner_radius = 0.0;
    double outer_radius = 1.0;
    NonlinearitySpec nonlinearity;
    int s_count = 64;
    GridSpacing spacing = GridSpacing::LogNearEnds;
    double root_tol = 1e-9;
    /// 0: 0.01 root_tol.
    double integrator_tol = 0.0;
    std::vector<int> n_list{4, 8, 16, 32};
    std::filesystem::path output_dir = "out";
    std::string format = "csv";
    std::string suite = "all";
    int threads = 0;
    /// Branch points whose profiles are written to profiles/.
    int profile_count = 8;
};

/// Parses and validates; unknown keys are rejected. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Validates a config assembled in code (also called by parse_config).
void validate(const ScenarioConfig& config);
nlohmann::json to_json(const ScenarioConfig& config);

RadialProblem make_problem(const ScenarioConfig& config);

enum class RunMode { Full, Bounds, Family };

/// Writes the artifacts of `mode` into config.output_dir. Returns the process
/// exit status: 0 on success, 1 on a module failure (a PARTIAL marker and an
/// error record are written next to whatever was already produced).
int run_scenario(const ScenarioConfig& config, RunMode mode, std::ostream& log);

/// Named check suites: identity, greens, eigen, theoremB, all.
/// Returns 0 when every check passes, 1 otherwise, 2 for an unknown suite.
int run_verify(const std::string& suite, std::ostream& out);

/// "%.17g", with inf/nan spelled out.
std::string format_number(double x);

/// Writes through a temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// {"error": kind, "message": ..., "invariant": ...}
nlohmann::json error_record(const std::string& kind, const std::string& message,
                            const std::string& invariant = "");

}  // namespace minkbranch::cli
