#include "scenario.hpp"

#include "minkbranch/version.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <sstream>

using namespace minkbranch::cli;

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::optional<double> tol;
    std::string n_list;
    std::string format;
    std::string suite;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw ConfigError("--n-list entry '" + item + "' is not an integer", "csv-ints");
        v.push_back(n);
    }
    return v;
}

ScenarioConfig assemble(const Flags& f) {
    ScenarioConfig c = f.config.empty() ? ScenarioConfig{} : load_config(f.config);
    if (!f.out.empty()) c.output_dir = f.out;
    if (f.tol) c.root_tol = *f.tol;
    if (!f.n_list.empty()) c.n_list = parse_int_list(f.n_list);
    if (!f.format.empty()) c.format = f.format;
    if (!f.suite.empty()) c.suite = f.suite;
    validate(c);
    return c;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "scenario JSON file");
    cmd->add_option("--out", f.out, "output directory (overrides output.dir)");
    cmd->add_option("--tol", f.tol, "root tolerance (overrides tolerances.root)");
    cmd->add_option("--n-list", f.n_list, "regularization indices, e.g. 4,8,16,32");
    cmd->add_option("--format", f.format, "branch table format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial positive solutions of the Minkowski-curvature Dirichlet problem"};
    app.set_version_flag("--version", std::string(minkbranch::kVersion));
    app.require_subcommand(1);

    Flags f;
    auto* sweep = app.add_subcommand("sweep", "branch table, profiles, bounds and family limit");
    auto* bounds = app.add_subcommand("bounds", "eigenvalue, thresholds and explicit bounds");
    auto* family = app.add_subcommand("family", "regularized family on the ball");
    auto* verify = app.add_subcommand("verify", "run a named check suite");
    for (auto* cmd : {sweep, bounds, family, verify}) add_common(cmd, f);
    verify->add_option("--suite", f.suite, "identity, greens, eigen, theoremB or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ScenarioConfig config;
    try {
        config = assemble(f);
    } catch (const ConfigError& e) {
        std::cerr << error_record("invalid_config", e.what(), e.invariant()).dump() << "\n";
        return 2;
    }

    if (verify->parsed()) return run_verify(config.suite, std::cout);
    const RunMode mode = sweep->parsed() ? RunMode::Full : bounds->parsed() ? RunMode::Bounds : RunMode::Family;
    return run_scenario(config, mode, std::cout);
}
