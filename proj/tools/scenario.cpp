#include "scenario.hpp"

#include "minkbranch/eigen.hpp"
#include "minkbranch/errors.hpp"
#include "minkbranch/greens.hpp"
#include "minkbranch/shoot.hpp"
#include "minkbranch/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

namespace minkbranch::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void require(bool ok, const std::string& what, const std::string& invariant) {
    if (!ok) throw ConfigError(what, invariant);
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        require(known.count(key) > 0, "unknown key '" + key + "' in " + where, "known keys only");
    }
}

json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

template <class T>
json opt_num(const std::optional<T>& x) {
    return x ? num(*x) : json(nullptr);
}

std::string spacing_name(GridSpacing s) { return s == GridSpacing::Linear ? "linear" : "log-near-ends"; }

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

json error_record(const std::string& kind, const std::string& message, const std::string& invariant) {
    json j{{"error", kind}, {"message", message}};
    if (!invariant.empty()) j["invariant"] = invariant;
    return j;
}

void validate(const ScenarioConfig& c) {
    require(c.dimension >= 2, "dimension must be an integer >= 2", "dimension >= 2");
    require(std::isfinite(c.outer_radius) && c.inner_radius >= 0.0 && c.inner_radius < c.outer_radius,
            "radii must satisfy 0 <= inner_radius < outer_radius < inf",
            "0 <= inner_radius < outer_radius < inf");
    const auto& nl = c.nonlinearity;
    require(nl.family == "linear_plus" || nl.family == "power" || nl.family == "root",
            "nonlinearity.family must be linear_plus, power or root", "known nonlinearity family");
    if (nl.family == "power") require(nl.exponent > 1.0, "power family needs exponent q > 1", "q > 1");
    if (nl.family == "root") {
        require(nl.exponent > 0.0 && nl.exponent < 1.0, "root family needs exponent 0 < p < 1", "0 < p < 1");
    }
    if (nl.family == "linear_plus") {
        require(nl.coefficient >= 0.0 && std::isfinite(nl.coefficient),
                "linear_plus coefficient must be finite and >= 0", "f(r, s) > 0 for s > 0");
    }
    if (nl.family != "root") {
        require(!nl.weight.empty(), "nonlinearity.weight needs at least one coefficient", "weight given");
        const Weight w = Weight::polynomial(nl.weight);
        bool positive = false;
        for (int i = 0; i <= 256; ++i) {
            const double r = c.inner_radius + (c.outer_radius - c.inner_radius) * i / 256.0;
            const double v = w(r);
            require(v >= 0.0 && std::isfinite(v), "weight is negative on [inner_radius, outer_radius]",
                    "weight >= 0");
            if (v > 0.0) positive = true;
        }
        require(positive, "weight vanishes identically on [inner_radius, outer_radius]", "weight not identically 0");
    }
    require(c.s_count >= 2, "s_grid.count must be >= 2", "s_grid.count >= 2");
    require(c.root_tol >= 1e-12 && c.root_tol <= 1e-6, "tolerances.root must lie in [1e-12, 1e-6]",
            "1e-12 <= tol <= 1e-6");
    require(c.integrator_tol == 0.0 || (c.integrator_tol >= 1e-12 && c.integrator_tol <= 1e-6),
            "tolerances.integrator must be 0 or lie in [1e-12, 1e-6]", "1e-12 <= integrator tol <= 1e-6");
    for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        require(c.n_list[i] >= 1 && 1.0 / c.n_list[i] < c.outer_radius, "every n in n_list needs 1/n < outer_radius",
                "1/n < R");
        require(i == 0 || c.n_list[i] > c.n_list[i - 1], "n_list must be strictly increasing", "n_list increasing");
    }
    require(c.format == "csv" || c.format == "json", "output.format must be csv or json", "format in {csv, json}");
    require(c.threads >= 0, "threads must be >= 0", "threads >= 0");
    require(c.profile_count >= 0, "profiles.count must be >= 0", "profiles.count >= 0");
}

ScenarioConfig parse_config(const json& j) {
    ScenarioConfig c;
    try {
        require(j.is_object(), "config must be a JSON object", "object");
        reject_unknown(j, {"dimension", "inner_radius", "outer_radius", "nonlinearity", "s_grid", "tolerances",
                           "n_list", "output", "suite", "threads", "profiles"},
                       "config");
        if (j.contains("dimension")) {
            require(j["dimension"].is_number_integer(), "dimension must be an integer", "dimension >= 2");
            c.dimension = j["dimension"].get<int>();
        }
        c.inner_radius = j.value("inner_radius", c.inner_radius);
        c.outer_radius = j.value("outer_radius", c.outer_radius);
        if (j.contains("nonlinearity")) {
            const json& nl = j["nonlinearity"];
            reject_unknown(nl, {"family", "weight", "coefficient", "exponent"}, "nonlinearity");
            c.nonlinearity.family = nl.value("family", c.nonlinearity.family);
            if (nl.contains("weight")) {
                c.nonlinearity.weight = nl["weight"].is_array() ? nl["weight"].get<std::vector<double>>()
                                                                 : std::vector<double>{nl["weight"].get<double>()};
            }
            c.nonlinearity.coefficient = nl.value("coefficient", c.nonlinearity.coefficient);
            const double default_exp = c.nonlinearity.family == "root" ? 0.5 : 2.0;
            c.nonlinearity.exponent = nl.value("exponent", default_exp);
        }
        if (j.contains("s_grid")) {
            const json& g = j["s_grid"];
            reject_unknown(g, {"count", "spacing"}, "s_grid");
            c.s_count = g.value("count", c.s_count);
            const std::string sp = g.value("spacing", spacing_name(c.spacing));
            require(sp == "linear" || sp == "log-near-ends", "s_grid.spacing must be linear or log-near-ends",
                    "spacing in {linear, log-near-ends}");
            c.spacing = sp == "linear" ? GridSpacing::Linear : GridSpacing::LogNearEnds;
        }
        if (j.contains("tolerances")) {
            const json& t = j["tolerances"];
            reject_unknown(t, {"root", "integrator"}, "tolerances");
            c.root_tol = t.value("root", c.root_tol);
            c.integrator_tol = t.value("integrator", c.integrator_tol);
        }
        if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
        if (j.contains("output")) {
            const json& o = j["output"];
            reject_unknown(o, {"dir", "format"}, "output");
            c.output_dir = o.value("dir", c.output_dir.string());
            c.format = o.value("format", c.format);
        }
        c.suite = j.value("suite", c.suite);
        c.threads = j.value("threads", c.threads);
        if (j.contains("profiles")) {
            reject_unknown(j["profiles"], {"count"}, "profiles");
            c.profile_count = j["profiles"].value("count", c.profile_count);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a field of the wrong type: ") + e.what(), "field types");
    }
    validate(c);
    return c;
}

ScenarioConfig load_config(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string(), "readable config");
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what(), "valid JSON");
    }
    return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
    return json{{"dimension", c.dimension},
                {"inner_radius", c.inner_radius},
                {"outer_radius", c.outer_radius},
                {"nonlinearity",
                 {{"family", c.nonlinearity.family},
                  {"weight", c.nonlinearity.weight},
                  {"coefficient", c.nonlinearity.coefficient},
                  {"exponent", c.nonlinearity.exponent}}},
                {"s_grid", {{"count", c.s_count}, {"spacing", spacing_name(c.spacing)}}},
                {"tolerances", {{"root", c.root_tol}, {"integrator", c.integrator_tol}}},
                {"n_list", c.n_list},
                {"output", {{"dir", c.output_dir.string()}, {"format", c.format}}},
                {"suite", c.suite},
                {"threads", c.threads},
                {"profiles", {{"count", c.profile_count}}}};
}

RadialProblem make_problem(const ScenarioConfig& c) {
    const auto& nl = c.nonlinearity;
    const RadialDomain d{c.dimension, c.inner_radius, c.outer_radius};
    if (nl.family == "power") return RadialProblem(d, power_family(Weight::polynomial(nl.weight), nl.exponent));
    if (nl.family == "root") return RadialProblem(d, root_family(nl.exponent));
    return RadialProblem(d, linear_plus_family(Weight::polynomial(nl.weight), nl.coefficient));
}

namespace {

SweepOptions sweep_options(const ScenarioConfig& c) {
    SweepOptions o;
    o.tol = c.root_tol;
    o.integrator_tol = c.integrator_tol;
    o.threads = c.threads;
    return o;
}

std::string branch_csv(const Branch& b) {
    std::ostringstream os;
    os << "s,lambda,u_at_R_residual,min_one_minus_abs_uprime,meas_dev_0.1,status\n";
    for (const auto& p : b.points) {
        const bool ok = p.status == PointStatus::Solved;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        os << format_number(p.s) << ',' << format_number(ok ? p.lambda : nan) << ','
           << format_number(ok ? p.u_at_R_residual : nan) << ','
           << format_number(ok ? p.min_one_minus_abs_uprime : nan) << ','
           << format_number(ok ? p.meas_dev : nan) << ',' << to_string(p.status) << '\n';
    }
    return os.str();
}

std::string branch_json(const Branch& b) {
    json pts = json::array();
    for (const auto& p : b.points) {
        const bool ok = p.status == PointStatus::Solved;
        pts.push_back({{"s", p.s},
                       {"lambda", ok ? num(p.lambda) : json(nullptr)},
                       {"u_at_R_residual", ok ? num(p.u_at_R_residual) : json(nullptr)},
                       {"min_one_minus_abs_uprime", ok ? num(p.min_one_minus_abs_uprime) : json(nullptr)},
                       {"meas_dev_0.1", ok ? num(p.meas_dev) : json(nullptr)},
                       {"multiple_roots", p.multiple},
                       {"status", to_string(p.status)}});
    }
    json j{{"classification", to_string(b.shape)},
           {"anchor_lambda1", opt_num(b.anchor_lambda1)},
           {"classification_warning", b.classification_warning ? json(*b.classification_warning) : json(nullptr)},
           {"points", pts}};
    return j.dump(2) + "\n";
}

void write_profiles(const Branch& b, const fs::path& dir, int count) {
    std::vector<std::size_t> solved;
    for (std::size_t i = 0; i < b.points.size(); ++i) {
        if (b.points[i].status == PointStatus::Solved) solved.push_back(i);
    }
    if (solved.empty() || count <= 0) return;
    const std::size_t k = std::min<std::size_t>(count, solved.size());
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t pick = k == 1 ? solved.front() : solved[j * (solved.size() - 1) / (k - 1)];
        const auto& p = b.points[pick];
        std::ostringstream os;
        os << "# s=" << format_number(p.s) << " lambda=" << format_number(p.lambda) << "\n";
        os << "r,u,uprime\n";
        for (std::size_t i = 0; i < p.profile.size(); ++i) {
            os << format_number(p.profile.r[i]) << ',' << format_number(p.profile.u[i]) << ','
               << format_number(p.profile.uprime[i]) << '\n';
        }
        char name[64];
        std::snprintf(name, sizeof name, "profile_%03zu.csv", pick);
        write_atomic(dir / name, os.str());
    }
}

json bounds_json(const ScenarioConfig& c, const BoundsReport& r) {
    json j;
    j["problem"] = {{"dimension", c.dimension},
                    {"inner_radius", c.inner_radius},
                    {"outer_radius", c.outer_radius},
                    {"nonlinearity", c.nonlinearity.family}};
    j["lambda1"] = {{"value", opt_num(r.lambda1)},
                    {"provenance", "principal eigenvalue of -(r^{N-1}u')' = lambda r^{N-1} m(r) u, "
                                   "u'(delta) = 0 = u(R); finite volumes + Richardson"}};
    j["lambda_star"] = {{"value", num(r.thresholds.lambda_star)},
                        {"s", num(r.thresholds.s_star)},
                        {"provenance", "inf of lambda(s) over the computed branch, golden-section refined"}};
    j["fold"] = r.thresholds.fold_lambda
                    ? json{{"lambda", num(*r.thresholds.fold_lambda)},
                           {"s", num(*r.thresholds.fold_s)},
                           {"provenance", "interior minimum of lambda(s) on a branch sublinear at zero"}}
                    : json(nullptr);
    j["lambda0"] = {{"value", num(r.lambda0)}, {"provenance", "max{lambda_star, lambda1}"}};
    if (r.delta_bound) {
        const auto& d = *r.delta_bound;
        j["lambda_delta"] = {
            {"value", num(d.lambda_delta)},
            {"rho0", d.rho0},
            {"eps", d.eps},
            {"beta", d.beta},
            {"m_f", d.m_f},
            {"i_delta_max", d.i_max},
            {"t_star", d.t_star},
            {"closed_form_conforms", d.closed_form_conforms},
            {"provenance", "(9/8) rho0 [min{m_f/2, (N-1)/(8R)} max_{delta<=r<=R/2} I_delta(r)]^{-1} + rho0/8, "
                           "rho0 = (R-delta)/4, eps = (R-delta)/8, m_f = min f on [delta,R] x [beta rho0, rho0]"}};
    } else {
        j["lambda_delta"] = {{"value", nullptr}, {"unavailable", r.delta_bound_unavailable.value_or("")}};
    }
    if (r.star_bound) {
        const auto& s = *r.star_bound;
        json seq = json::array();
        for (const auto& b : s.sequence) {
            seq.push_back({{"n", b.n},
                           {"rho", b.rho},
                           {"beta", b.beta},
                           {"m_f", b.m_f},
                           {"i_max", b.i_max},
                           {"value", num(b.lambda)},
                           {"available", b.available}});
        }
        j["lambda_star_bound"] = {
            {"value", num(s.lambda_star)},
            {"harnack_degenerate", s.degenerate},
            {"i0_max", s.i0_max},
            {"m_f", s.m_f},
            {"n_star", s.n_star ? json(*s.n_star) : json(nullptr)},
            {"sequence", seq},
            {"provenance", "(9R/32) [min{m_f(R/4,0)/2, (N-1)/(8R)} max_{0<=r<=R/2} I_0(r)]^{-1} + R/32 + 1; "
                           "sequence: same threshold on [1/n, R] with source f(r - 1/n, s)"}};
    } else {
        j["lambda_star_bound"] = nullptr;
    }
    if (r.sufficient) {
        const auto& s = *r.sufficient;
        j["sufficient_condition"] = {
            {"lambda", num(r.lambda0)},
            {"holds", s.holds},
            {"lhs", s.lhs},
            {"rhs", num(s.rhs)},
            {"threshold", num(s.threshold)},
            {"provenance", "R^N < lambda min mu int_0^R (R-s)^N p(s) ds, evaluated at lambda0"}};
    } else {
        j["sufficient_condition"] = nullptr;
    }
    return j;
}

json family_json(const FamilyLimitReport& rep) {
    json members = json::array();
    for (const auto& m : rep.members) {
        json lam = json::array();
        for (double x : m.lambda) lam.push_back(num(x));
        members.push_back(
            {{"n", m.n}, {"distance", num(m.distance)}, {"anchor_lambda1", opt_num(m.anchor_lambda1)}, {"lambda", lam}});
    }
    json ball = json::array();
    for (double x : rep.lambda_ball) ball.push_back(num(x));
    return json{{"s", rep.s},
                {"lambda_ball", ball},
                {"ball_lambda1", opt_num(rep.ball_lambda1)},
                {"members", members},
                {"converging", rep.converging}};
}

}  // namespace

int run_scenario(const ScenarioConfig& config, RunMode mode, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const fs::path out = config.output_dir;
    std::vector<std::string> written;
    try {
        fs::create_directories(out);
        fs::remove(out / "PARTIAL");
        fs::remove(out / "error.json");
        const RadialProblem problem = make_problem(config);
        const SweepOptions opt = sweep_options(config);

        if (mode == RunMode::Full || mode == RunMode::Bounds) {
            const auto grid = make_s_grid(problem.domain(), config.s_count, config.spacing);
            const Branch branch = sweep_branch(problem, grid, opt);
            log << "branch: " << branch.solved_count() << "/" << branch.points.size() << " points solved, "
                << to_string(branch.shape) << "\n";
            if (branch.classification_warning) log << "warning: " << *branch.classification_warning << "\n";
            if (mode == RunMode::Full) {
                const std::string name = config.format == "csv" ? "branch.csv" : "branch.json";
                write_atomic(out / name, config.format == "csv" ? branch_csv(branch) : branch_json(branch));
                written.push_back(name);
                write_profiles(branch, out / "profiles", config.profile_count);
                written.push_back("profiles/");
            }
            const BoundsReport bounds = compute_bounds(problem, branch, config.n_list, config.root_tol);
            write_atomic(out / "bounds.json", bounds_json(config, bounds).dump(2) + "\n");
            written.push_back("bounds.json");
        }
        if (mode == RunMode::Family || (mode == RunMode::Full && config.inner_radius == 0.0 && !config.n_list.empty())) {
            if (config.inner_radius != 0.0) {
                throw PreconditionError("family: the regularized family needs inner_radius = 0");
            }
            const FamilyLimitReport rep = family_limit_pipeline(problem, config.n_list, 24, opt);
            write_atomic(out / "family_limit.json", family_json(rep).dump(2) + "\n");
            written.push_back("family_limit.json");
            if (!rep.converging) log << "warning: family-limit distances are not decreasing\n";
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const json manifest{{"config", to_json(config)},
                            {"library_version", kVersion},
                            {"mode", mode == RunMode::Full ? "sweep" : mode == RunMode::Bounds ? "bounds" : "family"},
                            {"outputs", written},
                            {"threads", sweep_threads(config.threads)},
                            {"wall_time_seconds", wall}};
        write_atomic(out / "manifest.json", manifest.dump(2) + "\n");
        return 0;
    } catch (const std::exception& e) {
        const json rec = error_record("module_failure", e.what());
        std::cerr << rec.dump() << "\n";
        try {
            json partial = rec;
            partial["written"] = written;
            write_atomic(out / "PARTIAL", partial.dump(2) + "\n");
            write_atomic(out / "error.json", rec.dump(2) + "\n");
        } catch (const std::exception&) {
        }
        return 1;
    }
}

namespace {

struct Check {
    std::string name;
    double measured;
    double expected;
    bool pass;
};

void report(std::ostream& out, const Check& c) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << format_number(c.measured)
        << " expected=" << format_number(c.expected) << "\n";
}

std::vector<Check> identity_checks() {
    std::vector<Check> v;
    double worst = 0.0;
    for (int i = -999; i <= 999; ++i) {
        const double y = i / 1000.0;
        worst = std::max(worst, std::abs(phi1_inverse(phi1(y)) - y));
    }
    v.push_back({"phi1_inverse(phi1(y)) round trip, max error", worst, 0.0, worst < 1e-12});
    v.push_back({"phi1(0.6)", phi1(0.6), 0.75, std::abs(phi1(0.6) - 0.75) < 1e-15});
    double h_err = 0.0;
    for (int i = -99; i <= 99; ++i) {
        const double y = i / 100.0;
        h_err = std::max(h_err, std::abs(h_cutoff(y) * std::pow(1.0 - y * y, -1.5) - 1.0));
    }
    v.push_back({"h(y) phi1'(y) = 1, max error", h_err, 0.0, h_err < 1e-12});
    return v;
}

std::vector<Check> greens_checks() {
    std::vector<Check> v;
    const GreenKernel k3({3, 0.0, 1.0});
    const GreenKernel k2({2, 0.0, 1.0});
    const double m3 = I_delta_max(k3).value;
    const double m2 = I_delta_max(k2).value;
    const double ref2 = 0.25 * (0.25 + 0.5 * std::log(2.0));
    v.push_back({"I_0 max, N=3 R=1", m3, 1.0 / 12.0, std::abs(m3 - 1.0 / 12.0) < 1e-8});
    v.push_back({"I_0 max, N=2 R=1", m2, ref2, std::abs(m2 - ref2) < 1e-8});
    const auto g = green_apply(k3, [](double) { return 1.0; }, QuadratureGrid::uniform({3, 0.0, 1.0}, 64));
    v.push_back({"green_apply h=1, N=3: u(0)", g.u.front(), 1.0 / 6.0, std::abs(g.u.front() - 1.0 / 6.0) < 1e-8});
    const double beta = beta_of_epsilon(GreenKernel({3, 0.5, 1.0}), 0.1);
    v.push_back({"beta(0.1), N=3 delta=0.5", beta, 1.0 / 9.0, std::abs(beta - 1.0 / 9.0) < 1e-12});
    for (const RadialDomain& d : {RadialDomain{2, 0.0, 1.0}, RadialDomain{3, 0.0, 1.0}, RadialDomain{2, 0.3, 1.0},
                                  RadialDomain{3, 0.25, 1.0}}) {
        const auto c = check_I_delta_closed_form(GreenKernel(d));
        char name[96];
        std::snprintf(name, sizeof name, "I_delta closed form vs quadrature, N=%d delta=%g", d.dimension, d.inner);
        v.push_back({name, c.max_relative_error, 0.0, c.conforms && c.max_relative_error < 1e-8});
    }
    return v;
}

std::vector<Check> eigen_checks() {
    std::vector<Check> v;
    const double j01 = 2.404825557695773;
    const double l2 = principal_eigenvalue(RadialDomain{2, 0.0, 1.0}, Weight::constant(1.0)).lambda1;
    v.push_back({"lambda_1 unit disc", l2, j01 * j01, std::abs(l2 - j01 * j01) < 1e-6 * j01 * j01});
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double l3 = principal_eigenvalue(RadialDomain{3, 0.0, 1.0}, Weight::constant(1.0)).lambda1;
    v.push_back({"lambda_1 unit ball N=3", l3, pi2, std::abs(l3 - pi2) < 1e-6 * pi2});
    const RadialDomain ann{2, 0.5, 1.0};
    const double a = principal_eigenvalue(ann, Weight::constant(1.0)).lambda1;
    const double b = principal_eigenvalue(ann, Weight::constant(7.0)).lambda1;
    v.push_back({"lambda_1(7m) * 7 / lambda_1(m)", 7.0 * b / a, 1.0, std::abs(7.0 * b / a - 1.0) < 1e-10});
    return v;
}

std::vector<Check> fold_bound_checks() {
    std::vector<Check> v;
    const RadialProblem pb({2, 0.0, 1.0}, power_family(Weight::constant(1.0), 2.0));
    const auto grid = make_s_grid(pb.domain(), 64, GridSpacing::LogNearEnds);
    const Branch b = sweep_branch(pb, grid);
    const Thresholds t = extract_thresholds(pb, b);
    const double fold = t.fold_lambda.value_or(std::numeric_limits<double>::quiet_NaN());
    v.push_back({"fold Lambda > 2N/(max mu R^{q+1}), q=2 N=2 R=1", fold, 4.0, fold > 4.0});
    return v;
}

}  // namespace

int run_verify(const std::string& suite, std::ostream& out) {
    static const std::vector<std::string> known{"identity", "greens", "eigen", "theoremB", "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end()) {
        out << error_record("unknown_suite", "unknown verification suite '" + suite + "'",
                            "suite in {identity, greens, eigen, theoremB, all}")
                   .dump()
            << "\n";
        return 2;
    }
    std::vector<Check> checks;
    auto add = [&](std::vector<Check> more) { checks.insert(checks.end(), more.begin(), more.end()); };
    try {
        if (suite == "identity" || suite == "all") add(identity_checks());
        if (suite == "greens" || suite == "all") add(greens_checks());
        if (suite == "eigen" || suite == "all") add(eigen_checks());
        if (suite == "theoremB" || suite == "all") add(fold_bound_checks());
    } catch (const std::exception& e) {
        out << "FAIL " << suite << ": " << e.what() << "\n";
        return 1;
    }
    bool ok = true;
    for (const auto& c : checks) {
        report(out, c);
        ok = ok && c.pass;
    }
    out << (ok ? "all checks passed" : "some checks failed") << " (" << checks.size() << ")\n";
    return ok ? 0 : 1;
}

}  // namespace minkbranch::cli
