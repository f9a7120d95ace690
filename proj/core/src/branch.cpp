#include "minkbranch/branch.hpp"

#include "minkbranch/eigen.hpp"
#include "minkbranch/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace minkbranch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double record_tol(const SweepOptions& opt) {
    return opt.integrator_tol > 0.0 ? opt.integrator_tol : std::clamp(0.01 * opt.tol, 1e-12, 1e-6);
}

double min_abs_f(const std::function<double(double, double)>& f, double r0, double r1, double u0,
                 double u1) {
    return box_minimize([&](double r, double u) { return std::abs(f(r, u)); }, r0, r1, u0, u1).value;
}

}  // namespace

std::vector<double> make_s_grid(const RadialDomain& domain, int count, GridSpacing spacing,
                                double eps_fraction) {
    domain.validate();
    if (count < 2) throw DomainError("make_s_grid: need at least 2 points");
    if (!(eps_fraction > 0.0 && eps_fraction < 0.5)) throw DomainError("make_s_grid: eps fraction in (0, 1/2)");
    const double width = domain.width();
    const double eps = eps_fraction * width;
    if (spacing == GridSpacing::Linear) return linspace(eps, width - eps, count);
    const double span = std::log((width - eps) / eps);
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
        const double x = -span + 2.0 * span * i / (count - 1);
        grid[i] = std::clamp(width / (1.0 + std::exp(-x)), eps, width - eps);
    }
    grid.front() = eps;
    grid.back() = width - eps;
    return grid;
}

std::string to_string(PointStatus status) {
    switch (status) {
        case PointStatus::Solved: return "solved";
        case PointStatus::NoSolution: return "no_solution_at_this_norm";
        case PointStatus::Failed: return "failed";
    }
    return "unknown";
}

std::string to_string(BranchShape shape) {
    switch (shape) {
        case BranchShape::A2Bifurcation: return "A2_BIFURCATION";
        case BranchShape::A3FromZero: return "A3_FROM_ZERO";
        case BranchShape::A4Fold: return "A4_FOLD";
    }
    return "unknown";
}

BranchShape declared_shape(const Nonlinearity& f) {
    switch (f.zero_limit()) {
        case ZeroLimit::Linear: return BranchShape::A2Bifurcation;
        case ZeroLimit::Superlinear: return BranchShape::A3FromZero;
        case ZeroLimit::Sublinear: return BranchShape::A4Fold;
    }
    return BranchShape::A2Bifurcation;
}

std::size_t Branch::solved_count() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const BranchPoint& p) {
        return p.status == PointStatus::Solved;
    }));
}

int sweep_threads(int requested) {
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MINKBRANCH_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(std::min<long>(v, hw));
    }
    return hw;
}

namespace {

BranchPoint compute_point(const RadialProblem& problem, double s, const SweepOptions& opt) {
    BranchPoint p;
    p.s = s;
    try {
        const LambdaSolve ls = solve_lambda_for_s(problem, s, opt.tol, opt.integrator_tol);
        p.multiple = ls.multiple;
        if (ls.status != SolveStatus::Solved) {
            p.status = PointStatus::NoSolution;
            p.lambda = kNaN;
            return p;
        }
        p.status = PointStatus::Solved;
        p.lambda = ls.lambda;
        const ShotResult shot = integrate_profile(problem, ls.lambda, s, record_tol(opt));
        p.u_at_R_residual = shot.terminal;
        p.min_one_minus_abs_uprime = shot.min_one_minus_abs_uprime;
        p.meas_dev = measure_gradient_deviation(shot, 0.1);
        p.flux_residual = flux_identity_residual(problem, shot);
        p.monotone = shot.monotone;
        p.positive = shot.positive;
        if (opt.keep_profiles) p.profile = shot.profile;
    } catch (const Error& e) {
        p.status = PointStatus::Failed;
        p.lambda = kNaN;
        p.message = e.what();
    }
    return p;
}

void check_grid(const RadialDomain& d, std::span<const double> grid) {
    if (grid.empty()) throw DomainError("sweep_branch: empty s grid");
    const double width = d.width();
    const double eps = 1e-4 * width * (1.0 - 1e-9);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= eps && grid[i] <= width - eps)) {
            throw DomainError("sweep_branch: s grid must lie in [eps_s, R - delta - eps_s]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("sweep_branch: s grid must be strictly increasing");
    }
}

std::optional<std::string> cross_check_shape(const Branch& b) {
    std::vector<double> lam;
    for (const auto& p : b.points) {
        if (p.status == PointStatus::Solved) lam.push_back(p.lambda);
        if (lam.size() == 3) break;
    }
    if (lam.size() < 3) return std::nullopt;
    switch (b.shape) {
        case BranchShape::A2Bifurcation:
            if (b.anchor_lambda1 && std::abs(lam[0] - *b.anchor_lambda1) > 0.05 * *b.anchor_lambda1) {
                return "declared linear at zero, but lambda(s) at the smallest s is not near lambda_1";
            }
            break;
        case BranchShape::A3FromZero:
            if (!(lam[0] < lam[1] && lam[1] < lam[2])) {
                return "declared superlinear at zero, but lambda(s) does not decrease toward s = 0";
            }
            break;
        case BranchShape::A4Fold:
            if (!(lam[0] > lam[1] && lam[1] > lam[2])) {
                return "declared sublinear at zero, but lambda(s) does not grow toward s = 0";
            }
            break;
    }
    return std::nullopt;
}

}  // namespace

Branch sweep_branch(const RadialProblem& problem, std::span<const double> s_grid, const SweepOptions& options) {
    check_grid(problem.domain(), s_grid);
    Branch b;
    b.domain = problem.domain();
    b.shape = declared_shape(problem.nonlinearity());
    if (const auto& m = problem.nonlinearity().linear_weight()) {
        b.anchor_lambda1 = principal_eigenvalue(problem.domain(), *m, options.eigen_cells).lambda1;
    }

    b.points.resize(s_grid.size());
    const int workers = std::min<int>(sweep_threads(options.threads), static_cast<int>(s_grid.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < s_grid.size(); i = next++) {
            try {
                b.points[i] = compute_point(problem, s_grid[i], options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t first_counted = 0;
    if (b.shape == BranchShape::A4Fold) {
        while (first_counted < b.points.size() && b.points[first_counted].status != PointStatus::Solved) {
            ++first_counted;
        }
    }
    std::size_t gaps = 0;
    for (std::size_t i = first_counted; i < b.points.size(); ++i) {
        if (b.points[i].status != PointStatus::Solved) ++gaps;
    }
    if (gaps > 0.2 * b.points.size()) {
        throw SweepFailure("sweep_branch: " + std::to_string(gaps) + " of " + std::to_string(b.points.size()) +
                           " points have no solution");
    }
    b.classification_warning = cross_check_shape(b);
    return b;
}

BranchMinimum refine_branch_minimum(const std::function<double(double)>& lambda_of_s, std::span<const double> s,
                                    std::span<const double> lambda) {
    if (s.empty() || s.size() != lambda.size()) throw DomainError("refine_branch_minimum: bad samples");
    std::size_t best = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::isnan(lambda[i])) continue;
        if (best == s.size() || lambda[i] < lambda[best]) best = i;
    }
    if (best == s.size()) throw PreconditionError("refine_branch_minimum: no finite samples");
    BranchMinimum out{s[best], lambda[best], best, best == 0 || best + 1 == s.size()};
    if (out.edge) return out;
    const double lo = s[best - 1];
    const double hi = s[best + 1];
    const Extremum e = golden_section_minimize(lambda_of_s, lo, hi, 1e-10 * (hi - lo));
    if (e.value < out.lambda) {
        out.s = e.x;
        out.lambda = e.value;
    }
    return out;
}

Thresholds extract_thresholds(const RadialProblem& problem, const Branch& branch, double tol) {
    std::vector<double> s;
    std::vector<double> lam;
    for (const auto& p : branch.points) {
        if (p.status != PointStatus::Solved) continue;
        s.push_back(p.s);
        lam.push_back(p.lambda);
    }
    if (s.empty()) throw PreconditionError("extract_thresholds: branch has no solved point");
    auto lambda_of_s = [&](double x) {
        const LambdaSolve ls = solve_lambda_for_s(problem, x, tol);
        return ls.status == SolveStatus::Solved ? ls.lambda : kInf;
    };
    const BranchMinimum m = refine_branch_minimum(lambda_of_s, s, lam);
    Thresholds t;
    t.lambda_star = m.lambda;
    t.s_star = m.s;
    if (branch.shape == BranchShape::A4Fold) {
        if (m.edge) {
            throw FoldNotBracketed("extract_thresholds: minimum of lambda(s) sits at the grid edge s = " +
                                   std::to_string(m.s));
        }
        t.fold_lambda = m.lambda;
        t.fold_s = m.s;
    }
    return t;
}

double threshold_formula(double rho, double m_f, int dimension, double outer, double i_max) {
    const double c = std::min(0.5 * m_f, (dimension - 1) / (8.0 * outer));
    if (!(c > 0.0) || !(i_max > 0.0)) return kInf;
    return 9.0 / 8.0 * rho / (c * i_max) + rho / 8.0;
}

DeltaBound lambda_delta_bound(const RadialProblem& problem) {
    const RadialDomain& d = problem.domain();
    if (d.inner == 0.0) {
        throw BoundUnavailable("lambda_delta_bound: beta = 0 at delta = 0; use the regularized family");
    }
    if (!(0.5 * d.width() > d.inner)) {
        throw BoundUnavailable("lambda_delta_bound: (R - delta)/2 <= delta leaves no integration range");
    }
    DeltaBound b;
    b.rho0 = d.width() / 4.0;
    b.eps = d.width() / 8.0;
    if (!(b.rho0 < problem.nonlinearity().alpha())) throw DomainError("lambda_delta_bound: rho0 reaches alpha");
    const GreenKernel kernel(d);
    b.beta = beta_of_epsilon(kernel, b.eps);
    if (!(b.beta > 0.0)) throw BoundUnavailable("lambda_delta_bound: beta = 0");
    const Nonlinearity& f = problem.nonlinearity();
    b.m_f = min_abs_f([&](double r, double u) { return f(r, u); }, d.inner, d.outer, b.beta * b.rho0, b.rho0);
    b.closed_form_conforms = check_I_delta_closed_form(kernel).conforms;
    const IDeltaMax im = I_delta_max(kernel);
    b.i_max = im.value;
    b.t_star = im.t_star;
    b.lambda_delta = threshold_formula(b.rho0, b.m_f, d.dimension, d.outer, b.i_max);
    return b;
}

StarBound lambda_star_bound(const RadialProblem& problem, const std::vector<int>& n_list) {
    const RadialDomain& d = problem.domain();
    if (d.inner != 0.0) throw PreconditionError("lambda_star_bound: needs a ball (delta = 0)");
    const Nonlinearity& f = problem.nonlinearity();
    const double big_r = d.outer;
    if (!(big_r / 4.0 < f.alpha())) throw DomainError("lambda_star_bound: m_f slab reaches alpha");
    StarBound out;
    const GreenKernel ball(d);
    out.i0_max = I_delta_max(ball).value;
    // beta(eps) = 0 on the ball, so the slab is [0, R/4]
    out.m_f = min_abs_f([&](double r, double u) { return f(r, u); }, 0.0, big_r, 0.0, big_r / 4.0);
    const double c = std::min(0.5 * out.m_f, (d.dimension - 1) / (8.0 * big_r));
    out.lambda_star = c > 0.0 ? 9.0 * big_r / 32.0 / (c * out.i0_max) + big_r / 32.0 + 1.0 : kInf;
    out.degenerate = !std::isfinite(out.lambda_star);

    for (int n : n_list) {
        if (n < 1 || !(1.0 / n < big_r)) throw InvalidRegularization("lambda_star_bound: every 1/n must be below R");
        const double cut = 1.0 / n;
        RegularizedBound rb;
        rb.n = n;
        rb.rho = (big_r - cut) / 4.0;
        RadialDomain annulus = d;
        annulus.inner = cut;
        if (!(0.5 * annulus.width() > cut)) {
            rb.available = false;
            rb.lambda = kInf;
            out.sequence.push_back(rb);
            continue;
        }
        const GreenKernel kernel(annulus);
        rb.beta = beta_of_epsilon(kernel, annulus.width() / 8.0);
        // g_n(r, u) = f(r - 1/n, u) on (1/n, R]
        rb.m_f = min_abs_f([&](double t, double u) { return f(t, u); }, 0.0, big_r - cut, rb.beta * rb.rho, rb.rho);
        rb.i_max = I_delta_max(kernel).value;
        rb.lambda = threshold_formula(rb.rho, rb.m_f, d.dimension, big_r, rb.i_max);
        out.sequence.push_back(rb);
    }
    for (std::size_t i = out.sequence.size(); i-- > 0;) {
        if (!(out.sequence[i].lambda < out.lambda_star)) break;
        out.n_star = out.sequence[i].n;
    }
    return out;
}

SufficientCheck check_sufficient_condition(const RadialProblem& problem, double lambda, const Weight& mu,
                                           const std::function<double(double)>& p) {
    const RadialDomain& d = problem.domain();
    if (d.inner != 0.0) throw PreconditionError("check_sufficient_condition: needs a ball (delta = 0)");
    const int n = d.dimension;
    const double big_r = d.outer;
    SufficientCheck c;
    c.min_mu = mu.min_on(0.0, big_r);
    c.integral = integrate_panels([&](double s) { return std::pow(big_r - s, n) * p(s); }, 0.0, big_r, 16,
                                  gauss_legendre(20), true);
    if (!std::isfinite(c.integral)) throw QuadratureFailure("check_sufficient_condition: p is not integrable");
    c.lhs = std::pow(big_r, n);
    c.rhs = lambda * c.min_mu * c.integral;
    c.threshold = c.min_mu * c.integral > 0.0 ? c.lhs / (c.min_mu * c.integral) : kInf;
    c.holds = c.lhs < c.rhs;
    return c;
}

ProfileSamples extend_to_ball(const ProfileSamples& annulus_profile, int flat_points) {
    if (annulus_profile.size() == 0) return {};
    const double inner = annulus_profile.r.front();
    const double value = annulus_profile.u.front();
    ProfileSamples out;
    for (int k = 0; k < flat_points && inner > 0.0; ++k) out.push(inner * k / flat_points, value, 0.0, 0.0);
    for (std::size_t i = 0; i < annulus_profile.size(); ++i) {
        out.push(annulus_profile.r[i], annulus_profile.u[i], annulus_profile.uprime[i], annulus_profile.w[i]);
    }
    return out;
}

FamilyLimitReport family_limit_pipeline(const RadialProblem& problem, const std::vector<int>& n_list,
                                        int grid_count, const SweepOptions& options) {
    const RadialDomain& d = problem.domain();
    if (d.inner != 0.0) throw PreconditionError("family_limit_pipeline: needs a ball (delta = 0)");
    if (n_list.empty()) throw DomainError("family_limit_pipeline: empty n list");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1 || !(1.0 / n_list[i] < d.outer)) {
            throw InvalidRegularization("family_limit_pipeline: every 1/n must be below R");
        }
        if (i > 0 && !(n_list[i] > n_list[i - 1])) throw DomainError("family_limit_pipeline: n list must increase");
    }
    const double common = 0.9 * (d.outer - 1.0 / n_list.front());
    RadialDomain span = d;
    span.outer = common;
    FamilyLimitReport rep;
    rep.s = make_s_grid(span, grid_count, GridSpacing::LogNearEnds, 1e-3 / 0.9);

    SweepOptions opt = options;
    opt.keep_profiles = false;
    const Branch ball = sweep_branch(problem, rep.s, opt);
    rep.ball_lambda1 = ball.anchor_lambda1;
    for (const auto& p : ball.points) rep.lambda_ball.push_back(p.lambda);

    for (int n : n_list) {
        const Branch br = sweep_branch(regularized_problem(problem, n), rep.s, opt);
        FamilyMember m;
        m.n = n;
        m.anchor_lambda1 = br.anchor_lambda1;
        for (std::size_t i = 0; i < br.points.size(); ++i) {
            m.lambda.push_back(br.points[i].lambda);
            if (br.points[i].status == PointStatus::Solved && ball.points[i].status == PointStatus::Solved) {
                m.distance = std::max(m.distance, std::abs(br.points[i].lambda - ball.points[i].lambda));
            }
        }
        rep.members.push_back(std::move(m));
    }
    rep.converging = true;
    for (std::size_t i = 1; i < rep.members.size(); ++i) {
        if (!(rep.members[i].distance < rep.members[i - 1].distance)) rep.converging = false;
    }
    return rep;
}

BoundsReport compute_bounds(const RadialProblem& problem, const Branch& branch, const std::vector<int>& n_list,
                            double tol) {
    BoundsReport rep;
    rep.lambda1 = branch.anchor_lambda1;
    rep.thresholds = extract_thresholds(problem, branch, tol);
    if (problem.inner() > 0.0) {
        try {
            rep.delta_bound = lambda_delta_bound(problem);
        } catch (const BoundUnavailable& e) {
            rep.delta_bound_unavailable = e.what();
        }
    } else {
        rep.delta_bound_unavailable = "delta = 0: beta(eps) = 0, the regularized family is used instead";
        rep.star_bound = lambda_star_bound(problem, n_list);
    }
    rep.lambda0 = std::max(rep.thresholds.lambda_star, rep.lambda1.value_or(0.0));
    const auto& product = problem.nonlinearity().product();
    if (problem.inner() == 0.0 && product) {
        rep.sufficient = check_sufficient_condition(problem, rep.lambda0, product->mu, product->p);
    }
    return rep;
}

}  // namespace minkbranch
