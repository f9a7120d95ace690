#pragma once

#include "minkbranch/greens.hpp"
#include "minkbranch/numerics.hpp"
#include "minkbranch/problem.hpp"
#include "minkbranch/shoot.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minkbranch {

enum class GridSpacing { Linear, LogNearEnds };

/// `count` heights in [eps, W - eps] with W = R - delta and eps = eps_fraction W.
/// LogNearEnds clusters points at both ends (logistic map of a uniform grid).
std::vector<double> make_s_grid(const RadialDomain& domain, int count, GridSpacing spacing,
                                double eps_fraction = 1e-4);

enum class PointStatus { Solved, NoSolution, Failed };
std::string to_string(PointStatus status);

struct BranchPoint {
    double s = 0.0;
    PointStatus status = PointStatus::NoSolution;
    double lambda = 0.0;
    bool multiple = false;
    /// Signed u(R) of the recorded profile.
    double u_at_R_residual = 0.0;
    double min_one_minus_abs_uprime = 0.0;
    /// measure_gradient_deviation at threshold 0.1.
    double meas_dev = 0.0;
    double flux_residual = 0.0;
    bool monotone = false;
    bool positive = false;
    std::string message;
    ProfileSamples profile;
};

enum class BranchShape { A2Bifurcation, A3FromZero, A4Fold };
std::string to_string(BranchShape shape);
/// Shape implied by the declared zero limit.
BranchShape declared_shape(const Nonlinearity& f);

struct Branch {
    RadialDomain domain;
    BranchShape shape = BranchShape::A2Bifurcation;
    std::vector<BranchPoint> points;
    /// lambda_1(m, delta) when the zero limit is linear.
    std::optional<double> anchor_lambda1;
    /// Set when the small-s behaviour of the computed points contradicts the
    /// declared zero limit.
    std::optional<std::string> classification_warning;

    [[nodiscard]] std::size_t solved_count() const;
};

struct SweepOptions {
    /// Root tolerance: |u(R)| < tol R.
    double tol = 1e-9;
    /// 0: 0.01 tol within [1e-12, 1e-6].
    double integrator_tol = 0.0;
    /// 0: MINKBRANCH_THREADS or the hardware concurrency.
    int threads = 0;
    bool keep_profiles = true;
    /// Cells for the anchor eigenvalue of linear problems.
    int eigen_cells = 1024;
};

/// Worker count: `requested` if positive, else MINKBRANCH_THREADS capped by the
/// hardware concurrency.
int sweep_threads(int requested = 0);

/// lambda(s) at every grid point, computed concurrently and stored in grid
/// order. DomainError for a grid that is not strictly increasing inside
/// [eps_s, W - eps_s]; SweepFailure when more than 20% of the points have no
/// solution, not counting the leading run of small-s gaps of a fold branch.
Branch sweep_branch(const RadialProblem& problem, std::span<const double> s_grid,
                    const SweepOptions& options = {});

/// Minimum of lambda(s) near the smallest sampled value: golden section on the
/// neighbouring cells of the discrete argmin. `edge` is set when the argmin is
/// the first or last sample.
struct BranchMinimum {
    double s = 0.0;
    double lambda = 0.0;
    std::size_t index = 0;
    bool edge = false;
};
BranchMinimum refine_branch_minimum(const std::function<double(double)>& lambda_of_s,
                                    std::span<const double> s, std::span<const double> lambda);

struct Thresholds {
    /// inf lambda over the branch.
    double lambda_star = 0.0;
    double s_star = 0.0;
    /// Interior minimum of lambda(s) for a fold branch.
    std::optional<double> fold_lambda;
    std::optional<double> fold_s;
};

/// PreconditionError for a branch with no solved point; FoldNotBracketed when
/// the minimum of a fold branch sits on the grid edge.
Thresholds extract_thresholds(const RadialProblem& problem, const Branch& branch, double tol = 1e-9);

/// Threshold (9/8) rho [min{m_f/2, (N-1)/(8R)} I]^{-1} + rho/8.
double threshold_formula(double rho, double m_f, int dimension, double outer, double i_max);

struct DeltaBound {
    double rho0 = 0.0;
    double eps = 0.0;
    double beta = 0.0;
    double m_f = 0.0;
    double i_max = 0.0;
    double t_star = 0.0;
    bool closed_form_conforms = true;
    double lambda_delta = 0.0;
};

/// Explicit threshold on an annulus with rho0 = (R-delta)/4, eps = (R-delta)/8
/// and m_f = min f over [delta, R] x [beta rho0, rho0].
/// BoundUnavailable when delta = 0 (beta = 0) or (R-delta)/2 <= delta.
DeltaBound lambda_delta_bound(const RadialProblem& problem);

struct RegularizedBound {
    int n = 0;
    double rho = 0.0;
    double beta = 0.0;
    double m_f = 0.0;
    double i_max = 0.0;
    double lambda = 0.0;
    /// false when (R - 1/n)/2 <= 1/n: the integration range of I is empty.
    bool available = true;
};

struct StarBound {
    double i0_max = 0.0;
    double m_f = 0.0;
    /// Infinite when m_f(R/4, 0) = 0: at delta = 0 the Harnack constant is 0,
    /// so the slab reaches u = 0.
    double lambda_star = 0.0;
    bool degenerate = false;
    std::vector<RegularizedBound> sequence;
    /// Smallest tested n from which every later value is below lambda_star.
    std::optional<int> n_star;
};

/// Ball threshold plus the shifted-annulus values for each n. Their m_f is the
/// minimum of g_n over r in (1/n, R], i.e. of f over [0, R - 1/n].
/// PreconditionError unless delta = 0; DomainError when R/4 >= alpha.
StarBound lambda_star_bound(const RadialProblem& problem, const std::vector<int>& n_list);

struct SufficientCheck {
    bool holds = false;
    double lhs = 0.0;  // R^N
    double rhs = 0.0;  // lambda min mu int_0^R (R-s)^N p(s) ds
    double min_mu = 0.0;
    double integral = 0.0;
    /// lambda at which both sides are equal.
    double threshold = 0.0;
};

/// Strict inequality R^N < lambda min mu int_0^R (R-s)^N p(s) ds.
/// PreconditionError unless delta = 0; QuadratureFailure for a non-finite integral.
SufficientCheck check_sufficient_condition(const RadialProblem& problem, double lambda, const Weight& mu,
                                           const std::function<double(double)>& p);

/// Profile on [1/n, R] extended to [0, R] by its value at 1/n.
ProfileSamples extend_to_ball(const ProfileSamples& annulus_profile, int flat_points = 16);

struct FamilyMember {
    int n = 0;
    std::vector<double> lambda;
    double distance = 0.0;
    std::optional<double> anchor_lambda1;
};

struct FamilyLimitReport {
    std::vector<double> s;
    std::vector<double> lambda_ball;
    std::vector<FamilyMember> members;
    std::optional<double> ball_lambda1;
    /// Distances strictly decreasing along n_list.
    bool converging = false;
};

/// Branches of the shifted annulus problems against the ball branch on a
/// common grid below 0.9 (R - 1/min n). Non-decreasing distances are reported
/// through `converging`, not thrown.
FamilyLimitReport family_limit_pipeline(const RadialProblem& problem, const std::vector<int>& n_list,
                                        int grid_count = 24, const SweepOptions& options = {});

struct BoundsReport {
    std::optional<double> lambda1;
    Thresholds thresholds;
    std::optional<DeltaBound> delta_bound;
    std::optional<std::string> delta_bound_unavailable;
    std::optional<StarBound> star_bound;
    double lambda0 = 0.0;
    std::optional<SufficientCheck> sufficient;
};

/// Everything the explicit bounds need, for a branch already swept.
/// The sufficient condition is evaluated at lambda0 when f has a product form
/// and delta = 0.
BoundsReport compute_bounds(const RadialProblem& problem, const Branch& branch,
                            const std::vector<int>& n_list, double tol = 1e-9);

}  // namespace minkbranch
