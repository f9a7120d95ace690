#pragma once

#include "minkbranch/problem.hpp"

#include <optional>
#include <vector>

namespace minkbranch {

/// One sampled point of a radial profile: height u, slope u' and flux
/// w = r^{N-1} phi1(u').
struct ProfileSamples {
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> uprime;
    std::vector<double> w;

    [[nodiscard]] std::size_t size() const noexcept { return r.size(); }
    void push(double r_, double u_, double up, double w_);
};

struct ShotResult {
    double lambda = 0.0;
    double s = 0.0;
    /// u at the last integrated radius (R unless the shot stopped at a zero).
    double terminal = 0.0;
    bool reached_end = true;
    /// First zero of u inside (delta, R) when integration was asked to stop there.
    std::optional<double> zero_radius;

    /// Every accepted integrator step (dense, used for quadratures).
    ProfileSamples steps;
    /// Output profile: the uniform output grid plus intermediate steps spaced
    /// at least 1e-4 (R - delta) apart.
    ProfileSamples profile;
    /// u on the uniform output grid delta + j (R - delta)/(points - 1).
    std::vector<double> uniform_u;

    double min_one_minus_abs_uprime = 1.0;
    /// u strictly decreasing along `profile`.
    bool monotone = true;
    /// u > 0 at every profile point with r < R.
    bool positive = true;
};

struct ShotOptions {
    /// Uniform output points, including both ends.
    int output_points = 256;
    /// Stop at the first zero of u (located by Hermite interpolation).
    bool stop_at_zero = false;
    /// Keep the step trace and the profile; off for residual-only shots.
    bool record = true;
};

/// Integrates u' = phi1_inverse(w / r^{N-1}), w' = -lambda r^{N-1} f~(r, u)
/// from u(delta) = s, w(delta) = 0 with Dormand-Prince 5(4) at local tolerance
/// tol. For delta = 0 the first 1e-6 R are covered by the constant-source
/// solution through (0, s).
/// DomainError for s outside (0, R - delta), lambda < 0 or tol outside
/// [1e-12, 1e-6]; StiffnessError on step-size underflow.
ShotResult integrate_profile(const RadialProblem& problem, double lambda, double s, double tol = 1e-9,
                             const ShotOptions& options = {});

/// Same initial data, integrated in the second-order form
///   u'' = -lambda f~(r, u) h(u') - (N-1)(u' - u'^3)/r.
/// Kept as a cross-check of the flux formulation.
ShotResult integrate_second_order_form(const RadialProblem& problem, double lambda, double s,
                                       double tol = 1e-9, const ShotOptions& options = {});

/// u(R; lambda, s).
double shooting_residual(const RadialProblem& problem, double lambda, double s, double tol = 1e-9);

/// u(R) while u stays positive on [delta, R), else -(R - r_zero) with r_zero
/// the first zero. Continuous in lambda, and its zeros are exactly the
/// positive solutions.
double positive_residual(const RadialProblem& problem, double lambda, double s, double tol = 1e-9);

enum class SolveStatus { Solved, NoSolutionAtThisNorm };

struct LambdaSolve {
    SolveStatus status = SolveStatus::NoSolutionAtThisNorm;
    double lambda = 0.0;
    /// |u(R)| at the returned lambda.
    double residual = 0.0;
    /// Sign changes of the residual seen on the geometric scan.
    int sign_changes = 0;
    bool multiple = false;
    int evaluations = 0;
};

/// lambda > 0 with |u(R)| < tol R: scan lambda = 2^k, k = -20..20, then Brent
/// on the first bracket (the smallest root). Shots run at `integrator_tol`,
/// or at 0.01 tol (within [1e-12, 1e-6]) when it is 0.
LambdaSolve solve_lambda_for_s(const RadialProblem& problem, double s, double tol = 1e-9,
                               double integrator_tol = 0.0);

/// Heights s in (0, R - delta) of the positive solutions at a fixed lambda:
/// sign changes of positive_residual on a log-near-ends grid, refined by Brent.
std::vector<double> solutions_at_lambda(const RadialProblem& problem, double lambda,
                                        double tol = 1e-9, int samples = 400);

/// meas{r : |u'(r) + 1| > threshold} along the step trace, linear
/// interpolation at the crossings.
double measure_gradient_deviation(const ShotResult& shot, double threshold);
double measure_gradient_deviation(const ProfileSamples& samples, double threshold);

/// max_r |w(r) + lambda int_delta^r t^{N-1} f~(t, u(t)) dt| / max(1, max|w|),
/// with u interpolated by cubic Hermite pieces over the step trace.
double flux_identity_residual(const RadialProblem& problem, const ShotResult& shot);

}  // namespace minkbranch
