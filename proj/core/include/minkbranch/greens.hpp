#pragma once

#include "minkbranch/problem.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace minkbranch {

/// Green function of -(r^{N-1} u')' = r^{N-1} h, u'(delta) = 0 = u(R).
///
/// K(t, s) depends only on max(t, s):
///   N >= 3:  [R^{2-N} - max(t,s)^{2-N}] / (2 - N)
///   N == 2:  ln(R / max(t,s))
class GreenKernel {
public:
    explicit GreenKernel(RadialDomain domain);

    /// DomainError outside [delta, R]^2. Returns +inf at the corner t = s = 0.
    double operator()(double t, double s) const;
    /// K(s, s).
    [[nodiscard]] double diagonal(double s) const;

    [[nodiscard]] const RadialDomain& domain() const noexcept { return domain_; }

private:
    RadialDomain domain_;
};

double kernel_eval(const GreenKernel& kernel, double t, double s);

/// Uniform panel edges on [delta, R]; each panel carries a Gauss-Legendre rule.
/// The edges double as evaluation nodes for green_apply.
class QuadratureGrid {
public:
    static QuadratureGrid uniform(const RadialDomain& domain, int panels, int order = 16);

    [[nodiscard]] std::span<const double> nodes() const noexcept { return edges_; }
    [[nodiscard]] int panels() const noexcept { return static_cast<int>(edges_.size()) - 1; }
    [[nodiscard]] int order() const noexcept { return order_; }

private:
    QuadratureGrid(std::vector<double> edges, int order) : edges_(std::move(edges)), order_(order) {}

    std::vector<double> edges_;
    int order_;
};

struct GreenProfile {
    std::vector<double> r;
    std::vector<double> u;
    /// max |u_order - u_(order+4)| over the nodes.
    double error_estimate = 0.0;
};

/// u(r_i) = int_delta^R K(r_i, s) s^{N-1} h(s) ds at every grid node, with the
/// integral split at the kink s = r_i. Throws AccuracyError when the error
/// estimate exceeds tol * max(1, max|u|).
GreenProfile green_apply(const GreenKernel& kernel, const std::function<double(double)>& h,
                         const QuadratureGrid& grid, double tol = 1e-10);

/// Largest beta with K(t,s) >= beta K(s,s) on [delta, R-eps] x [delta, R]:
///   N >= 3: [R^{2-N} - (R-eps)^{2-N}] / [R^{2-N} - delta^{2-N}]
///   N == 2: ln(R/(R-eps)) / ln(R/delta)
/// The value is checked against a grid minimisation before it is returned.
/// For delta = 0 the diagonal K(s,s) is unbounded and the result is 0.
/// DomainError unless 0 < eps < (R - delta)/4.
double beta_of_epsilon(const GreenKernel& kernel, double eps);

/// min K(t,s)/K(s,s) over a samples x samples grid of [delta, R-eps] x [delta, R).
double harnack_ratio_grid_min(const GreenKernel& kernel, double eps, int samples);

/// int_delta^{(R-delta)/2} K(t,s) s^{N-1} ds by composite quadrature.
double I_delta(const GreenKernel& kernel, double t);

/// Closed form of I_delta, valid for delta <= t <= (R-delta)/2; nullopt outside.
std::optional<double> I_delta_closed_form(const GreenKernel& kernel, double t);

struct ClosedFormConformance {
    double max_relative_error = 0.0;
    double worst_t = 0.0;
    int samples = 0;
    /// false when the closed form disagrees with quadrature beyond rtol; the
    /// quadrature value is then the one to trust.
    bool conforms = true;
};

ClosedFormConformance check_I_delta_closed_form(const GreenKernel& kernel, int samples = 100,
                                                double rtol = 1e-8);

struct IDeltaMax {
    double t_star;
    double value;
};

/// Maximum of I_delta over [delta, max(delta, R/2)]: 4096-point scan plus
/// golden-section refinement. For delta = 0 the maximiser is t = 0.
IDeltaMax I_delta_max(const GreenKernel& kernel);

}  // namespace minkbranch
