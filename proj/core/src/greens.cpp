#include "minkbranch/greens.hpp"

#include "minkbranch/errors.hpp"
#include "minkbranch/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minkbranch {

namespace {

constexpr int kIntegralPanels = 8;
constexpr int kIntegralOrder = 20;

double domain_slack(const RadialDomain& d) { return 1e-12 * d.outer; }

}  // namespace

GreenKernel::GreenKernel(RadialDomain domain) : domain_(domain) { domain_.validate(); }

double GreenKernel::diagonal(double s) const {
    const int n = domain_.dimension;
    const double big_r = domain_.outer;
    if (s <= 0.0) return std::numeric_limits<double>::infinity();
    if (n == 2) return std::log(big_r / s);
    const double p = 2.0 - n;
    return (std::pow(big_r, p) - std::pow(s, p)) / p;
}

double GreenKernel::operator()(double t, double s) const {
    const double lo = domain_.inner - domain_slack(domain_);
    const double hi = domain_.outer + domain_slack(domain_);
    if (t < lo || t > hi || s < lo || s > hi) {
        throw DomainError("kernel_eval: arguments must lie in [delta, R]");
    }
    const double m = std::max(t, s);
    if (m >= domain_.outer) return 0.0;
    return diagonal(m);
}

double kernel_eval(const GreenKernel& kernel, double t, double s) { return kernel(t, s); }

QuadratureGrid QuadratureGrid::uniform(const RadialDomain& domain, int panels, int order) {
    domain.validate();
    if (panels < 1) throw DomainError("QuadratureGrid: need at least one panel");
    if (order < 2) throw DomainError("QuadratureGrid: order must be >= 2");
    return QuadratureGrid(linspace(domain.inner, domain.outer, panels + 1), order);
}

namespace {

std::vector<double> apply_with_rule(const GreenKernel& kernel,
                                    const std::function<double(double)>& h,
                                    std::span<const double> edges, const GaussRule& rule) {
    const RadialDomain& d = kernel.domain();
    const int n = d.dimension;
    const std::size_t panels = edges.size() - 1;
    const bool singular_origin = d.inner == 0.0;

    auto mass = [&](double s) { return std::pow(s, n - 1) * h(s); };
    auto far = [&](double s) { return kernel.diagonal(s) * std::pow(s, n - 1) * h(s); };

    std::vector<double> left(panels);
    std::vector<double> right(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const bool grade = singular_origin && p == 0;
        left[p] = integrate_panels(mass, edges[p], edges[p + 1], 1, rule, grade);
        right[p] = integrate_panels(far, edges[p], edges[p + 1], 1, rule, grade);
    }
    // cumulative from the left for the s < t part, from the right for s > t
    std::vector<double> below(panels + 1, 0.0);
    std::vector<double> above(panels + 1, 0.0);
    for (std::size_t p = 0; p < panels; ++p) below[p + 1] = below[p] + left[p];
    for (std::size_t p = panels; p-- > 0;) above[p] = above[p + 1] + right[p];

    std::vector<double> u(panels + 1);
    for (std::size_t j = 0; j <= panels; ++j) {
        const double t = edges[j];
        const double near = below[j] == 0.0 ? 0.0 : kernel.diagonal(t) * below[j];
        u[j] = near + above[j];
    }
    u[panels] = 0.0;
    return u;
}

}  // namespace

GreenProfile green_apply(const GreenKernel& kernel, const std::function<double(double)>& h,
                         const QuadratureGrid& grid, double tol) {
    const auto edges = grid.nodes();
    GreenProfile out;
    out.r.assign(edges.begin(), edges.end());
    out.u = apply_with_rule(kernel, h, edges, gauss_legendre(grid.order()));
    const auto check = apply_with_rule(kernel, h, edges, gauss_legendre(grid.order() + 4));
    double scale = 1.0;
    for (std::size_t j = 0; j < out.u.size(); ++j) {
        if (!std::isfinite(out.u[j])) throw QuadratureFailure("green_apply: non-finite value");
        out.error_estimate = std::max(out.error_estimate, std::abs(out.u[j] - check[j]));
        scale = std::max(scale, std::abs(out.u[j]));
    }
    if (out.error_estimate > tol * scale) {
        throw AccuracyError("green_apply: quadrature error estimate above tolerance; refine the grid",
                            2 * grid.panels());
    }
    return out;
}

double harnack_ratio_grid_min(const GreenKernel& kernel, double eps, int samples) {
    const RadialDomain& d = kernel.domain();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = d.inner + (d.outer - eps - d.inner) * i / (samples - 1);
        for (int j = 0; j < samples; ++j) {
            // s = R gives 0/0; the ratio is 1 there by continuity of max(t,s) = s
            const double s = d.inner + (d.outer - d.inner) * j / samples;
            const double diag = kernel.diagonal(s);
            if (!std::isfinite(diag)) {
                best = std::min(best, 0.0);
                continue;
            }
            best = std::min(best, kernel(t, s) / diag);
        }
    }
    return best;
}

double beta_of_epsilon(const GreenKernel& kernel, double eps) {
    const RadialDomain& d = kernel.domain();
    if (!(eps > 0.0 && eps < d.width() / 4.0)) {
        throw DomainError("beta_of_epsilon: eps must lie in (0, (R-delta)/4)");
    }
    if (d.inner == 0.0) return 0.0;
    const double beta = kernel.diagonal(d.outer - eps) / kernel.diagonal(d.inner);
    const double grid = harnack_ratio_grid_min(kernel, eps, 257);
    if (grid < beta - 1e-10) {
        throw NumericalFailure("beta_of_epsilon: closed form exceeds the sampled minimum ratio");
    }
    return beta;
}

double I_delta(const GreenKernel& kernel, double t) {
    const RadialDomain& d = kernel.domain();
    const int n = d.dimension;
    if (t < d.inner - domain_slack(d) || t > d.outer + domain_slack(d)) {
        throw DomainError("I_delta: t must lie in [delta, R]");
    }
    const double upper = 0.5 * d.width();
    const double lower = d.inner;
    const GaussRule rule = gauss_legendre(kIntegralOrder);
    if (upper <= lower) {
        // reversed interval: integrate with the sign of the oriented integral
        auto fn = [&](double s) { return kernel(t, s) * std::pow(s, n - 1); };
        return -integrate_panels(fn, upper, lower, kIntegralPanels, rule, false);
    }
    const double split = std::clamp(t, lower, upper);
    double total = 0.0;
    if (split > lower) {
        const double kt = kernel.diagonal(std::max(t, 0.0));
        auto near = [&](double s) { return std::pow(s, n - 1); };
        total += kt * integrate_panels(near, lower, split, kIntegralPanels, rule, false);
    }
    if (split < upper) {
        auto far = [&](double s) { return kernel.diagonal(s) * std::pow(s, n - 1); };
        const bool grade = n == 2 || split == 0.0;
        total += integrate_panels(far, split, upper, kIntegralPanels, rule, grade);
    }
    return total;
}

std::optional<double> I_delta_closed_form(const GreenKernel& kernel, double t) {
    const RadialDomain& d = kernel.domain();
    const int n = d.dimension;
    const double delta = d.inner;
    const double big_r = d.outer;
    const double half = 0.5 * (big_r - delta);
    if (t < delta - domain_slack(d) || t > half + domain_slack(d)) return std::nullopt;
    if (n == 2) {
        const double log_term = delta == 0.0 ? 0.0 : -0.5 * delta * delta * std::log(big_r / t);
        return log_term - 0.25 * t * t +
               half * half * (0.25 + 0.5 * std::log(2.0 * big_r / (big_r - delta)));
    }
    const double p = 2.0 - n;
    const double rp = std::pow(big_r, p);
    const double tn = std::pow(t, n);
    const double first = t == 0.0 ? 0.0 : (rp - std::pow(t, p)) * (tn - std::pow(delta, n)) / n;
    return (first + rp * (std::pow(half, n) - tn) / n - (half * half - t * t) / 2.0) / p;
}

ClosedFormConformance check_I_delta_closed_form(const GreenKernel& kernel, int samples, double rtol) {
    const RadialDomain& d = kernel.domain();
    const double half = 0.5 * d.width();
    ClosedFormConformance report;
    if (half <= d.inner) return report;
    report.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const double t = d.inner + (half - d.inner) * i / std::max(1, samples - 1);
        const double quad = I_delta(kernel, t);
        const double closed = *I_delta_closed_form(kernel, t);
        const double rel = std::abs(closed - quad) / std::max(std::abs(quad), 1e-300);
        if (rel > report.max_relative_error) {
            report.max_relative_error = rel;
            report.worst_t = t;
        }
    }
    report.conforms = report.max_relative_error <= rtol;
    return report;
}

IDeltaMax I_delta_max(const GreenKernel& kernel) {
    const RadialDomain& d = kernel.domain();
    const double lo = d.inner;
    const double hi = std::max(d.inner, 0.5 * d.outer);
    const Extremum e = scan_maximize([&](double t) { return I_delta(kernel, t); }, lo, hi, 4096);
    return {e.x, e.value};
}

}  // namespace minkbranch
