#pragma once

#include <functional>
#include <span>
#include <vector>

namespace minkbranch {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Newton iteration on P_n; nodes ascending. Order must be >= 1.
GaussRule gauss_legendre(int order);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
/// With `grade_left` the first panel is further split geometrically toward
/// `a`, which handles integrands like s*log(s) at the left end.
double integrate_panels(const std::function<double(double)>& fn, double a, double b,
                        int panels, const GaussRule& rule, bool grade_left = false);

struct Extremum {
    double x;
    double value;
};

/// Golden-section search for a minimum of a unimodal function on [a, b].
Extremum golden_section_minimize(const std::function<double(double)>& fn, double a, double b,
                                 double xtol = 1e-12);

/// Dense scan of `samples` points followed by golden-section refinement of the
/// best bracket. The endpoints are kept when they beat the refined point.
Extremum scan_minimize(const std::function<double(double)>& fn, double a, double b,
                       int samples = 4096);
Extremum scan_maximize(const std::function<double(double)>& fn, double a, double b,
                       int samples = 4096);

struct Extremum2d {
    double x;
    double y;
    double value;
};

/// Minimum over a rectangle: (samples x samples) grid, then coordinate-wise
/// golden refinement inside the neighbouring cells.
Extremum2d box_minimize(const std::function<double(double, double)>& fn, double x0, double x1,
                        double y0, double y1, int samples = 257);

/// Root of a continuous function with fa, fb of opposite sign (Brent).
/// Stops when |f| <= ftol or the bracket is narrower than xtol.
struct RootResult {
    double x;
    double fx;
    int iterations;
};
RootResult brent_root(const std::function<double(double)>& fn, double a, double b, double fa,
                      double fb, double ftol, double xtol, int max_iter = 200);

/// Solves a tridiagonal system in place; `sub[0]` and `super[n-1]` are ignored.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> super, std::span<double> rhs);

std::vector<double> linspace(double a, double b, int count);

}  // namespace minkbranch
