#include "minkbranch/numerics.hpp"

#include "minkbranch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace minkbranch {

GaussRule gauss_legendre(int order) {
    if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) p0 = 1.0;
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (order == 1) ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[order - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
    }
    return rule;
}

namespace {

double integrate_one(const std::function<double(double)>& fn, double a, double b,
                     const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        sum += rule.weights[k] * fn(mid + half * rule.nodes[k]);
    }
    return sum * half;
}

}  // namespace

double integrate_panels(const std::function<double(double)>& fn, double a, double b, int panels,
                        const GaussRule& rule, bool grade_left) {
    if (panels < 1) throw DomainError("integrate_panels: need at least one panel");
    if (b == a) return 0.0;
    const double width = (b - a) / panels;
    double total = 0.0;
    int first = 0;
    if (grade_left) {
        // geometric split of the first panel: [a, a+w/2^40], ..., [a+w/2, a+w]
        constexpr int levels = 40;
        double lo = a;
        double hi = a + width * std::ldexp(1.0, -levels);
        total += integrate_one(fn, lo, hi, rule);
        for (int l = levels; l >= 1; --l) {
            lo = a + width * std::ldexp(1.0, -l);
            hi = a + width * std::ldexp(1.0, -l + 1);
            total += integrate_one(fn, lo, hi, rule);
        }
        first = 1;
    }
    for (int p = first; p < panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p + 1 == panels) ? b : a + (p + 1) * width;
        total += integrate_one(fn, lo, hi, rule);
    }
    return total;
}

Extremum golden_section_minimize(const std::function<double(double)>& fn, double a, double b,
                                 double xtol) {
    if (b < a) std::swap(a, b);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = fn(x2);
        }
    }
    return f1 <= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
}

Extremum scan_minimize(const std::function<double(double)>& fn, double a, double b, int samples) {
    if (samples < 3) samples = 3;
    if (b <= a) return {a, fn(a)};
    const double step = (b - a) / (samples - 1);
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> values(samples);
    for (int i = 0; i < samples; ++i) {
        const double x = (i + 1 == samples) ? b : a + i * step;
        values[i] = fn(x);
        if (values[i] < best_value) {
            best_value = values[i];
            best = i;
        }
    }
    const double lo = a + std::max(0, best - 1) * step;
    const double hi = std::min(b, a + std::min(samples - 1, best + 1) * step);
    Extremum refined = golden_section_minimize(fn, lo, hi, 1e-13 * std::max(1.0, std::abs(b - a)));
    const double x_best = (best + 1 == samples) ? b : a + best * step;
    // the refined point must beat the sample by more than rounding
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(best_value);
    if (!(refined.value < best_value - noise)) return {x_best, best_value};
    return refined;
}

Extremum scan_maximize(const std::function<double(double)>& fn, double a, double b, int samples) {
    Extremum e = scan_minimize([&](double x) { return -fn(x); }, a, b, samples);
    return {e.x, -e.value};
}

Extremum2d box_minimize(const std::function<double(double, double)>& fn, double x0, double x1,
                        double y0, double y1, int samples) {
    if (samples < 3) samples = 3;
    const double dx = (x1 - x0) / (samples - 1);
    const double dy = (y1 - y0) / (samples - 1);
    Extremum2d best{x0, y0, std::numeric_limits<double>::infinity()};
    int bi = 0;
    int bj = 0;
    for (int i = 0; i < samples; ++i) {
        const double x = (i + 1 == samples) ? x1 : x0 + i * dx;
        for (int j = 0; j < samples; ++j) {
            const double y = (j + 1 == samples) ? y1 : y0 + j * dy;
            const double v = fn(x, y);
            if (v < best.value) {
                best = {x, y, v};
                bi = i;
                bj = j;
            }
        }
    }
    const double xlo = std::max(x0, x0 + (bi - 1) * dx);
    const double xhi = std::min(x1, x0 + (bi + 1) * dx);
    const double ylo = std::max(y0, y0 + (bj - 1) * dy);
    const double yhi = std::min(y1, y0 + (bj + 1) * dy);
    Extremum2d cur = best;
    for (int pass = 0; pass < 4; ++pass) {
        const Extremum ex =
            golden_section_minimize([&](double x) { return fn(x, cur.y); }, xlo, xhi, 1e-12);
        if (ex.value < cur.value) cur = {ex.x, cur.y, ex.value};
        const Extremum ey =
            golden_section_minimize([&](double y) { return fn(cur.x, y); }, ylo, yhi, 1e-12);
        if (ey.value < cur.value) cur = {cur.x, ey.x, ey.value};
    }
    return cur;
}

RootResult brent_root(const std::function<double(double)>& fn, double a, double b, double fa,
                      double fb, double ftol, double xtol, int max_iter) {
    if (fa == 0.0) return {a, fa, 0};
    if (fb == 0.0) return {b, fb, 0};
    if ((fa > 0) == (fb > 0)) throw DomainError("brent_root: endpoints do not bracket a root");
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) <= ftol || std::abs(xm) <= tol1) return {b, fb, it};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = fn(b);
    }
    return {b, fb, max_iter};
}

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> super, std::span<double> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n);
    double beta = diag[0];
    if (beta == 0.0) throw NumericalFailure("solve_tridiagonal: zero pivot");
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        c[i] = super[i - 1] / beta;
        beta = diag[i] - sub[i] * c[i];
        if (beta == 0.0) throw NumericalFailure("solve_tridiagonal: zero pivot");
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i + 1] * rhs[i + 1];
}

std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    if (count == 1) {
        out[0] = a;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        out[i] = (i + 1 == count) ? b : a + (b - a) * i / (count - 1);
    }
    return out;
}

}  // namespace minkbranch
