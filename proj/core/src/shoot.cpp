#include "minkbranch/shoot.hpp"

#include "minkbranch/errors.hpp"
#include "minkbranch/numerics.hpp"
#include "minkbranch/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace minkbranch {

void ProfileSamples::push(double r_, double u_, double up, double w_) {
    r.push_back(r_);
    u.push_back(u_);
    uprime.push_back(up);
    w.push_back(w_);
}

namespace {

constexpr double kOriginOffset = 1e-6;  // start radius for delta = 0, in units of R
constexpr double kMinSpacing = 1e-4;    // profile spacing floor, in units of R - delta

double ipow(double x, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= x;
    return out;
}

struct Hermite {
    double value;
    double slope;
};

Hermite hermite(double t0, double u0, double d0, double t1, double u1, double d1, double t) {
    const double h = t1 - t0;
    const double x = (t - t0) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double h00 = 2 * x3 - 3 * x2 + 1;
    const double h10 = x3 - 2 * x2 + x;
    const double h01 = -2 * x3 + 3 * x2;
    const double h11 = x3 - x2;
    const double value = h00 * u0 + h10 * h * d0 + h01 * u1 + h11 * h * d1;
    const double slope = ((6 * x2 - 6 * x) * u0 + (3 * x2 - 4 * x + 1) * h * d0 + (-6 * x2 + 6 * x) * u1 +
                          (3 * x2 - 2 * x) * h * d1) /
                         h;
    return {value, slope};
}

// Flux form: y = (u, w).
struct FluxForm {
    static double uprime(int, double r, const ode::State<2>& y, int n) {
        if (r <= 0.0) return 0.0;
        return phi1_inverse(y[1] / ipow(r, n - 1));
    }
    static double flux(double, double, const ode::State<2>& y, int) { return y[1]; }
    static ode::State<2> start(double r, double u, double slope, int n) {
        return {u, ipow(r, n - 1) * phi1(slope)};
    }
    static void rhs(const RadialProblem& pb, double lambda, double r, const ode::State<2>& y,
                    ode::State<2>& dy) {
        const int n = pb.dimension();
        const double rn = ipow(r, n - 1);
        dy[0] = phi1_inverse(y[1] / rn);
        dy[1] = -lambda * rn * f_truncated(pb, r, y[0]);
    }
    static double second_scale(double r, const ode::State<2>& y, int n, double slope_scale) {
        return std::abs(y[1]) + slope_scale * ipow(r, n - 1);
    }
};

// Second-order form: y = (u, u').
struct SecondOrderForm {
    static double uprime(int, double, const ode::State<2>& y, int) { return y[1]; }
    static double flux(double, double r, const ode::State<2>& y, int n) {
        const double p = y[1];
        if (std::abs(p) >= 1.0) return std::copysign(std::numeric_limits<double>::infinity(), p);
        return ipow(r, n - 1) * p / std::sqrt(1.0 - p * p);
    }
    static ode::State<2> start(double, double u, double slope, int) { return {u, slope}; }
    static void rhs(const RadialProblem& pb, double lambda, double r, const ode::State<2>& y,
                    ode::State<2>& dy) {
        const int n = pb.dimension();
        const double p = y[1];
        dy[0] = p;
        dy[1] = -lambda * f_truncated(pb, r, y[0]) * h_cutoff(p) - (n - 1) * (p - p * p * p) / r;
    }
    static double second_scale(double, const ode::State<2>& y, int, double slope_scale) {
        return std::abs(y[1]) + slope_scale;
    }
};

void check_inputs(const RadialProblem& pb, double lambda, double s, double tol) {
    const double width = pb.domain().width();
    if (!(s > 0.0 && s < width)) throw DomainError("integrate_profile: s must lie in (0, R - delta)");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("integrate_profile: lambda must be finite and >= 0");
    }
    if (!(tol >= 1e-12 && tol <= 1e-6)) throw DomainError("integrate_profile: tol must lie in [1e-12, 1e-6]");
}

template <class Form>
ShotResult shoot(const RadialProblem& pb, double lambda, double s, double tol, const ShotOptions& opt) {
    check_inputs(pb, lambda, s, tol);
    if (opt.output_points < 2) throw DomainError("integrate_profile: need at least 2 output points");
    const int n = pb.dimension();
    const double delta = pb.inner();
    const double big_r = pb.outer();
    const double width = pb.domain().width();
    const double band = width + 1.0;

    ShotResult out;
    out.lambda = lambda;
    out.s = s;

    // initial point; at the origin, the constant-source solution through (0, s)
    double r_start = delta;
    double u_start = s;
    double slope_start = 0.0;
    if (delta == 0.0) {
        r_start = kOriginOffset * big_r;
        const double a = lambda * f_truncated(pb, 0.0, s) / n;
        const double x = a * r_start;
        const double root = std::hypot(1.0, x);
        u_start = s - a * r_start * r_start / (root + 1.0);
        slope_start = -x / root;
    }
    ode::State<2> y0 = Form::start(r_start, u_start, slope_start, n);

    std::vector<double> stops;
    if (opt.record) {
        stops = linspace(delta, big_r, opt.output_points);
        out.uniform_u.assign(stops.size(), std::numeric_limits<double>::quiet_NaN());
        out.uniform_u[0] = s;
        out.steps.push(delta, s, 0.0, 0.0);
        out.profile.push(delta, s, 0.0, 0.0);
        if (delta == 0.0) out.steps.push(r_start, u_start, slope_start, Form::flux(0.0, r_start, y0, n));
    }
    std::size_t next_uniform = 1;
    const double min_gap = kMinSpacing * width;
    const double slope_scale = s / width;

    auto rhs = [&](double r, const ode::State<2>& y, ode::State<2>& dy) { Form::rhs(pb, lambda, r, y, dy); };
    auto scale = [&](double r, const ode::State<2>&, const ode::State<2>& y, ode::State<2>& sc) {
        sc[0] = tol * s;
        sc[1] = tol * Form::second_scale(r, y, n, slope_scale);
    };
    auto observer = [&](double t0, const ode::State<2>& ya, const ode::State<2>& da, double t1,
                        const ode::State<2>& yb, const ode::State<2>& db) {
        if (!(std::abs(yb[0]) <= band)) {
            throw NumericalFailure("integrate_profile: u left the truncation band at r = " +
                                   std::to_string(t1) + " (truncation bug)");
        }
        if (opt.stop_at_zero && yb[0] <= 0.0 && ya[0] > 0.0) {
            double lo = t0;
            double hi = t1;
            for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (hermite(t0, ya[0], da[0], t1, yb[0], db[0], mid).value > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.zero_radius = hi;
            if (opt.record) {
                const Hermite hz = hermite(t0, ya[0], da[0], t1, yb[0], db[0], hi);
                const double wz = ya[1] + (yb[1] - ya[1]) * (hi - t0) / (t1 - t0);
                out.steps.push(hi, 0.0, hz.slope, wz);
                out.profile.push(hi, 0.0, hz.slope, wz);
            }
            return false;
        }
        if (!opt.record) return true;
        const double up = Form::uprime(0, t1, yb, n);
        const double w = Form::flux(0.0, t1, yb, n);
        out.steps.push(t1, yb[0], up, w);
        bool on_stop = false;
        while (next_uniform < stops.size() && stops[next_uniform] <= t1) {
            const double ts = stops[next_uniform];
            if (ts == t1) {
                out.uniform_u[next_uniform] = yb[0];
                on_stop = true;
            } else {
                const Hermite hs = hermite(t0, ya[0], da[0], t1, yb[0], db[0], ts);
                out.uniform_u[next_uniform] = hs.value;
                const double ws = ya[1] + (yb[1] - ya[1]) * (ts - t0) / (t1 - t0);
                if (ts - out.profile.r.back() >= min_gap) out.profile.push(ts, hs.value, hs.slope, ws);
            }
            ++next_uniform;
        }
        const double next = next_uniform < stops.size() ? stops[next_uniform] : big_r;
        if (on_stop || (t1 - out.profile.r.back() >= min_gap && next - t1 >= min_gap)) {
            out.profile.push(t1, yb[0], up, w);
        }
        return true;
    };

    ode::Options o;
    o.rtol = tol;
    o.h_init = 1e-3 * (big_r - r_start);
    const auto res = ode::integrate_dopri5<2>(rhs, scale, observer, r_start, y0, big_r, o, stops);
    if (res.status == ode::Status::StepUnderflow || res.status == ode::Status::TooManySteps) {
        throw StiffnessError("integrate_profile: step size underflow at lambda = " + std::to_string(lambda) +
                                 ", r = " + std::to_string(res.t),
                             lambda, res.t);
    }
    out.reached_end = res.status == ode::Status::Finished;
    out.terminal = out.reached_end ? res.y[0] : 0.0;

    if (opt.record) {
        for (double up : out.steps.uprime) {
            out.min_one_minus_abs_uprime = std::min(out.min_one_minus_abs_uprime, 1.0 - std::abs(up));
        }
        const auto& pu = out.profile.u;
        for (std::size_t i = 0; i + 1 < pu.size(); ++i) {
            if (lambda > 0.0 && !(pu[i + 1] < pu[i])) out.monotone = false;
        }
        for (std::size_t i = 0; i < pu.size(); ++i) {
            if (out.profile.r[i] < big_r && !(pu[i] > 0.0)) out.positive = false;
        }
    }
    if (out.zero_radius) out.positive = false;
    return out;
}

// Inner tolerance for root finding, so that integration error stays below the
// root tolerance on u(R).
double inner_tol(double tol) { return std::clamp(0.01 * tol, 1e-12, 1e-6); }

}  // namespace

ShotResult integrate_profile(const RadialProblem& problem, double lambda, double s, double tol,
                             const ShotOptions& options) {
    return shoot<FluxForm>(problem, lambda, s, tol, options);
}

ShotResult integrate_second_order_form(const RadialProblem& problem, double lambda, double s, double tol,
                                       const ShotOptions& options) {
    return shoot<SecondOrderForm>(problem, lambda, s, tol, options);
}

double shooting_residual(const RadialProblem& problem, double lambda, double s, double tol) {
    ShotOptions opt;
    opt.record = false;
    return integrate_profile(problem, lambda, s, tol, opt).terminal;
}

double positive_residual(const RadialProblem& problem, double lambda, double s, double tol) {
    ShotOptions opt;
    opt.record = false;
    opt.stop_at_zero = true;
    const ShotResult shot = integrate_profile(problem, lambda, s, tol, opt);
    if (shot.zero_radius) return -(problem.outer() - *shot.zero_radius);
    return shot.terminal;
}

LambdaSolve solve_lambda_for_s(const RadialProblem& problem, double s, double tol, double integrator_tol) {
    const double itol = integrator_tol > 0.0 ? integrator_tol : inner_tol(tol);
    check_inputs(problem, 0.0, s, itol);
    if (!(tol > 0.0)) throw DomainError("solve_lambda_for_s: tol must be positive");
    LambdaSolve out;
    auto sigma = [&](double lambda) {
        ++out.evaluations;
        return positive_residual(problem, lambda, s, itol);
    };

    double prev_lambda = 0.0;
    double prev_value = s;
    std::optional<std::pair<double, double>> bracket;
    std::pair<double, double> bracket_values{};
    for (int k = -20; k <= 20; ++k) {
        const double lambda = std::ldexp(1.0, k);
        const double value = sigma(lambda);
        if ((value > 0.0) != (prev_value > 0.0)) {
            ++out.sign_changes;
            if (!bracket) {
                bracket = {prev_lambda, lambda};
                bracket_values = {prev_value, value};
            }
        }
        prev_lambda = lambda;
        prev_value = value;
    }
    out.multiple = out.sign_changes > 1;
    if (!bracket) return out;

    const auto root = brent_root(sigma, bracket->first, bracket->second, bracket_values.first,
                                 bracket_values.second, tol * problem.outer(),
                                 1e-15 * bracket->second, 300);
    out.status = SolveStatus::Solved;
    out.lambda = root.x;
    out.residual = std::abs(shooting_residual(problem, root.x, s, itol));
    return out;
}

std::vector<double> solutions_at_lambda(const RadialProblem& problem, double lambda, double tol, int samples) {
    if (!(lambda > 0.0)) return {};
    if (samples < 8) throw DomainError("solutions_at_lambda: need at least 8 samples");
    const double width = problem.domain().width();
    const double edge = 1e-8 * width;
    const double span = std::log((width - edge) / edge);
    const double itol = inner_tol(tol);
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) {
        const double x = -span + 2.0 * span * i / (samples - 1);
        grid[i] = width / (1.0 + std::exp(-x));
    }
    auto sigma = [&](double s) { return positive_residual(problem, lambda, s, itol); };
    std::vector<double> values(samples);
    for (int i = 0; i < samples; ++i) values[i] = sigma(grid[i]);

    std::vector<double> roots;
    for (int i = 0; i + 1 < samples; ++i) {
        if (values[i] == 0.0) {
            roots.push_back(grid[i]);
            continue;
        }
        if ((values[i] > 0.0) == (values[i + 1] > 0.0) || values[i + 1] == 0.0) continue;
        const auto r = brent_root(sigma, grid[i], grid[i + 1], values[i], values[i + 1], 0.0,
                                  1e-13 * grid[i + 1], 300);
        roots.push_back(r.x);
    }
    if (values.back() == 0.0) roots.push_back(grid.back());
    return roots;
}

double measure_gradient_deviation(const ProfileSamples& samples, double threshold) {
    double total = 0.0;
    const auto& r = samples.r;
    const auto& up = samples.uprime;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double ga = std::abs(up[i] + 1.0) - threshold;
        const double gb = std::abs(up[i + 1] + 1.0) - threshold;
        const double dr = r[i + 1] - r[i];
        if (ga > 0.0 && gb > 0.0) {
            total += dr;
        } else if (ga > 0.0) {
            total += dr * ga / (ga - gb);
        } else if (gb > 0.0) {
            total += dr * gb / (gb - ga);
        }
    }
    return total;
}

double measure_gradient_deviation(const ShotResult& shot, double threshold) {
    return measure_gradient_deviation(shot.steps, threshold);
}

double flux_identity_residual(const RadialProblem& problem, const ShotResult& shot) {
    const auto& st = shot.steps;
    if (st.size() < 2) return 0.0;
    const int n = problem.dimension();
    const GaussRule rule = gauss_legendre(8);
    double integral = 0.0;
    double worst = 0.0;
    double w_scale = 1.0;
    for (std::size_t i = 0; i + 1 < st.size(); ++i) {
        const double a = st.r[i];
        const double b = st.r[i + 1];
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double piece = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = mid + half * rule.nodes[k];
            const double u = hermite(a, st.u[i], st.uprime[i], b, st.u[i + 1], st.uprime[i + 1], t).value;
            piece += rule.weights[k] * ipow(t, n - 1) * f_truncated(problem, t, u);
        }
        integral += half * piece;
        worst = std::max(worst, std::abs(st.w[i + 1] + shot.lambda * integral));
        w_scale = std::max(w_scale, std::abs(st.w[i + 1]));
    }
    return worst / w_scale;
}

}  // namespace minkbranch
