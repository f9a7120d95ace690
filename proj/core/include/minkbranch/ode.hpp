#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace minkbranch::ode {

template <std::size_t Dim>
using State = std::array<double, Dim>;

enum class Status {
    Finished,  // reached the end point
    Stopped,   // observer asked to stop
    StepUnderflow,
    TooManySteps,
};

template <std::size_t Dim>
struct Result {
    Status status = Status::Finished;
    double t = 0.0;
    State<Dim> y{};
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

struct Options {
    double rtol = 1e-9;
    double h_init = 0.0;  // 0: pick from the interval length
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 1'000'000;
};

/// Dormand-Prince 5(4) with FSAL and the standard PI-free step controller.
///
/// `rhs(t, y, dy)` fills dy. `scale(t, y_old, y_new, sc)` fills the per-component
/// error scale (the step is accepted when the RMS of err_i / sc_i is <= 1).
/// `observer(t0, y0, dy0, t1, y1, dy1)` sees every accepted step and returns
/// false to stop. The stepper lands exactly on each point of `stops`
/// (ascending, inside (t0, t1]).
template <std::size_t Dim, class Rhs, class Scale, class Observer>
Result<Dim> integrate_dopri5(Rhs&& rhs, Scale&& scale, Observer&& observer, double t0,
                             State<Dim> y0, double t1, const Options& opt,
                             std::span<const double> stops = {}) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Result<Dim> res;
    double t = t0;
    State<Dim> y = y0;
    State<Dim> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{}, ynew{}, sc{};
    rhs(t, y, k1);

    const double span_len = t1 - t0;
    double h = opt.h_init > 0.0 ? opt.h_init : std::min(opt.h_max, 1e-3 * span_len);
    std::size_t next_stop = 0;
    while (next_stop < stops.size() && stops[next_stop] <= t0) ++next_stop;

    const double h_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t1));
    while (t < t1) {
        if (res.accepted + res.rejected >= opt.max_steps) {
            res.status = Status::TooManySteps;
            break;
        }
        h = std::min(h, opt.h_max);
        // a stop closer than the step floor is already reached
        while (next_stop < stops.size() && stops[next_stop] - t <= h_floor) ++next_stop;
        if (t1 - t <= h_floor) break;
        double target = t1;
        if (next_stop < stops.size()) target = std::min(target, stops[next_stop]);
        bool lands = false;
        const double h_proposed = h;
        if (t + h >= target || t + 1.01 * h >= target) {
            h = target - t;
            lands = true;
        }
        if (h < h_floor) {
            res.status = Status::StepUnderflow;
            break;
        }

        for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < Dim; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < Dim; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < Dim; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double t_new = lands ? target : t + h;
        rhs(t_new, tmp, k6);
        for (std::size_t i = 0; i < Dim; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t_new, ynew, k7);

        scale(t_new, y, ynew, sc);
        double err = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) {
            const double ei =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double q = ei / sc[i];
            err += q * q;
        }
        err = std::sqrt(err / Dim);
        if (!std::isfinite(err)) err = 1e10;

        if (err <= 1.0) {
            ++res.accepted;
            const double t_old = t;
            const State<Dim> y_old = y;
            const State<Dim> dy_old = k1;
            t = t_new;
            y = ynew;
            k1 = k7;
            if (lands && next_stop < stops.size() && target == stops[next_stop]) ++next_stop;
            if (!observer(t_old, y_old, dy_old, t, y, k1)) {
                res.status = Status::Stopped;
                res.t = t;
                res.y = y;
                return res;
            }
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= fac;
            if (lands) h = std::max(h, h_proposed);
        } else {
            ++res.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    res.t = t;
    res.y = y;
    if (res.status == Status::Finished && t1 - t > h_floor) res.status = Status::StepUnderflow;
    return res;
}

}  // namespace minkbranch::ode
