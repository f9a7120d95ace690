#include "minkbranch/eigen.hpp"

#include "minkbranch/errors.hpp"
#include "minkbranch/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace minkbranch {

namespace {

constexpr int kMaxIterations = 10000;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

DiscreteEigenpair discrete_principal_eigenpair(const RadialDomain& domain, const Weight& m,
                                               int cells) {
    domain.validate();
    if (cells < 4) throw DomainError("discrete_principal_eigenpair: need at least 4 cells");
    const int n = domain.dimension;
    const double a = domain.inner;
    const double h = domain.width() / cells;
    auto node = [&](int i) { return i == cells ? domain.outer : a + i * h; };

    // unknowns u_0 .. u_{cells-1}; u_cells = 0
    const int size = cells;
    std::vector<double> flux(size + 1);  // flux[i] at r_{i-1/2}, i = 1..size
    for (int i = 1; i <= size; ++i) {
        const double mid = a + (i - 0.5) * h;
        flux[i] = std::pow(mid, n - 1) / h;
    }
    std::vector<double> diag(size), sub(size, 0.0), super(size, 0.0), mass(size);
    bool any_positive = false;
    for (int i = 0; i < size; ++i) {
        const double left = i == 0 ? 0.0 : flux[i];
        const double right = flux[i + 1];
        diag[i] = left + right;
        if (i > 0) sub[i] = -flux[i];
        if (i + 1 < size) super[i] = -flux[i + 1];
        const double lo = i == 0 ? a : a + (i - 0.5) * h;
        const double hi = a + (i + 0.5) * h;
        const double weight = m(node(i));
        if (weight < 0.0) {
            throw PreconditionError("principal_eigenvalue: weight m is negative at r = " +
                                    std::to_string(node(i)));
        }
        if (weight > 0.0) any_positive = true;
        mass[i] = weight * (std::pow(hi, n) - std::pow(lo, n)) / n;
    }
    if (!any_positive) throw PreconditionError("principal_eigenvalue: weight m vanishes on the grid");

    std::vector<double> u(size);
    for (int i = 0; i < size; ++i) u[i] = std::cos(0.5 * std::numbers::pi * (node(i) - a) / domain.width());
    // lambda ~ (u, M u) / (M u, A^{-1} M u): positive terms only, no cancellation
    double lambda = 0.0;
    int it = 0;
    for (; it < kMaxIterations; ++it) {
        std::vector<double> mu(size);
        for (int i = 0; i < size; ++i) mu[i] = mass[i] * u[i];
        std::vector<double> x = mu;
        solve_tridiagonal(sub, diag, super, x);
        const double next = dot(u, mu) / dot(mu, x);
        const double scale = *std::max_element(x.begin(), x.end(),
                                               [](double p, double q) { return std::abs(p) < std::abs(q); });
        for (int i = 0; i < size; ++i) u[i] = x[i] / scale;
        const bool done = std::abs(next - lambda) <= 1e-14 * std::abs(next);
        lambda = next;
        if (done && it > 2) break;
    }
    if (it >= kMaxIterations) {
        throw NumericalFailure("principal_eigenvalue: inverse iteration did not converge in 10^4 steps");
    }

    DiscreteEigenpair out;
    out.lambda = lambda;
    out.iterations = it + 1;
    out.r.resize(size + 1);
    out.u.resize(size + 1);
    const double top = *std::max_element(u.begin(), u.end());
    for (int i = 0; i < size; ++i) {
        out.r[i] = node(i);
        out.u[i] = u[i] / top;
    }
    out.r[size] = domain.outer;
    out.u[size] = 0.0;
    return out;
}

EigenResult principal_eigenvalue(const RadialDomain& domain, const Weight& m, int cells) {
    if (cells < 64) throw DomainError("principal_eigenvalue: grid size must be >= 64");
    const DiscreteEigenpair coarse = discrete_principal_eigenpair(domain, m, cells);
    DiscreteEigenpair fine = discrete_principal_eigenpair(domain, m, 2 * cells);
    EigenResult out;
    out.lambda1 = (4.0 * fine.lambda - coarse.lambda) / 3.0;
    out.lambda1_discrete = fine.lambda;
    out.error_estimate = std::abs(fine.lambda - coarse.lambda) / 3.0;
    out.cells = 2 * cells;
    out.r = std::move(fine.r);
    out.eigenfunction = std::move(fine.u);
    return out;
}

EigenResult principal_eigenvalue(const RadialProblem& problem, const Weight& m, int cells) {
    return principal_eigenvalue(problem.domain(), m, cells);
}

AnchorSequence eigen_anchor_sequence(const RadialDomain& ball, const Weight& m,
                                     const std::vector<int>& n_list, int cells) {
    if (ball.inner != 0.0) throw PreconditionError("eigen_anchor_sequence: needs a ball (delta = 0)");
    for (int n : n_list) {
        if (n < 1 || !(1.0 / n < ball.outer)) {
            throw InvalidRegularization("eigen_anchor_sequence: every 1/n must be below R");
        }
    }
    AnchorSequence seq;
    seq.ball = principal_eigenvalue(ball, m, cells);
    for (int n : n_list) {
        RadialDomain annulus = ball;
        annulus.inner = 1.0 / n;
        const EigenResult e = principal_eigenvalue(annulus, m.shifted(1.0 / n), cells);
        seq.points.push_back({n, annulus.inner, e.lambda1, e.error_estimate});
    }
    return seq;
}

}  // namespace minkbranch
