#include "minkbranch/errors.hpp"
#include "minkbranch/greens.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace minkbranch;

namespace {

// -(r^{N-1} u')' = r^{N-1} h on [delta, R], u'(delta) = 0, u(R) = 0;
// second-order finite volumes on `nodes` points.
std::vector<double> fd_solve(int N, double delta, double R, double (*h)(double), int nodes) {
    const double dx = (R - delta) / (nodes - 1);
    std::vector<double> a(nodes, 0.0), b(nodes, 0.0), c(nodes, 0.0), d(nodes, 0.0);
    auto flux = [&](double r) { return std::pow(r, N - 1); };
    for (int i = 0; i < nodes - 1; ++i) {
        const double r = delta + i * dx;
        const double left = i == 0 ? 0.0 : flux(r - dx / 2) / (dx * dx);
        const double right = flux(r + dx / 2) / (dx * dx);
        // half cell at the Neumann end
        const double scale = i == 0 ? 2.0 : 1.0;
        a[i] = -left * scale;
        c[i] = -right * scale;
        b[i] = (left + right) * scale;
        d[i] = i == 0 ? (flux(r) + flux(r + dx / 2)) / 2 * h(r) : flux(r) * h(r);
    }
    b[nodes - 1] = 1.0;
    for (int i = 1; i < nodes; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    std::vector<double> u(nodes);
    u[nodes - 1] = d[nodes - 1] / b[nodes - 1];
    for (int i = nodes - 2; i >= 0; --i) u[i] = (d[i] - c[i] * u[i + 1]) / b[i];
    return u;
}

double one(double) { return 1.0; }

// max centered-difference residual of -(r^{N-1}u')' - r^{N-1}h over the interior grid nodes
double ode_residual(const GreenProfile& g, int N, const std::function<double(double)>& h) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.r.size(); ++i) {
        const double dx = g.r[i + 1] - g.r[i];
        const double rp = g.r[i] + dx / 2, rm = g.r[i] - dx / 2;
        const double lhs =
            -(std::pow(rp, N - 1) * (g.u[i + 1] - g.u[i]) - std::pow(rm, N - 1) * (g.u[i] - g.u[i - 1])) / (dx * dx);
        worst = std::max(worst, std::abs(lhs - std::pow(g.r[i], N - 1) * h(g.r[i])));
    }
    return worst;
}

}  // namespace

TEST(Kernel, SubstitutionValues) {
    EXPECT_NEAR(kernel_eval(GreenKernel({3, 0.0, 1.0}), 0.5, 0.25), 1.0, 1e-15);
    EXPECT_NEAR(kernel_eval(GreenKernel({2, 0.0, 1.0}), 0.5, 0.5), std::log(2.0), 1e-15);
    for (int N : {2, 3, 5}) {
        const GreenKernel k({N, 0.2, 1.3});
        EXPECT_EQ(kernel_eval(k, 1.3, 0.4), 0.0);
        EXPECT_EQ(kernel_eval(k, 0.7, 0.4), kernel_eval(k, 0.4, 0.7));
    }
}

TEST(Kernel, NonIncreasingInMax) {
    for (int N : {2, 3, 4}) {
        const GreenKernel k({N, 0.1, 1.0});
        double prev = kernel_eval(k, 0.1, 0.1);
        for (int i = 1; i <= 200; ++i) {
            const double m = 0.1 + 0.9 * i / 200.0;
            const double v = kernel_eval(k, m, 0.1);
            EXPECT_LE(v, prev);
            EXPECT_GE(v, 0.0);
            prev = v;
        }
    }
}

TEST(Kernel, OutsideDomainThrows) {
    const GreenKernel k({3, 0.5, 1.0});
    EXPECT_THROW(kernel_eval(k, 0.4, 0.6), DomainError);
    EXPECT_THROW(kernel_eval(k, 0.6, 1.1), DomainError);
}

TEST(GreenApply, BallConstantSourceMatchesHandSolution) {
    const RadialDomain d{3, 0.0, 1.0};
    const auto g = green_apply(GreenKernel(d), one, QuadratureGrid::uniform(d, 64));
    EXPECT_NEAR(g.u.front(), 1.0 / 6.0, 1e-8);
    for (std::size_t i = 0; i < g.r.size(); ++i) EXPECT_NEAR(g.u[i], (1 - g.r[i] * g.r[i]) / 6, 1e-10);
    EXPECT_EQ(g.u.back(), 0.0);
}

TEST(GreenApply, ZeroSourceGivesZero) {
    const RadialDomain d{2, 0.3, 1.0};
    const auto g = green_apply(GreenKernel(d), [](double) { return 0.0; }, QuadratureGrid::uniform(d, 16));
    for (double u : g.u) EXPECT_EQ(u, 0.0);
}

TEST(GreenApply, AnnulusMatchesDenseFiniteDifferences) {
    const RadialDomain d{2, 0.5, 1.0};
    const auto g = green_apply(GreenKernel(d), one, QuadratureGrid::uniform(d, 64));
    const auto fd = fd_solve(2, 0.5, 1.0, one, 10000);
    EXPECT_NEAR(g.u.front(), fd.front(), 1e-6);
    // hand integration: (1 - r^2)/4 + (delta^2/2) ln r
    EXPECT_NEAR(g.u.front(), (1 - 0.25) / 4 + 0.125 * std::log(0.5), 1e-10);
}

TEST(GreenApply, ResidualDecaysAtSecondOrder) {
    const std::vector<std::function<double(double)>> sources{one, [](double r) { return r; }};
    for (int N : {2, 3}) {
        const RadialDomain d{N, 0.3, 1.0};
        for (const auto& h : sources) {
            const double coarse = ode_residual(green_apply(GreenKernel(d), h, QuadratureGrid::uniform(d, 256)), N, h);
            const double fine = ode_residual(green_apply(GreenKernel(d), h, QuadratureGrid::uniform(d, 512)), N, h);
            EXPECT_GE(std::log2(coarse / fine), 1.95) << N;
        }
    }
}

TEST(GreenApply, NeumannSlopeVanishesUnderRefinement) {
    const RadialDomain d{3, 0.4, 1.0};
    const auto h = [](double r) { return 1.0 + r; };
    double prev = 0.0;
    for (int panels : {16, 32, 64}) {
        const auto g = green_apply(GreenKernel(d), h, QuadratureGrid::uniform(d, panels));
        const double slope = std::abs((g.u[1] - g.u[0]) / (g.r[1] - g.r[0]));
        if (prev > 0.0) {
            EXPECT_GE(std::log2(prev / slope), 0.95);
        }
        prev = slope;
    }
}

TEST(Beta, AnnulusValueAndGridOracle) {
    const GreenKernel k({3, 0.5, 1.0});
    const double beta = beta_of_epsilon(k, 0.1);
    EXPECT_NEAR(beta, 1.0 / 9.0, 1e-12);
    // 1000 x 1000 grid over [delta, R - eps] x [delta, R)
    double grid_min = INFINITY;
    for (int i = 0; i < 1000; ++i) {
        const double t = 0.5 + 0.4 * i / 999.0;
        for (int j = 0; j < 1000; ++j) {
            const double s = 0.5 + 0.5 * j / 1000.0;
            grid_min = std::min(grid_min, kernel_eval(k, t, s) / kernel_eval(k, s, s));
        }
    }
    EXPECT_GE(grid_min, beta - 1e-10);
    EXPECT_NEAR(grid_min, beta, 1e-3);
}

TEST(Beta, VanishesAsEpsShrinksAndAtCentre) {
    const GreenKernel k({2, 0.3, 1.0});
    EXPECT_LT(beta_of_epsilon(k, 1e-9), 1e-8);
    EXPECT_EQ(beta_of_epsilon(GreenKernel({2, 0.0, 1.0}), 0.1), 0.0);
    EXPECT_EQ(beta_of_epsilon(GreenKernel({3, 0.0, 1.0}), 0.1), 0.0);
    EXPECT_THROW(beta_of_epsilon(k, 0.2), DomainError);
    EXPECT_THROW(beta_of_epsilon(k, 0.0), DomainError);
}

TEST(IDelta, ClosedFormValues) {
    const GreenKernel k3({3, 0.0, 1.0});
    EXPECT_NEAR(I_delta(k3, 0.0), 1.0 / 12.0, 1e-10);
    EXPECT_NEAR(I_delta(k3, 0.5), 1.0 / 24.0, 1e-10);
    EXPECT_NEAR(*I_delta_closed_form(k3, 0.5), 1.0 / 24.0, 1e-14);
    const GreenKernel k2({2, 0.0, 1.0});
    EXPECT_NEAR(I_delta(k2, 0.0), 0.25 * (0.25 + std::log(2.0) / 2), 1e-10);
}

TEST(IDelta, QuadratureMatchesClosedFormOnFourInstances) {
    for (const RadialDomain& d :
         {RadialDomain{2, 0.0, 1.0}, RadialDomain{3, 0.0, 1.0}, RadialDomain{2, 0.3, 1.0}, RadialDomain{3, 0.25, 1.0}}) {
        const auto c = check_I_delta_closed_form(GreenKernel(d), 100, 1e-8);
        EXPECT_TRUE(c.conforms) << d.dimension << " " << d.inner;
        EXPECT_LT(c.max_relative_error, 1e-8);
        EXPECT_EQ(c.samples, 100);
    }
}

TEST(IDelta, PositiveOnHalfBall) {
    for (int N : {2, 3, 4}) {
        const GreenKernel k({N, 0.0, 1.0});
        for (int i = 0; i <= 50; ++i) EXPECT_GT(I_delta(k, 0.5 * i / 50), 0.0);
    }
}

TEST(IDeltaMax, BallMaxima) {
    const auto m3 = I_delta_max(GreenKernel({3, 0.0, 1.0}));
    EXPECT_EQ(m3.t_star, 0.0);
    EXPECT_NEAR(m3.value, 1.0 / 12.0, 1e-8);
    const auto m2 = I_delta_max(GreenKernel({2, 0.0, 1.0}));
    EXPECT_EQ(m2.t_star, 0.0);
    EXPECT_NEAR(m2.value, 0.25 * (0.25 + std::log(2.0) / 2), 1e-8);
}

TEST(IDeltaMax, AnnulusAgreesWithDenseClosedFormScan) {
    const GreenKernel k({2, 0.3, 1.0});
    const auto m = I_delta_max(k);
    double best = -INFINITY, arg = 0.0;
    const int samples = 100000;
    for (int i = 0; i <= samples; ++i) {
        const double t = 0.3 + 0.2 * i / samples;
        const auto cf = I_delta_closed_form(k, t);
        const double v = cf ? *cf : I_delta(k, t);
        if (v > best) best = v, arg = t;
    }
    EXPECT_NEAR(m.value, best, 1e-8);
    EXPECT_NEAR(m.t_star, arg, 1e-8);
}
