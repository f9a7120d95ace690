#include "minkbranch/eigen.hpp"
#include "minkbranch/errors.hpp"
#include "minkbranch/shoot.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace minkbranch;

namespace {

RadialProblem a2_annulus() { return RadialProblem({2, 0.5, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0)); }

RadialProblem constant_source_ball() {
    return RadialProblem({3, 0.0, 1.0}, Nonlinearity([](double, double) { return 1.0; }, ZeroLimit::Superlinear));
}

}  // namespace

TEST(Shoot, ConstantSourceMatchesQuadrature) {
    const RadialProblem p = constant_source_ball();
    for (double lambda : {0.5, 3.0, 12.0}) {
        const double drop = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double r) { return phi1_inverse(lambda * r / 3); }, 0.0, 1.0, 10, 1e-15);
        // closed form of the same integral
        EXPECT_NEAR(drop, 3 / lambda * (std::sqrt(1 + lambda * lambda / 9) - 1), 1e-14);
        const auto shot = integrate_profile(p, lambda, 0.9, 1e-10);
        EXPECT_NEAR(shot.terminal - 0.9, -drop, 1e-9) << lambda;
        // flux is exactly -lambda r^3/3
        for (std::size_t i = 0; i < shot.profile.size(); i += 17) {
            const double r = shot.profile.r[i];
            EXPECT_NEAR(shot.profile.w[i], -lambda * r * r * r / 3, 1e-9 * std::max(1.0, lambda));
        }
    }
}

TEST(Shoot, ProfilesDecreaseWithSlopeBelowOne) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<RadialProblem> problems{
        a2_annulus(),
        RadialProblem({2, 0.0, 1.0}, power_family(Weight::constant(1.0), 2.0)),
        RadialProblem({3, 0.0, 1.0}, root_family(0.5)),
        RadialProblem({3, 0.25, 1.0}, power_family(Weight::polynomial({1.0, 1.0}), 2.0)),
    };
    for (const auto& p : problems) {
        const double width = p.outer() - p.inner();
        for (int k = 0; k < 40; ++k) {
            const double s = width * (0.001 + 0.998 * unit(rng));
            const double lambda = std::pow(10.0, -2.0 + 5.0 * unit(rng));
            const auto shot = integrate_profile(p, lambda, s, 1e-9, {.stop_at_zero = true});
            EXPECT_TRUE(shot.monotone) << lambda << " " << s;
            EXPECT_GT(shot.min_one_minus_abs_uprime, 0.0);
            for (std::size_t i = 1; i < shot.profile.size(); ++i) {
                EXPECT_LT(shot.profile.u[i], shot.profile.u[i - 1]);
                EXPECT_LT(std::abs(shot.profile.uprime[i]), 1.0);
            }
        }
    }
}

TEST(Shoot, FluxAndSecondOrderFormsAgree) {
    const RadialProblem p = a2_annulus();
    const auto a = integrate_profile(p, 30.0, 0.3, 1e-11);
    const auto b = integrate_second_order_form(p, 30.0, 0.3, 1e-11);
    ASSERT_EQ(a.uniform_u.size(), b.uniform_u.size());
    double diff = 0.0;
    for (std::size_t i = 0; i < a.uniform_u.size(); ++i) diff = std::max(diff, std::abs(a.uniform_u[i] - b.uniform_u[i]));
    EXPECT_LT(diff, 1e-6);
}

TEST(Shoot, FluxIdentityHolds) {
    const RadialProblem p = a2_annulus();
    const auto shot = integrate_profile(p, 25.0, 0.2);
    EXPECT_LT(flux_identity_residual(p, shot), 1e-7);
}

TEST(Shoot, InvalidArguments) {
    const RadialProblem p = a2_annulus();
    EXPECT_THROW(integrate_profile(p, 1.0, 0.0), DomainError);
    EXPECT_THROW(integrate_profile(p, 1.0, 0.5), DomainError);
    EXPECT_THROW(integrate_profile(p, -1.0, 0.2), DomainError);
    EXPECT_THROW(integrate_profile(p, 1.0, 0.2, 1e-3), DomainError);
}

TEST(Residual, DecreasingInLambdaWithNegativeTail) {
    const RadialProblem p = a2_annulus();
    const double s = 0.25;
    const auto sol = solve_lambda_for_s(p, s);
    ASSERT_EQ(sol.status, SolveStatus::Solved);
    double prev = INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double lambda = sol.lambda * std::pow(4.0, -1.0 + 2.0 * i / 49.0);
        const double res = shooting_residual(p, lambda, s);
        EXPECT_LT(res, prev) << lambda;
        prev = res;
    }
    EXPECT_LT(shooting_residual(p, 1e3, s), 0.0);
    EXPECT_LT(positive_residual(p, 1e3, s), 0.0);
}

TEST(Solve, SmallNormApproachesPrincipalEigenvalue) {
    const RadialProblem p = a2_annulus();
    const double l1 = principal_eigenvalue(p.domain(), Weight::constant(1.0)).lambda1;
    const auto sol = solve_lambda_for_s(p, 1e-3);
    ASSERT_EQ(sol.status, SolveStatus::Solved);
    EXPECT_NEAR(sol.lambda, l1, 1e-2 * l1);
    EXPECT_LT(sol.residual, 1e-9);
}

TEST(Solve, SuperlinearBranchBlowsUpAtZero) {
    const RadialProblem p({2, 0.0, 1.0}, power_family(Weight::constant(1.0), 2.0));
    const auto a = solve_lambda_for_s(p, 1e-4);
    const auto b = solve_lambda_for_s(p, 1e-2);
    ASSERT_EQ(a.status, SolveStatus::Solved);
    ASSERT_EQ(b.status, SolveStatus::Solved);
    EXPECT_GT(a.lambda, 10 * b.lambda);
}

TEST(Solve, SublinearBranchStartsAtZero) {
    const RadialProblem p({2, 0.0, 1.0}, root_family(0.5));
    const auto a = solve_lambda_for_s(p, 1e-4);
    const auto b = solve_lambda_for_s(p, 1e-2);
    ASSERT_EQ(a.status, SolveStatus::Solved);
    EXPECT_LT(a.lambda, b.lambda);
}

TEST(Solve, LargeLambdaProfilesApproachTheCone) {
    const RadialProblem p = a2_annulus();
    double prev_lambda = 0.0, prev_dev = INFINITY;
    for (double frac : {0.9, 0.97, 0.995}) {
        const auto sol = solve_lambda_for_s(p, frac * 0.5);
        ASSERT_EQ(sol.status, SolveStatus::Solved);
        const double dev = measure_gradient_deviation(integrate_profile(p, sol.lambda, frac * 0.5), 0.1);
        EXPECT_GT(sol.lambda, prev_lambda);
        EXPECT_LT(dev, prev_dev);
        prev_lambda = sol.lambda;
        prev_dev = dev;
    }
}

TEST(Solve, SolutionsAtLambdaForFold) {
    const RadialProblem p({2, 0.0, 1.0}, power_family(Weight::constant(1.0), 2.0));
    const auto roots = solutions_at_lambda(p, 40.0);
    ASSERT_EQ(roots.size(), 2u);
    for (double s : roots) {
        const auto sol = solve_lambda_for_s(p, s);
        EXPECT_NEAR(sol.lambda, 40.0, 1e-5 * 40.0) << s;
    }
    EXPECT_TRUE(solutions_at_lambda(p, 10.0).empty());
}

TEST(GradientDeviation, SyntheticSamples) {
    ProfileSamples ps;
    // u' = -1 on [0, 0.5], 0 on [0.5, 1] with a sharp ramp
    for (int i = 0; i <= 1000; ++i) {
        const double r = i / 1000.0;
        const double up = r <= 0.5 ? -1.0 : 0.0;
        ps.push(r, 1.0 - std::min(r, 0.5), up, 0.0);
    }
    EXPECT_NEAR(measure_gradient_deviation(ps, 0.1), 0.5, 2e-3);
    EXPECT_NEAR(measure_gradient_deviation(ps, 2.0), 0.0, 1e-15);
}
