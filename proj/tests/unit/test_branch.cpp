#include "minkbranch/branch.hpp"
#include "minkbranch/eigen.hpp"
#include "minkbranch/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace minkbranch;

namespace {

RadialProblem fold_ball() { return RadialProblem({2, 0.0, 1.0}, power_family(Weight::constant(1.0), 2.0)); }

Branch sweep(const RadialProblem& p, int count = 32, GridSpacing spacing = GridSpacing::LogNearEnds) {
    return sweep_branch(p, make_s_grid(p.domain(), count, spacing));
}

}  // namespace

TEST(Grid, EndpointsAndMonotone) {
    const RadialDomain d{2, 0.5, 1.0};
    for (auto spacing : {GridSpacing::Linear, GridSpacing::LogNearEnds}) {
        const auto g = make_s_grid(d, 64, spacing);
        ASSERT_EQ(g.size(), 64u);
        EXPECT_DOUBLE_EQ(g.front(), 0.5e-4);
        EXPECT_DOUBLE_EQ(g.back(), 0.5 - 0.5e-4);
        EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
        EXPECT_EQ(std::adjacent_find(g.begin(), g.end()), g.end());
    }
    // clustering: the log grid is denser at both ends than the linear one
    const auto lin = make_s_grid(d, 64, GridSpacing::Linear);
    const auto log = make_s_grid(d, 64, GridSpacing::LogNearEnds);
    EXPECT_LT(log[1] - log[0], lin[1] - lin[0]);
    EXPECT_LT(log[63] - log[62], lin[63] - lin[62]);
}

TEST(Grid, RejectsBadInput) {
    EXPECT_THROW(make_s_grid({2, 0.0, 1.0}, 1, GridSpacing::Linear), DomainError);
    const RadialProblem p = fold_ball();
    const std::vector<double> descending{0.5, 0.4};
    EXPECT_THROW(sweep_branch(p, descending), DomainError);
    const std::vector<double> outside{0.5, 1.0};
    EXPECT_THROW(sweep_branch(p, outside), DomainError);
}

TEST(Sweep, BifurcationBranch) {
    const RadialProblem p({2, 0.5, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0));
    const Branch b = sweep(p);
    EXPECT_EQ(b.shape, BranchShape::A2Bifurcation);
    EXPECT_FALSE(b.classification_warning.has_value());
    EXPECT_EQ(b.solved_count(), b.points.size());
    ASSERT_TRUE(b.anchor_lambda1.has_value());
    const Thresholds t = extract_thresholds(p, b);
    EXPECT_LE(t.lambda_star, *b.anchor_lambda1 * (1 + 1e-9));
    EXPECT_GT(t.lambda_star, 0.0);
    for (const auto& pt : b.points) {
        EXPECT_TRUE(pt.monotone);
        EXPECT_TRUE(pt.positive);
        EXPECT_GT(pt.min_one_minus_abs_uprime, 0.0);
        EXPECT_LT(std::abs(pt.u_at_R_residual), 1e-9);
    }
}

TEST(Sweep, MonotoneBranchStartsAtEigenvalue) {
    const RadialProblem p({2, 0.5, 1.0}, linear_plus_family(Weight::constant(1.0), 0.0));
    const Branch b = sweep(p, 24);
    for (std::size_t i = 1; i < b.points.size(); ++i) EXPECT_GT(b.points[i].lambda, b.points[i - 1].lambda);
    const double l1 = principal_eigenvalue(p.domain(), Weight::constant(1.0)).lambda1;
    EXPECT_NEAR(extract_thresholds(p, b).lambda_star, l1, 1e-5 * l1);
}

TEST(Sweep, FoldBranchHasTwoRootsAboveMinimum) {
    const RadialProblem p = fold_ball();
    const Branch b = sweep(p, 48);
    EXPECT_EQ(b.shape, BranchShape::A4Fold);
    const Thresholds t = extract_thresholds(p, b);
    ASSERT_TRUE(t.fold_lambda.has_value());
    EXPECT_GT(*t.fold_lambda, 4.0);
    EXPECT_EQ(solutions_at_lambda(p, 2 * *t.fold_lambda).size(), 2u);
    EXPECT_TRUE(solutions_at_lambda(p, 0.9 * *t.fold_lambda).empty());
}

TEST(Sweep, SublinearBranchSolvesEverywhere) {
    const RadialProblem p({3, 0.0, 1.0}, root_family(0.5));
    const Branch b = sweep(p, 24);
    EXPECT_EQ(b.shape, BranchShape::A3FromZero);
    for (double lambda : {1e-2, 1.0, 1e2}) EXPECT_FALSE(solutions_at_lambda(p, lambda).empty()) << lambda;
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    const RadialProblem p({2, 0.5, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0));
    const auto grid = make_s_grid(p.domain(), 16, GridSpacing::LogNearEnds);
    SweepOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const Branch a = sweep_branch(p, grid, one);
    const Branch b = sweep_branch(p, grid, four);
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].lambda, b.points[i].lambda);
}

TEST(Minimum, SyntheticQuadratic) {
    const auto fn = [](double s) { return (s - 0.37) * (s - 0.37) + 2.0; };
    std::vector<double> s, l;
    for (int i = 0; i <= 20; ++i) {
        s.push_back(i / 20.0);
        l.push_back(fn(i / 20.0));
    }
    const auto m = refine_branch_minimum(fn, s, l);
    EXPECT_FALSE(m.edge);
    EXPECT_NEAR(m.s, 0.37, 1e-6);
    EXPECT_NEAR(m.lambda, 2.0, 1e-12);
    std::vector<double> rising;
    for (double x : s) rising.push_back(1.0 + x);
    EXPECT_TRUE(refine_branch_minimum([](double x) { return 1.0 + x; }, s, rising).edge);
}

TEST(Thresholds, FoldOnGridEdgeIsReported) {
    const RadialProblem p = fold_ball();
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back(0.75 + 0.2 * i / 11);
    const Branch b = sweep_branch(p, grid);
    EXPECT_THROW(extract_thresholds(p, b), FoldNotBracketed);
}

TEST(Thresholds, Formula) {
    // min{m_f/2, (N-1)/(8R)} = min{0.5, 0.125} = 0.125
    EXPECT_NEAR(threshold_formula(0.25, 1.0, 2, 1.0, 0.1), 1.125 * 0.25 / (0.125 * 0.1) + 0.25 / 8, 1e-12);
    EXPECT_TRUE(std::isinf(threshold_formula(0.25, 0.0, 2, 1.0, 0.1)));
}

TEST(Bounds, DeltaBoundSeparatesBranch) {
    const RadialProblem p({3, 0.25, 1.0}, power_family(Weight::constant(1.0), 2.0));
    const DeltaBound d = lambda_delta_bound(p);
    EXPECT_DOUBLE_EQ(d.rho0, 0.75 / 4);
    EXPECT_DOUBLE_EQ(d.eps, 0.75 / 8);
    EXPECT_GT(d.beta, 0.0);
    EXPECT_GT(d.lambda_delta, 0.0);
    const auto at_rho = solve_lambda_for_s(p, d.rho0);
    ASSERT_EQ(at_rho.status, SolveStatus::Solved);
    EXPECT_GE(d.lambda_delta, at_rho.lambda);
}

TEST(Bounds, DeltaBoundUnavailable) {
    EXPECT_THROW(lambda_delta_bound(fold_ball()), BoundUnavailable);
    EXPECT_THROW(lambda_delta_bound(RadialProblem({2, 0.5, 1.0}, power_family(Weight::constant(1.0), 2.0))),
                 BoundUnavailable);
}

TEST(Bounds, StarBound) {
    const RadialProblem p({3, 0.0, 1.0}, power_family(Weight::constant(1.0), 2.0));
    const StarBound s = lambda_star_bound(p, {4, 8, 16, 32});
    EXPECT_NEAR(s.i0_max, 1.0 / 12.0, 1e-8);
    EXPECT_GT(s.lambda_star, 1.0);
    EXPECT_EQ(s.sequence.size(), 4u);
    for (const auto& r : s.sequence) {
        if (r.available) {
            EXPECT_GT(r.lambda, 0.0);
        }
    }
    EXPECT_THROW(lambda_star_bound(RadialProblem({3, 0.2, 1.0}, root_family(0.5)), {4}), PreconditionError);
}

TEST(Bounds, SufficientConditionConstantProduct) {
    for (int N : {2, 3, 5}) {
        const double R = 1.5;
        const RadialProblem p({N, 0.0, R}, power_family(Weight::constant(1.0), 2.0));
        const auto c = check_sufficient_condition(p, 1.0, Weight::constant(1.0), [](double) { return 1.0; });
        EXPECT_NEAR(c.threshold, (N + 1) / R, 1e-10 * (N + 1) / R);
        EXPECT_FALSE(c.holds);
        EXPECT_TRUE(check_sufficient_condition(p, 1.1 * (N + 1) / R, Weight::constant(1.0), [](double) { return 1.0; })
                        .holds);
    }
}

TEST(Bounds, SufficientConditionGivesSolution) {
    const int N = 3;
    const double R = 1.0;
    Nonlinearity f([](double, double) { return 1.0; }, ZeroLimit::Superlinear);
    f.with_product(Weight::constant(1.0), [](double) { return 1.0; });
    const RadialProblem p({N, 0.0, R}, f);
    EXPECT_FALSE(solutions_at_lambda(p, 1.1 * (N + 1) / R).empty());
}

TEST(Family, ExtensionIsFlatAndContinuous) {
    const RadialProblem ball({2, 0.0, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0));
    const RadialProblem reg = regularized_problem(ball, 8);
    const auto sol = solve_lambda_for_s(reg, 0.3);
    const auto shot = integrate_profile(reg, sol.lambda, 0.3);
    const auto ext = extend_to_ball(shot.profile);
    EXPECT_EQ(ext.r.front(), 0.0);
    std::size_t k = 0;
    while (ext.r[k] < 1.0 / 8) {
        EXPECT_EQ(ext.u[k], 0.3);
        EXPECT_EQ(ext.uprime[k], 0.0);
        ++k;
    }
    EXPECT_EQ(ext.r[k], 1.0 / 8);
    EXPECT_EQ(ext.u[k], 0.3);
    EXPECT_TRUE(std::is_sorted(ext.r.begin(), ext.r.end()));
}

TEST(Family, DistancesDecrease) {
    const RadialProblem ball({2, 0.0, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0));
    const auto rep = family_limit_pipeline(ball, {4, 8, 16, 32});
    ASSERT_EQ(rep.members.size(), 4u);
    EXPECT_TRUE(rep.converging);
    for (std::size_t i = 1; i < rep.members.size(); ++i) EXPECT_LT(rep.members[i].distance, rep.members[i - 1].distance);
}

TEST(Report, ComputeBoundsOnBifurcationBall) {
    const RadialProblem p({2, 0.0, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0));
    const Branch b = sweep(p, 32);
    const BoundsReport r = compute_bounds(p, b, {4, 8, 16, 32});
    ASSERT_TRUE(r.lambda1.has_value());
    EXPECT_DOUBLE_EQ(r.lambda0, std::max(*r.lambda1, r.thresholds.lambda_star));
    EXPECT_FALSE(r.delta_bound.has_value());
    EXPECT_TRUE(r.delta_bound_unavailable.has_value());
    EXPECT_TRUE(r.star_bound.has_value());
    EXPECT_FALSE(solutions_at_lambda(p, 1.05 * r.lambda0).empty());
}
