#pragma once

#include "minkbranch/problem.hpp"

#include <vector>

namespace minkbranch {

/// Discrete principal eigenpair of -(r^{N-1}u')' = lambda r^{N-1} m u,
/// u'(delta) = 0 = u(R), on a uniform vertex grid with `cells` cells.
struct DiscreteEigenpair {
    double lambda = 0.0;
    std::vector<double> r;
    /// Normalised to u(delta) = max u = 1; u(R) = 0.
    std::vector<double> u;
    int iterations = 0;
};

/// Conservative finite volumes (half-cell fluxes r_{i+1/2}^{N-1}, zero flux at
/// delta) and inverse iteration on the generalised problem A u = lambda M u.
DiscreteEigenpair discrete_principal_eigenpair(const RadialDomain& domain, const Weight& m,
                                               int cells);

struct EigenResult {
    /// Richardson extrapolation of the n- and 2n-cell values.
    double lambda1 = 0.0;
    /// Value on the finer (2n-cell) grid, paired with `eigenfunction`.
    double lambda1_discrete = 0.0;
    double error_estimate = 0.0;
    int cells = 0;
    std::vector<double> r;
    std::vector<double> eigenfunction;
};

/// PreconditionError for a negative or identically zero weight, DomainError
/// for cells < 64, NumericalFailure when inverse iteration stalls.
EigenResult principal_eigenvalue(const RadialDomain& domain, const Weight& m, int cells = 2048);
EigenResult principal_eigenvalue(const RadialProblem& problem, const Weight& m, int cells = 2048);

struct AnchorPoint {
    int n = 0;
    double inner = 0.0;
    double lambda1 = 0.0;
    double error_estimate = 0.0;
};

struct AnchorSequence {
    std::vector<AnchorPoint> points;
    /// lambda_1(m, 0) on the ball itself.
    EigenResult ball;
};

/// lambda_1 of the shifted weight m(r - 1/n) on [1/n, R] for every n.
/// InvalidRegularization when some 1/n >= R.
AnchorSequence eigen_anchor_sequence(const RadialDomain& ball, const Weight& m,
                                     const std::vector<int>& n_list, int cells = 2048);

}  // namespace minkbranch
