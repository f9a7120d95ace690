#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace minkbranch {

/// Scalar profile of the radius, e.g. the weight m(r) or mu(r).
class Weight {
public:
    Weight(std::function<double(double)> eval, std::optional<double> max_hint, std::string label);

    static Weight constant(double c);
    /// c0 + c1 r + c2 r^2 + ...
    static Weight polynomial(std::vector<double> coeffs);

    double operator()(double r) const { return eval_(r); }

    [[nodiscard]] const std::optional<double>& max_hint() const noexcept { return max_hint_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    /// Maximum on [a, b]: the hint when present, otherwise a 4096-point scan
    /// refined by golden section.
    [[nodiscard]] double max_on(double a, double b) const;
    [[nodiscard]] double min_on(double a, double b) const;

    /// m(r - shift), as used by the shifted annulus family.
    [[nodiscard]] Weight shifted(double shift) const;

private:
    std::function<double(double)> eval_;
    std::optional<double> max_hint_;
    std::string label_;
    std::optional<double> constant_;
};

/// Behaviour of f(r, s)/s as s -> 0+.
enum class ZeroLimit {
    Linear,       // -> m(r)
    Superlinear,  // -> infinity, f(r, 0) = 0
    Sublinear,    // -> 0
};

std::string to_string(ZeroLimit limit);

/// f(r, s) >= 0 on [delta, R] x [0, alpha) with a declared small-s behaviour.
class Nonlinearity {
public:
    using Fn = std::function<double(double, double)>;

    Nonlinearity(Fn f, ZeroLimit limit, std::optional<Weight> linear_weight = std::nullopt,
                 double alpha = std::numeric_limits<double>::infinity(), std::string label = "custom");

    double operator()(double r, double s) const { return f_(r, s); }

    [[nodiscard]] ZeroLimit zero_limit() const noexcept { return limit_; }
    /// m(r) when the zero limit is Linear.
    [[nodiscard]] const std::optional<Weight>& linear_weight() const noexcept { return weight_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    /// Factorisation f = mu(r) p(s), available for the built-in families.
    struct Product {
        Weight mu;
        std::function<double(double)> p;
    };
    [[nodiscard]] const std::optional<Product>& product() const noexcept { return product_; }
    Nonlinearity& with_product(Weight mu, std::function<double(double)> p);

private:
    Fn f_;
    ZeroLimit limit_;
    std::optional<Weight> weight_;
    double alpha_;
    std::string label_;
    std::optional<Product> product_;
};

/// mu(r) s^q with q > 1: sublinear at zero.
Nonlinearity power_family(Weight mu, double q);
/// s^p with 0 < p < 1: superlinear at zero.
Nonlinearity root_family(double p);
/// m(r) s (1 + c s): linear at zero with weight m.
Nonlinearity linear_plus_family(Weight m, double c = 1.0);

/// Ball (inner = 0) or annulus in dimension N >= 2.
struct RadialDomain {
    int dimension = 2;
    double inner = 0.0;
    double outer = 1.0;

    [[nodiscard]] double width() const noexcept { return outer - inner; }
    /// Throws DomainError unless N >= 2 and 0 <= inner < outer < infinity.
    void validate() const;
};

class RadialProblem {
public:
    /// Validates the domain and alpha > R.
    RadialProblem(RadialDomain domain, Nonlinearity f);

    [[nodiscard]] const RadialDomain& domain() const noexcept { return domain_; }
    [[nodiscard]] int dimension() const noexcept { return domain_.dimension; }
    [[nodiscard]] double inner() const noexcept { return domain_.inner; }
    [[nodiscard]] double outer() const noexcept { return domain_.outer; }
    [[nodiscard]] const Nonlinearity& nonlinearity() const noexcept { return f_; }

private:
    RadialDomain domain_;
    Nonlinearity f_;
};

/// y / sqrt(1 - y^2); DomainError for |y| >= 1.
double phi1(double y);
/// v / sqrt(1 + v^2), the inverse of phi1 on all of R.
double phi1_inverse(double v);
/// (1 - y^2)^{3/2} for |y| <= 1, else 0.
double h_cutoff(double y);

/// Odd extension of f cut off beyond R - delta: f on [0, R-delta], zero from
/// R-delta+1 on, linear in between.
double f_truncated(const RadialProblem& problem, double r, double s);

/// Shifted source on (0, R]: 0 for r <= 1/n, f(r - 1/n, s) beyond.
/// Throws InvalidRegularization when 1/n >= R.
double g_n(const RadialProblem& problem, int n, double r, double s);

/// Annulus problem on [1/n, R] whose source is g_n, except at r = 1/n itself
/// where it takes the right limit f(0, s) (the initial point of the shot).
/// The linear weight (when present) is shifted the same way.
RadialProblem regularized_problem(const RadialProblem& ball, int n);

/// Checks the declared assumptions on a sample of the slab; returns the list
/// of violations (empty when consistent).
std::vector<std::string> check_assumptions(const RadialProblem& problem, int samples = 64);

}  // namespace minkbranch
