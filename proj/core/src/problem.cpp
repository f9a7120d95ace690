#include "minkbranch/problem.hpp"

#include "minkbranch/errors.hpp"
#include "minkbranch/numerics.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace minkbranch {

Weight::Weight(std::function<double(double)> eval, std::optional<double> max_hint, std::string label)
    : eval_(std::move(eval)), max_hint_(max_hint), label_(std::move(label)) {}

Weight Weight::constant(double c) {
    std::ostringstream os;
    os.precision(17);
    os << c;
    Weight w([c](double) { return c; }, c, os.str());
    w.constant_ = c;
    return w;
}

Weight Weight::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DomainError("Weight::polynomial: no coefficients");
    std::ostringstream os;
    os.precision(17);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k) os << " + ";
        os << coeffs[k];
        if (k == 1) os << "*r";
        if (k > 1) os << "*r^" << k;
    }
    if (coeffs.size() == 1) return constant(coeffs[0]);
    return Weight(
        [c = std::move(coeffs)](double r) {
            double v = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) v = v * r + c[k];
            return v;
        },
        std::nullopt, os.str());
}

double Weight::max_on(double a, double b) const {
    if (max_hint_) return *max_hint_;
    return scan_maximize(eval_, a, b).value;
}

double Weight::min_on(double a, double b) const {
    if (constant_) return *constant_;
    return scan_minimize(eval_, a, b).value;
}

Weight Weight::shifted(double shift) const {
    Weight w([e = eval_, shift](double r) { return e(r - shift); }, max_hint_,
             label_ + " (shifted)");
    w.constant_ = constant_;
    return w;
}

std::string to_string(ZeroLimit limit) {
    switch (limit) {
        case ZeroLimit::Linear: return "linear";
        case ZeroLimit::Superlinear: return "superlinear";
        case ZeroLimit::Sublinear: return "sublinear";
    }
    return "unknown";
}

Nonlinearity::Nonlinearity(Fn f, ZeroLimit limit, std::optional<Weight> linear_weight, double alpha,
                           std::string label)
    : f_(std::move(f)),
      limit_(limit),
      weight_(std::move(linear_weight)),
      alpha_(alpha),
      label_(std::move(label)) {
    if (limit_ == ZeroLimit::Linear && !weight_) {
        throw PreconditionError("Nonlinearity: linear zero limit requires a weight m(r)");
    }
}

Nonlinearity& Nonlinearity::with_product(Weight mu, std::function<double(double)> p) {
    product_ = Product{std::move(mu), std::move(p)};
    return *this;
}

Nonlinearity power_family(Weight mu, double q) {
    if (!(q > 1.0)) throw DomainError("power_family: exponent q must exceed 1");
    std::ostringstream os;
    os.precision(17);
    os << "(" << mu.label() << ")*s^" << q;
    auto p = [q](double s) { return std::pow(s, q); };
    Nonlinearity f([mu, q](double r, double s) { return mu(r) * std::pow(s, q); },
                   ZeroLimit::Sublinear, std::nullopt, std::numeric_limits<double>::infinity(),
                   os.str());
    f.with_product(mu, p);
    return f;
}

Nonlinearity root_family(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("root_family: exponent p must lie in (0,1)");
    std::ostringstream os;
    os.precision(17);
    os << "s^" << p;
    Nonlinearity f([p](double, double s) { return std::pow(s, p); }, ZeroLimit::Superlinear,
                   std::nullopt, std::numeric_limits<double>::infinity(), os.str());
    f.with_product(Weight::constant(1.0), [p](double s) { return std::pow(s, p); });
    return f;
}

Nonlinearity linear_plus_family(Weight m, double c) {
    if (c < 0.0) throw DomainError("linear_plus_family: coefficient must be non-negative");
    std::ostringstream os;
    os.precision(17);
    os << "(" << m.label() << ")*s*(1 + " << c << "*s)";
    Nonlinearity f([m, c](double r, double s) { return m(r) * s * (1.0 + c * s); },
                   ZeroLimit::Linear, m, std::numeric_limits<double>::infinity(), os.str());
    f.with_product(m, [c](double s) { return s * (1.0 + c * s); });
    return f;
}

void RadialDomain::validate() const {
    if (dimension < 2) throw DomainError("RadialDomain: dimension must be >= 2");
    if (!(inner >= 0.0)) throw DomainError("RadialDomain: inner radius must be >= 0");
    if (!(outer > inner)) throw DomainError("RadialDomain: outer radius must exceed inner radius");
    if (!std::isfinite(outer)) throw DomainError("RadialDomain: outer radius must be finite");
}

RadialProblem::RadialProblem(RadialDomain domain, Nonlinearity f)
    : domain_(domain), f_(std::move(f)) {
    domain_.validate();
    if (!(f_.alpha() > domain_.outer)) {
        throw DomainError("RadialProblem: nonlinearity domain bound alpha must exceed R");
    }
}

double phi1(double y) {
    if (!(std::abs(y) < 1.0)) throw DomainError("phi1: |y| must be < 1");
    return y / std::sqrt((1.0 - y) * (1.0 + y));
}

double phi1_inverse(double v) {
    return v / std::hypot(1.0, v);
}

double h_cutoff(double y) {
    const double a = std::abs(y);
    if (a > 1.0) return 0.0;
    const double base = (1.0 - a) * (1.0 + a);
    return base * std::sqrt(base);
}

double f_truncated(const RadialProblem& problem, double r, double s) {
    if (s < 0.0) return -f_truncated(problem, r, -s);
    const double width = problem.domain().width();
    if (s <= width) return problem.nonlinearity()(r, s);
    if (s >= width + 1.0) return 0.0;
    const double edge = problem.nonlinearity()(r, width);
    return edge * (width + 1.0 - s);
}

double g_n(const RadialProblem& problem, int n, double r, double s) {
    if (n < 1 || !(1.0 / n < problem.outer())) {
        throw InvalidRegularization("g_n: regularization needs 1/n < R");
    }
    const double cut = 1.0 / n;
    if (r <= cut) return 0.0;
    return problem.nonlinearity()(r - cut, s);
}

RadialProblem regularized_problem(const RadialProblem& ball, int n) {
    if (ball.inner() != 0.0) throw PreconditionError("regularized_problem: needs a ball (delta = 0)");
    if (n < 1 || !(1.0 / n < ball.outer())) {
        throw InvalidRegularization("regularized_problem: regularization needs 1/n < R");
    }
    const double cut = 1.0 / n;
    const Nonlinearity& f = ball.nonlinearity();
    std::optional<Weight> weight;
    if (f.linear_weight()) weight = f.linear_weight()->shifted(cut);
    Nonlinearity shifted(
        // right limit at r = 1/n, the initial point of the annulus
        [f, cut](double r, double s) { return r < cut ? 0.0 : f(r - cut, s); }, f.zero_limit(),
        weight, f.alpha(), f.label() + " [shifted by 1/" + std::to_string(n) + "]");
    if (f.product()) {
        shifted.with_product(f.product()->mu.shifted(cut), f.product()->p);
    }
    RadialDomain d = ball.domain();
    d.inner = cut;
    return RadialProblem(d, std::move(shifted));
}

std::vector<std::string> check_assumptions(const RadialProblem& problem, int samples) {
    std::vector<std::string> issues;
    const auto& f = problem.nonlinearity();
    const double a = problem.inner();
    const double b = problem.outer();
    const double smax = std::min(f.alpha(), b) * (1.0 - 1e-9);
    for (int i = 0; i < samples; ++i) {
        const double r = a + (b - a) * i / (samples - 1);
        for (int j = 1; j < samples; ++j) {
            const double s = smax * j / (samples - 1);
            const double v = f(r, s);
            if (!(v > 0.0) && r > a) {
                std::ostringstream os;
                os << "f(" << r << ", " << s << ") = " << v << " is not positive";
                issues.push_back(os.str());
                return issues;
            }
        }
        const double s1 = 1e-6;
        const double s2 = 1e-8;
        const double q1 = f(r, s1) / s1;
        const double q2 = f(r, s2) / s2;
        switch (f.zero_limit()) {
            case ZeroLimit::Linear: {
                const double m = (*f.linear_weight())(r);
                if (m < 0.0) issues.push_back("weight m is negative at r = " + std::to_string(r));
                if (std::abs(q2 - m) > 1e-3 * std::max(1.0, std::abs(m))) {
                    issues.push_back("f/s does not approach m(r) at r = " + std::to_string(r));
                }
                break;
            }
            case ZeroLimit::Superlinear:
                if (!(q2 > q1)) issues.push_back("f/s is not growing as s -> 0 at r = " + std::to_string(r));
                if (f(r, 0.0) != 0.0) issues.push_back("f(r,0) != 0 at r = " + std::to_string(r));
                break;
            case ZeroLimit::Sublinear:
                if (!(q2 < q1) && q1 != 0.0) {
                    issues.push_back("f/s is not decaying as s -> 0 at r = " + std::to_string(r));
                }
                break;
        }
        if (!issues.empty()) return issues;
    }
    return issues;
}

}  // namespace minkbranch
