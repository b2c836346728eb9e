#pragma once

#include <span>
#include <vector>

#include "coincide/check_result.hpp"

namespace coincide {

/// A candidate comparison function psi: [0,inf) -> [0,inf).
///
/// Membership in the comparison class (nondecreasing, with summable iterate
/// series at every t > 0, hence psi(t) < t) is not enforced at construction;
/// `check_membership` tests it numerically so that non-members can be
/// represented and rejected.
///
/// Two kinds:
///  - Linear(lambda), 0 < lambda < 1: eval(t) = lambda * t.
///  - Table: monotone piecewise-linear interpolation through (t, value)
///    knots. The table is implicitly anchored at (0, 0). Beyond the last
///    knot it extrapolates with the final segment slope, clamped to
///    t * (1 - 1e-9) so extrapolation never violates psi(t) < t.
class ComparisonFunction {
public:
    struct Knot {
        double t;
        double value;
    };

    /// Throws std::invalid_argument unless 0 < lambda < 1.
    static ComparisonFunction linear(double lambda);

    /// Knots must have strictly increasing nonnegative t and nondecreasing
    /// nonnegative values; throws std::invalid_argument otherwise.
    static ComparisonFunction table(std::vector<Knot> knots);

    bool is_linear() const { return kind_ == Kind::Linear; }
    double lambda() const { return lambda_; }
    const std::vector<Knot>& knots() const { return knots_; }

    /// psi(t). Nonnegative t required; negative input is clamped to 0.
    double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    /// The n-th iterate psi^n(t); n = 0 returns t.
    double iterate(int n, double t) const;

    /// Upper bound on sum_{p=n}^inf psi^p(t).
    ///
    /// Linear kind uses the closed form lambda^n * t / (1 - lambda). The
    /// table kind accumulates iterates until the current term drops below
    /// `eps` with the last three term ratios below 1, then adds the
    /// geometric tail term / (1 - ratio). Throws non_summable if the decay
    /// guard is not met within `max_terms` terms.
    double tail_bound(int n, double t, double eps = kDefaultEps,
                      int max_terms = kDefaultMaxTerms) const;

    /// Numeric membership test: monotonicity across consecutive (sorted)
    /// samples, psi(t) < t at each sample, and tail convergence at each
    /// sample. Failure reports the first violating sample.
    CheckResult check_membership(std::span<const double> samples) const;

    /// Render as scenario-file text ("linear 0.5" or "table").
    std::vector<Knot> table_knots() const { return knots_; }

    static constexpr double kDefaultEps = 1e-12;
    static constexpr int kDefaultMaxTerms = 10000;

private:
    enum class Kind { Linear, Table };

    ComparisonFunction() = default;

    Kind kind_ = Kind::Linear;
    double lambda_ = 0.0;
    std::vector<Knot> knots_;
};

}  // namespace coincide
