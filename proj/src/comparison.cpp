#include "coincide/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coincide/errors.hpp"

namespace coincide {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ComparisonFunction ComparisonFunction::linear(double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
        throw std::invalid_argument("linear comparison function requires 0 < lambda < 1, got " +
                                    fmt(lambda));
    }
    ComparisonFunction psi;
    psi.kind_ = Kind::Linear;
    psi.lambda_ = lambda;
    return psi;
}

ComparisonFunction ComparisonFunction::table(std::vector<Knot> knots) {
    if (knots.empty()) {
        throw std::invalid_argument("table comparison function requires at least one knot");
    }
    double prev_t = 0.0;  // the table is implicitly anchored at (0, 0)
    double prev_v = 0.0;
    for (const Knot& k : knots) {
        if (!(k.t > prev_t)) {
            throw std::invalid_argument(
                "table knot abscissae must be strictly increasing and positive");
        }
        if (k.value < 0.0) {
            throw std::invalid_argument("table knot values must be nonnegative");
        }
        if (k.value < prev_v) {
            throw std::invalid_argument("table knot values must be nondecreasing");
        }
        prev_t = k.t;
        prev_v = k.value;
    }
    ComparisonFunction psi;
    psi.kind_ = Kind::Table;
    psi.knots_ = std::move(knots);
    return psi;
}

double ComparisonFunction::eval(double t) const {
    if (t <= 0.0) return 0.0;
    if (kind_ == Kind::Linear) return lambda_ * t;

    // Anchor segment (0,0) -> first knot.
    const Knot& front = knots_.front();
    if (t <= front.t) {
        return front.t > 0.0 ? front.value * (t / front.t) : front.value;
    }
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const Knot& k, double x) { return k.t < x; });
    if (it != knots_.end()) {
        if (it->t == t) return it->value;
        const Knot& hi = *it;
        const Knot& lo = *(it - 1);
        double w = (t - lo.t) / (hi.t - lo.t);
        return lo.value + w * (hi.value - lo.value);
    }
    // Extrapolate with the last segment slope; clamp below the identity.
    const Knot& last = knots_.back();
    double slope;
    if (knots_.size() >= 2) {
        const Knot& prev = knots_[knots_.size() - 2];
        slope = (last.value - prev.value) / (last.t - prev.t);
    } else {
        slope = last.t > 0.0 ? last.value / last.t : 0.0;
    }
    double v = last.value + slope * (t - last.t);
    double cap = t * (1.0 - 1e-9);
    return std::min(v, cap);
}

double ComparisonFunction::iterate(int n, double t) const {
    if (n < 0) throw std::invalid_argument("iterate count must be nonnegative");
    double v = t < 0.0 ? 0.0 : t;
    for (int i = 0; i < n; ++i) v = eval(v);
    return v;
}

double ComparisonFunction::tail_bound(int n, double t, double eps, int max_terms) const {
    if (n < 0) throw std::invalid_argument("tail index must be nonnegative");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (t <= 0.0) return 0.0;

    if (kind_ == Kind::Linear) {
        return std::pow(lambda_, n) * t / (1.0 - lambda_);
    }

    double term = iterate(n, t);
    if (term == 0.0) return 0.0;

    double sum = 0.0;
    double ratios[3] = {1.0, 1.0, 1.0};
    for (int k = 0; k < max_terms; ++k) {
        if (term < eps && k >= 3) {
            double r = std::max({ratios[0], ratios[1], ratios[2]});
            if (r < 1.0) return sum + term / (1.0 - r);
        }
        sum += term;
        double next = eval(term);
        ratios[k % 3] = term > 0.0 ? next / term : 0.0;
        term = next;
        if (term == 0.0) return sum;
    }
    throw non_summable("iterate series failed the decay guard after " +
                       std::to_string(max_terms) + " terms at t = " + fmt(t));
}

CheckResult ComparisonFunction::check_membership(std::span<const double> samples) const {
    if (samples.empty()) {
        throw std::invalid_argument("membership check requires at least one sample");
    }
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());

    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (eval(s[i]) > eval(s[i + 1])) {
            return CheckResult::fail("nondecreasing violated",
                                     "t = " + fmt(s[i]) + ", t' = " + fmt(s[i + 1]));
        }
    }
    for (double t : s) {
        if (t <= 0.0) continue;
        if (!(eval(t) < t)) {
            return CheckResult::fail("psi(t) < t violated", "t = " + fmt(t),
                                     eval(t) - t);
        }
    }
    for (double t : s) {
        if (t <= 0.0) continue;
        try {
            tail_bound(0, t);
        } catch (const non_summable&) {
            return CheckResult::fail("NonSummable", "t = " + fmt(t));
        }
    }
    return CheckResult::pass();
}

}  // namespace coincide
