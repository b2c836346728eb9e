#include "coincide/iterate.hpp"

#include <cmath>
#include <limits>
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

std::string IterationTrace::export_table() const {
    std::ostringstream os;
    os << "n\tx\tg_x\tf_x\tstep_distance\talpha\tcertificate\n";
    for (std::size_t n = 0; n < points.size(); ++n) {
        os << n << '\t' << space.describe_point(points[n]) << '\t'
           << space.describe_point(g_values[n]) << '\t' << space.describe_point(f_values[n])
           << '\t';
        if (n < step_distances.size()) {
            os << fmt(step_distances[n]);
        } else {
            os << '-';
        }
        os << '\t';
        if (n < alpha_chain.size()) {
            os << fmt(alpha_chain[n]);
        } else {
            os << '-';
        }
        os << '\t';
        if (n < certificate.size()) {
            os << fmt(certificate[n]);
        } else {
            os << '-';
        }
        os << '\n';
    }
    return os.str();
}

IterationTrace jungck_iterate(const MappingPair& p, const AlphaFunction& alpha,
                              const ComparisonFunction& psi, const Point& x0, double tol,
                              std::size_t max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");
    if (!check_initial_point(p, alpha, x0)) {
        throw initial_point_rejected("alpha(g x0, f x0) < 1 at the starting point");
    }

    const Space& s = p.space();
    IterationTrace trace;
    trace.space = s;
    trace.points.push_back(x0);
    trace.g_values.push_back(p.g(x0));
    trace.f_values.push_back(p.f(x0));

    // Coincidence is accepted once the projected limit of the remaining
    // iterate series fits inside tol (a posteriori bound from the tail of
    // psi); plain gap <= tol alone can stop several multiples away from
    // the limit point.
    auto accept = [&](double gap) {
        if (!(gap <= tol)) return false;
        try {
            return psi.tail_bound(0, gap) <= tol;
        } catch (const non_summable&) {
            return false;
        }
    };

    for (std::size_t n = 0; n < max_iter; ++n) {
        Point fxn = trace.f_values.back();
        std::optional<Point> next = p.g_preimage(fxn);
        if (!next) {
            trace.outcome = IterationTrace::Outcome::PreimageFailure;
            trace.iterations = n;
            break;
        }
        Point gnext = p.g(*next);
        double preimage_err = s.is_finite() ? (gnext == fxn ? 0.0 : 1.0)
                                            : std::abs(gnext.as_coord() - fxn.as_coord());
        if (!(preimage_err <= 1e-12)) {
            trace.outcome = IterationTrace::Outcome::PreimageFailure;
            trace.iterations = n;
            break;
        }

        Point fnext = p.f(*next);
        double step = s.distance(fxn, fnext);
        double alpha_val = alpha.eval(trace.g_values.back(), gnext);

        trace.points.push_back(*next);
        trace.g_values.push_back(gnext);
        trace.f_values.push_back(fnext);
        trace.step_distances.push_back(step);
        trace.alpha_chain.push_back(alpha_val);
        trace.iterations = n + 1;

        if (step == 0.0) {
            trace.outcome = IterationTrace::Outcome::CoincidenceFound;
            trace.found = *next;
            break;
        }
        double gap = s.distance(fnext, gnext);
        if (accept(gap)) {
            trace.outcome = IterationTrace::Outcome::CoincidenceFound;
            trace.found = *next;
            break;
        }
    }

    if (!trace.step_distances.empty()) {
        double d0 = trace.step_distances.front();
        trace.certificate.reserve(trace.points.size());
        for (std::size_t n = 0; n < trace.points.size(); ++n) {
            double bound = std::numeric_limits<double>::quiet_NaN();
            try {
                bound = psi.tail_bound(static_cast<int>(n), d0);
            } catch (const non_summable&) {
            }
            trace.certificate.push_back(bound);
        }
    }
    return trace;
}

CheckResult verify_cauchy_certificate(const IterationTrace& trace,
                                      const ComparisonFunction& psi) {
    const std::size_t len = trace.f_values.size();
    if (len < 2) return CheckResult::pass();
    double d0 = trace.step_distances.front();

    double worst = 0.0;
    std::size_t worst_n = 0, worst_m = 0;
    bool violated = false;
    for (std::size_t n = 0; n + 1 < len; ++n) {
        double bound;
        try {
            bound = psi.tail_bound(static_cast<int>(n), d0) + 1e-9;
        } catch (const non_summable&) {
            return CheckResult::fail("tail bound not summable", "n = " + std::to_string(n));
        }
        for (std::size_t m = n + 1; m < len; ++m) {
            double d = trace.space.distance(trace.f_values[n], trace.f_values[m]);
            double v = d - bound;
            if (v > 0.0 && (!violated || v > worst)) {
                violated = true;
                worst = v;
                worst_n = n;
                worst_m = m;
            }
        }
    }
    if (!violated) return CheckResult::pass();
    return CheckResult::fail(
        "Cauchy certificate violated",
        "(n, m) = (" + std::to_string(worst_n) + ", " + std::to_string(worst_m) + ")", worst);
}

}  // namespace coincide
