#include "coincide/pair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coincide/comparison.hpp"
#include "coincide/errors.hpp"
#include "coincide/rng.hpp"

namespace coincide {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string pair_text(const Space& s, const Point& x, const Point& y) {
    return "(" + s.describe_point(x) + ", " + s.describe_point(y) + ")";
}

bool in_union(const std::vector<ClosedInterval>& sets, double x) {
    for (const ClosedInterval& c : sets) {
        if (c.contains(x)) return true;
    }
    return false;
}

}  // namespace

AlphaFunction AlphaFunction::constant(double v) {
    if (v < 0.0) throw std::invalid_argument("alpha values must be nonnegative");
    AlphaFunction a;
    a.kind_ = Kind::Constant;
    a.v1_ = v;
    return a;
}

AlphaFunction AlphaFunction::matrix(std::size_t n, std::vector<double> values_row_major) {
    if (values_row_major.size() != n * n) {
        throw std::invalid_argument("alpha matrix size does not match point count");
    }
    for (double v : values_row_major) {
        if (v < 0.0) throw std::invalid_argument("alpha values must be nonnegative");
    }
    AlphaFunction a;
    a.kind_ = Kind::Matrix;
    a.n_ = n;
    a.values_ = std::move(values_row_major);
    return a;
}

AlphaFunction AlphaFunction::box(double xlo, double xhi, double ylo, double yhi, double inside,
                                 double outside) {
    if (inside < 0.0 || outside < 0.0) {
        throw std::invalid_argument("alpha values must be nonnegative");
    }
    AlphaFunction a;
    a.kind_ = Kind::Box;
    a.xlo_ = xlo;
    a.xhi_ = xhi;
    a.ylo_ = ylo;
    a.yhi_ = yhi;
    a.v1_ = inside;
    a.v2_ = outside;
    return a;
}

AlphaFunction AlphaFunction::threshold(Rel rel, double if_true, double if_false) {
    if (if_true < 0.0 || if_false < 0.0) {
        throw std::invalid_argument("alpha values must be nonnegative");
    }
    AlphaFunction a;
    a.kind_ = Kind::Threshold;
    a.rel_ = rel;
    a.v1_ = if_true;
    a.v2_ = if_false;
    return a;
}

AlphaFunction AlphaFunction::pair_sets(std::vector<ClosedInterval> first,
                                       std::vector<ClosedInterval> second) {
    AlphaFunction a;
    a.kind_ = Kind::PairSets;
    a.first_ = std::move(first);
    a.second_ = std::move(second);
    return a;
}

double AlphaFunction::eval(const Point& x, const Point& y) const {
    switch (kind_) {
        case Kind::Constant: return v1_;
        case Kind::Matrix: return values_.at(x.as_index() * n_ + y.as_index());
        case Kind::Box: {
            double a = x.as_coord(), b = y.as_coord();
            bool in = a >= xlo_ && a <= xhi_ && b >= ylo_ && b <= yhi_;
            return in ? v1_ : v2_;
        }
        case Kind::Threshold: {
            double a = x.as_coord(), b = y.as_coord();
            bool hit = false;
            switch (rel_) {
                case Rel::Gt: hit = a > b; break;
                case Rel::Ge: hit = a >= b; break;
                case Rel::Lt: hit = a < b; break;
                case Rel::Le: hit = a <= b; break;
            }
            return hit ? v1_ : v2_;
        }
        case Kind::PairSets: {
            double a = x.as_coord(), b = y.as_coord();
            bool hit = (in_union(first_, a) && in_union(second_, b)) ||
                       (in_union(second_, a) && in_union(first_, b));
            return hit ? 1.0 : 0.0;
        }
    }
    throw std::logic_error("unreachable alpha kind");
}

std::string AlphaFunction::to_text() const {
    switch (kind_) {
        case Kind::Constant: return "constant " + fmt(v1_);
        case Kind::Matrix: return "matrix";
        case Kind::Box:
            return "box " + fmt(xlo_) + " " + fmt(xhi_) + " " + fmt(ylo_) + " " + fmt(yhi_) +
                   " " + fmt(v1_) + " " + fmt(v2_);
        case Kind::Threshold: {
            const char* rel = rel_ == Rel::Gt   ? "gt"
                              : rel_ == Rel::Ge ? "ge"
                              : rel_ == Rel::Lt ? "lt"
                                                : "le";
            return std::string("threshold ") + rel + " " + fmt(v1_) + " " + fmt(v2_);
        }
        case Kind::PairSets: {
            std::string s = "pair-sets";
            for (const ClosedInterval& c : first_) s += " " + fmt(c.lo) + " " + fmt(c.hi);
            s += " /";
            for (const ClosedInterval& c : second_) s += " " + fmt(c.lo) + " " + fmt(c.hi);
            return s;
        }
    }
    return "";
}

MappingPair::MappingPair(Space space, Map f, Map g)
    : space_(std::move(space)), f_(std::move(f)), g_(std::move(g)) {
    if (!space_.is_finite()) {
        throw std::invalid_argument("interval pairs need a declared g-inverse");
    }
}

MappingPair::MappingPair(Space space, Map f, Map g, Map g_inverse)
    : space_(std::move(space)),
      f_(std::move(f)),
      g_(std::move(g)),
      g_inverse_(std::move(g_inverse)) {}

const Map& MappingPair::g_inverse() const {
    if (!g_inverse_) throw std::logic_error("no g-inverse declared");
    return *g_inverse_;
}

std::optional<Point> MappingPair::g_preimage(const Point& y) const {
    if (space_.is_finite()) {
        std::size_t target = y.as_index();
        for (std::size_t i = 0; i < space_.size(); ++i) {
            if (g_.eval_index(i) == target) return Point::index(i);
        }
        return std::nullopt;
    }
    if (!g_inverse_) return std::nullopt;
    return g_inverse_->apply(y);
}

std::vector<std::pair<Point, Point>> sample_pairs(const Space& s, const SamplePlan& plan) {
    std::vector<std::pair<Point, Point>> out;
    if (s.is_finite()) {
        const std::size_t n = s.size();
        out.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out.emplace_back(Point::index(i), Point::index(j));
            }
        }
        return out;
    }
    if (!(plan.grid_step > 0.0) || !(plan.grid_hi >= plan.grid_lo)) {
        throw std::invalid_argument("sample grid must have positive step and ordered bounds");
    }
    std::vector<double> grid;
    for (double t = plan.grid_lo; t <= plan.grid_hi + plan.grid_step * 0.5;
         t += plan.grid_step) {
        grid.push_back(std::min(t, plan.grid_hi));
    }
    out.reserve(grid.size() * grid.size() + plan.random_pairs);
    for (double a : grid) {
        for (double b : grid) {
            out.emplace_back(Point::coord(a), Point::coord(b));
        }
    }
    std::mt19937_64 rng(plan.seed);
    for (std::size_t k = 0; k < plan.random_pairs; ++k) {
        double a = uniform_real(rng, plan.grid_lo, plan.grid_hi);
        double b = uniform_real(rng, plan.grid_lo, plan.grid_hi);
        out.emplace_back(Point::coord(a), Point::coord(b));
    }
    return out;
}

std::vector<Point> sample_points(const Space& s, const SamplePlan& plan) {
    std::vector<Point> out;
    if (s.is_finite()) {
        for (std::size_t i = 0; i < s.size(); ++i) out.push_back(Point::index(i));
        return out;
    }
    for (double t = plan.grid_lo; t <= plan.grid_hi + plan.grid_step * 0.5;
         t += plan.grid_step) {
        out.push_back(Point::coord(std::min(t, plan.grid_hi)));
    }
    std::mt19937_64 rng(plan.seed);
    for (std::size_t k = 0; k < plan.random_pairs; ++k) {
        out.push_back(Point::coord(uniform_real(rng, plan.grid_lo, plan.grid_hi)));
    }
    return out;
}

double contraction_majorant(const MappingPair& p, const Point& x, const Point& y) {
    const Space& s = p.space();
    Point gx = p.g(x), gy = p.g(y);
    Point fx = p.f(x), fy = p.f(y);
    double base = s.distance(gx, gy);
    double displacement = 0.5 * (s.distance(gx, fx) + s.distance(gy, fy));
    double cross = 0.5 * (s.distance(gx, fy) + s.distance(gy, fx));
    return std::max({base, displacement, cross});
}

CheckResult check_contractive(const MappingPair& p, const AlphaFunction& alpha,
                              const ComparisonFunction& psi,
                              const std::vector<std::pair<Point, Point>>& pairs, double slack) {
    const Space& s = p.space();
    double worst = 0.0;
    std::size_t worst_idx = 0;
    bool violated = false;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [x, y] = pairs[k];
        double lhs = alpha.eval(p.g(x), p.g(y)) * s.distance(p.f(x), p.f(y));
        double rhs = psi.eval(contraction_majorant(p, x, y)) + slack;
        double v = lhs - rhs;
        if (v > 0.0 && (!violated || v > worst)) {
            violated = true;
            worst = v;
            worst_idx = k;
        }
    }
    if (!violated) return CheckResult::pass();
    const auto& [x, y] = pairs[worst_idx];
    return CheckResult::fail("contractive inequality violated", pair_text(s, x, y), worst);
}

CheckResult check_alpha_admissible(const Map& f, const AlphaFunction& alpha,
                                   const std::vector<std::pair<Point, Point>>& pairs,
                                   const Space& s) {
    for (const auto& [x, y] : pairs) {
        if (alpha.eval(x, y) >= 1.0 && alpha.eval(f.apply(x), f.apply(y)) < 1.0) {
            return CheckResult::fail("alpha-admissibility violated", pair_text(s, x, y));
        }
    }
    return CheckResult::pass();
}

CheckResult check_alpha_admissible_wrt_g(const MappingPair& p, const AlphaFunction& alpha,
                                         const std::vector<std::pair<Point, Point>>& pairs) {
    for (const auto& [x, y] : pairs) {
        if (alpha.eval(p.g(x), p.g(y)) >= 1.0 && alpha.eval(p.f(x), p.f(y)) < 1.0) {
            return CheckResult::fail("alpha-admissibility w.r.t. g violated",
                                     pair_text(p.space(), x, y));
        }
    }
    return CheckResult::pass();
}

CheckResult check_range_inclusion(const MappingPair& p,
                                  const std::vector<Point>& interval_samples) {
    const Space& s = p.space();
    if (s.is_finite()) {
        for (std::size_t x = 0; x < s.size(); ++x) {
            std::size_t fx = p.f_map().eval_index(x);
            bool covered = false;
            for (std::size_t y = 0; y < s.size(); ++y) {
                if (p.g_map().eval_index(y) == fx) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                return CheckResult::fail("f value outside g range", s.label(x));
            }
        }
        return CheckResult::pass();
    }
    if (!p.has_g_inverse()) {
        return CheckResult::fail("no declared g-inverse to witness range inclusion");
    }
    for (const Point& x : interval_samples) {
        Point fx = p.f(x);
        Point back = p.g(p.g_inverse().apply(fx));
        double err = std::abs(back.as_coord() - fx.as_coord());
        if (!(err <= 1e-12)) {
            return CheckResult::fail("g(g_preimage(f(x))) differs from f(x)",
                                     s.describe_point(x), err);
        }
    }
    return CheckResult::pass();
}

bool check_initial_point(const MappingPair& p, const AlphaFunction& alpha, const Point& x0) {
    if (!p.space().contains(x0)) {
        throw point_outside_space("initial point outside space");
    }
    return alpha.eval(p.g(x0), p.f(x0)) >= 1.0;
}

}  // namespace coincide
