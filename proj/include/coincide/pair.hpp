#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coincide/check_result.hpp"
#include "coincide/maps.hpp"
#include "coincide/space.hpp"

namespace coincide {

/// The weight function alpha: X x X -> [0, inf) gating the contractive
/// inequality. Finite spaces use a matrix; interval spaces use declarative
/// predicate forms. Evaluation on interval forms is total over the reals so
/// that admissibility checks can probe map values outside the space.
class AlphaFunction {
public:
    enum class Rel : std::uint8_t { Gt, Ge, Lt, Le };

    static AlphaFunction constant(double v);
    static AlphaFunction matrix(std::size_t n, std::vector<double> values_row_major);
    /// inside when x in [xlo,xhi] and y in [ylo,yhi], else outside.
    static AlphaFunction box(double xlo, double xhi, double ylo, double yhi, double inside,
                             double outside);
    /// if_true when x <rel> y, else if_false.
    static AlphaFunction threshold(Rel rel, double if_true, double if_false);
    /// 1 when (x,y) lies in (first x second) or (second x first), else 0;
    /// each side is a union of closed intervals.
    static AlphaFunction pair_sets(std::vector<ClosedInterval> first,
                                   std::vector<ClosedInterval> second);

    double eval(const Point& x, const Point& y) const;
    double operator()(const Point& x, const Point& y) const { return eval(x, y); }

    std::string to_text() const;
    bool is_matrix() const { return kind_ == Kind::Matrix; }
    std::size_t matrix_size() const { return n_; }
    double matrix_entry(std::size_t i, std::size_t j) const { return values_.at(i * n_ + j); }

private:
    enum class Kind { Constant, Matrix, Box, Threshold, PairSets };
    AlphaFunction() = default;

    Kind kind_ = Kind::Constant;
    double v1_ = 0.0, v2_ = 0.0;
    double xlo_ = 0.0, xhi_ = 0.0, ylo_ = 0.0, yhi_ = 0.0;
    Rel rel_ = Rel::Gt;
    std::size_t n_ = 0;
    std::vector<double> values_;
    std::vector<ClosedInterval> first_, second_;
};

/// The mapping pair (f, g) on a space, with the rule that produces a
/// g-preimage. Finite spaces derive the least-index preimage from the g
/// table; interval spaces use a declared inverse from the map catalog.
class MappingPair {
public:
    /// Finite-space pair; preimages resolve to the least index in the fiber.
    MappingPair(Space space, Map f, Map g);
    /// Interval-space pair with a declared g-inverse.
    MappingPair(Space space, Map f, Map g, Map g_inverse);

    const Space& space() const { return space_; }
    const Map& f_map() const { return f_; }
    const Map& g_map() const { return g_; }
    bool has_g_inverse() const { return g_inverse_.has_value(); }
    const Map& g_inverse() const;

    Point f(const Point& p) const { return f_.apply(p); }
    Point g(const Point& p) const { return g_.apply(p); }

    /// Some x with g(x) = y, or nullopt when y has no preimage (finite) /
    /// no inverse was declared (interval). The interval result is not
    /// validated here; callers compare g(result) against y.
    std::optional<Point> g_preimage(const Point& y) const;

private:
    Space space_;
    Map f_;
    Map g_;
    std::optional<Map> g_inverse_;
};

/// Deterministic sample set over a space: all ordered pairs on finite
/// spaces; a grid plus seeded uniform random pairs inside a bounding box on
/// interval spaces.
struct SamplePlan {
    double grid_lo = 0.0;
    double grid_hi = 1.0;
    double grid_step = 0.01;
    std::size_t random_pairs = 10000;
    std::uint64_t seed = 0;
};

std::vector<std::pair<Point, Point>> sample_pairs(const Space& s, const SamplePlan& plan);
std::vector<Point> sample_points(const Space& s, const SamplePlan& plan);

/// M(gx, gy): the dominating term of the contractive inequality, the
/// maximum of the g-distance, the mean displacement, and the mean cross
/// displacement.
double contraction_majorant(const MappingPair& p, const Point& x, const Point& y);

class ComparisonFunction;

/// Verifies alpha(gx,gy) * d(fx,fy) <= psi(M(gx,gy)) + slack over the
/// sample pairs; failure reports the worst-violating pair (earliest index
/// on ties).
CheckResult check_contractive(const MappingPair& p, const AlphaFunction& alpha,
                              const ComparisonFunction& psi,
                              const std::vector<std::pair<Point, Point>>& pairs,
                              double slack = 1e-12);

/// Plain admissibility of a single map: alpha(x,y) >= 1 implies
/// alpha(fx,fy) >= 1 on the samples.
CheckResult check_alpha_admissible(const Map& f, const AlphaFunction& alpha,
                                   const std::vector<std::pair<Point, Point>>& pairs,
                                   const Space& s);

/// Admissibility through g: alpha(gx,gy) >= 1 implies alpha(fx,fy) >= 1.
CheckResult check_alpha_admissible_wrt_g(const MappingPair& p, const AlphaFunction& alpha,
                                         const std::vector<std::pair<Point, Point>>& pairs);

/// f(X) within g(X): exhaustive fiber scan on finite spaces; on interval
/// spaces each sampled x must satisfy g(g_preimage(f(x))) = f(x) within
/// 1e-12 using the declared inverse.
CheckResult check_range_inclusion(const MappingPair& p,
                                  const std::vector<Point>& interval_samples = {});

/// alpha(g x0, f x0) >= 1.
bool check_initial_point(const MappingPair& p, const AlphaFunction& alpha, const Point& x0);

}  // namespace coincide
