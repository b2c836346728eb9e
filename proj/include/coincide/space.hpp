#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "coincide/check_result.hpp"

namespace coincide {

/// A point of a Space: an index into a finite space's point set, or a
/// coordinate on an interval space.
class Point {
public:
    static Point index(std::size_t i) { return Point(i); }
    static Point coord(double x) { return Point(x); }

    bool is_index() const { return rep_.index() == 0; }
    std::size_t as_index() const;
    double as_coord() const;

    friend bool operator==(const Point&, const Point&) = default;

private:
    explicit Point(std::size_t i) : rep_(i) {}
    explicit Point(double x) : rep_(x) {}
    std::variant<std::size_t, double> rep_;
};

/// A closed interval of the real line; endpoints may be +-infinity.
struct ClosedInterval {
    double lo;
    double hi;

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool bounded() const;
    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// True when every interval in `pieces` is covered by the union of `cover`.
bool covered_by(const std::vector<ClosedInterval>& pieces,
                std::vector<ClosedInterval> cover);

/// A metric space: either a finite point set with an explicit distance
/// matrix, or a closed real interval (possibly unbounded) under |x - y|.
///
/// Immutable after construction; safe for concurrent reads.
class Space {
public:
    /// Default is the degenerate interval [0, 0]; placeholder only, it
    /// fails validate().
    Space() = default;

    static Space finite(std::vector<std::string> labels, std::vector<double> dist_row_major);
    static Space interval(double lo, double hi);

    bool is_finite() const { return finite_; }

    // Finite accessors.
    std::size_t size() const;
    const std::string& label(std::size_t i) const;
    double dist_entry(std::size_t i, std::size_t j) const;

    // Interval accessors.
    ClosedInterval bounds() const;

    bool contains(const Point& p) const;

    /// Metric evaluation; throws point_outside_space.
    double distance(const Point& x, const Point& y) const;

    /// Finite: symmetry, zero diagonal, d(i,j)=0 iff i=j and the triangle
    /// inequality over all triples. Interval: ordered bounds. Returns the
    /// first violation found.
    CheckResult validate() const;

    std::string describe_point(const Point& p) const;

private:
    bool finite_ = false;
    std::vector<std::string> labels_;
    std::vector<double> dist_;  // row-major size() x size()
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Random finite metric space: n points sampled in the unit square with
/// Euclidean distances, so the triangle inequality holds by construction.
/// Resamples on (vanishingly rare) duplicate points.
Space random_finite_space(std::mt19937_64& rng, std::size_t n);

/// A binary relation intended as a partial order: a boolean matrix on a
/// finite space, or the standard <= on an interval space. Validity
/// (reflexive, antisymmetric, transitive) is checkable, not assumed, so
/// invalid relations can be represented and refuted.
class PartialOrder {
public:
    static PartialOrder matrix(std::size_t n, std::vector<std::uint8_t> rel_row_major);
    static PartialOrder standard_leq();

    bool is_matrix() const { return matrix_; }
    std::size_t size() const { return n_; }

    bool leq(const Point& x, const Point& y) const;

    /// Exhaustive on matrix relations; standard <= passes structurally.
    CheckResult validate() const;

private:
    PartialOrder() = default;
    bool matrix_ = false;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> rel_;
};

/// Two nonempty closed subsets forming a cyclic cover: index sets on a
/// finite space, or closed bounded sub-intervals of an interval space.
class CyclicPartition {
public:
    static CyclicPartition finite_sets(std::vector<std::size_t> a1, std::vector<std::size_t> a2);
    static CyclicPartition intervals(ClosedInterval a1, ClosedInterval a2);

    bool is_finite() const { return finite_; }
    const std::vector<std::size_t>& indices_a1() const { return idx_a1_; }
    const std::vector<std::size_t>& indices_a2() const { return idx_a2_; }
    ClosedInterval interval_a1() const { return int_a1_; }
    ClosedInterval interval_a2() const { return int_a2_; }

    bool in_a1(const Point& p) const;
    bool in_a2(const Point& p) const;

    /// Both subsets nonempty and inside the space; interval subsets must be
    /// closed and bounded.
    CheckResult validate(const Space& s) const;

private:
    CyclicPartition() = default;
    bool finite_ = false;
    std::vector<std::size_t> idx_a1_, idx_a2_;
    ClosedInterval int_a1_{0, 0}, int_a2_{0, 0};
};

}  // namespace coincide
