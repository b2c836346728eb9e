#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coincide/comparison.hpp"
#include "coincide/pair.hpp"
#include "coincide/space.hpp"

namespace coincide {

using NamedChecks = std::vector<std::pair<std::string, CheckResult>>;

bool all_passed(const NamedChecks& checks);

/// The comparability indicator of a partial order: alpha(x, y) = 1 when
/// x and y are comparable in either direction, 0 otherwise. Matrix orders
/// produce a matrix alpha; the standard order on the line, where any two
/// points are comparable, produces the constant 1.
AlphaFunction alpha_from_order(const PartialOrder& order);

/// g(x) <= g(y) must imply f(x) <= f(y) over the sample pairs.
CheckResult check_g_nondecreasing(const MappingPair& p, const PartialOrder& order,
                                  const std::vector<std::pair<Point, Point>>& pairs);

/// Finite reformulation of order regularity along g: in the directed graph
/// on g-range with an edge (a, b) when a <= b, every simple cycle must
/// contain a node below each self-looped node reachable from it. Throws
/// not_finite on interval spaces, where regularity is a declared
/// assumption.
CheckResult check_g_regular(const MappingPair& p, const PartialOrder& order);

/// The cyclic-cover indicator: alpha(x, y) = 1 when (x, y) lies in
/// (g(A1) x g(A2)) union (g(A2) x g(A1)), else 0. Finite partitions
/// produce a matrix over the whole space; interval partitions use the
/// analytic g-image hulls.
AlphaFunction alpha_from_cyclic(const CyclicPartition& partition, const Map& g,
                                const Space& space);

/// The structural conditions of the cyclic construction, one result per
/// condition: g(A1) and g(A2) closed, f(A1) within g(A2), f(A2) within
/// g(A1), and g one-to-one on A1 union A2. Exhaustive on finite spaces,
/// analytic via the catalog on intervals.
NamedChecks check_cyclic_conditions(const MappingPair& p, const CyclicPartition& partition);

/// A classical contraction family instance, carrying its coefficients and
/// their admissible ranges.
class CorollaryConfig {
public:
    enum class Kind {
        Banach,
        Kannan,
        Chatterjea,
        Ciric,
        HardyRogers,
        Berinde,
        OrderedGeneralized,
        Cyclic,
    };

    static CorollaryConfig banach(double lambda);
    static CorollaryConfig kannan(double lambda);
    static CorollaryConfig chatterjea(double lambda);
    static CorollaryConfig ciric(double lambda);
    static CorollaryConfig hardy_rogers(double a, double b, double c);
    static CorollaryConfig berinde(ComparisonFunction psi);
    static CorollaryConfig ordered(PartialOrder order, ComparisonFunction psi);
    static CorollaryConfig cyclic(CyclicPartition partition, ComparisonFunction psi);

    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    double coef_a() const { return a_; }
    double coef_b() const { return b_; }
    double coef_c() const { return c_; }
    const std::optional<ComparisonFunction>& psi() const { return psi_; }
    const std::optional<PartialOrder>& order() const { return order_; }
    const std::optional<CyclicPartition>& partition() const { return partition_; }

private:
    CorollaryConfig() = default;
    Kind kind_ = Kind::Banach;
    double lambda_ = 0.0;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    std::optional<ComparisonFunction> psi_;
    std::optional<PartialOrder> order_;
    std::optional<CyclicPartition> partition_;
};

/// The generalized-form equivalent of a corollary configuration: the alpha
/// it induces, the effective comparison function, and the original
/// inequality's right-hand side for side-by-side checking on the same
/// samples.
class CorollaryReduction {
public:
    CorollaryReduction(CorollaryConfig config, AlphaFunction alpha, ComparisonFunction psi);

    const AlphaFunction& alpha() const { return alpha_; }
    const ComparisonFunction& psi() const { return psi_; }
    const CorollaryConfig& config() const { return config_; }

    /// Right-hand side of the corollary's own inequality at (x, y);
    /// +infinity for pairs the corollary leaves unconstrained (incomparable
    /// pairs of the ordered form, pairs outside the cyclic cover).
    double direct_rhs(const MappingPair& p, const Point& x, const Point& y) const;

    /// d(fx, fy) <= direct_rhs + slack over the samples.
    CheckResult check_direct(const MappingPair& p,
                             const std::vector<std::pair<Point, Point>>& pairs,
                             double slack = 1e-12) const;

private:
    CorollaryConfig config_;
    AlphaFunction alpha_;
    ComparisonFunction psi_;
};

/// Builds the reduction. Throws coefficient_out_of_range when the config's
/// coefficient constraints fail. The mapping pair supplies g for the cyclic
/// construction; classical kinds ignore it.
CorollaryReduction reduce_corollary(const CorollaryConfig& config, const MappingPair& p);

}  // namespace coincide
