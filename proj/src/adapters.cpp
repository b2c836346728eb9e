#include "coincide/adapters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chain_graph.hpp"
#include "coincide/errors.hpp"

namespace coincide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> image_of(const Map& g, const std::vector<std::size_t>& set) {
    std::vector<std::size_t> out;
    for (std::size_t i : set) {
        std::size_t v = g.eval_index(i);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

}  // namespace

bool all_passed(const NamedChecks& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& kv) { return kv.second.passed; });
}

AlphaFunction alpha_from_order(const PartialOrder& order) {
    if (!order.is_matrix()) {
        // Any two reals are comparable under the standard order.
        return AlphaFunction::constant(1.0);
    }
    const std::size_t n = order.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool comparable = order.leq(Point::index(i), Point::index(j)) ||
                              order.leq(Point::index(j), Point::index(i));
            values[i * n + j] = comparable ? 1.0 : 0.0;
        }
    }
    return AlphaFunction::matrix(n, std::move(values));
}

CheckResult check_g_nondecreasing(const MappingPair& p, const PartialOrder& order,
                                  const std::vector<std::pair<Point, Point>>& pairs) {
    const Space& s = p.space();
    for (const auto& [x, y] : pairs) {
        if (order.leq(p.g(x), p.g(y)) && !order.leq(p.f(x), p.f(y))) {
            return CheckResult::fail("g-nondecreasing violated",
                                     "(" + s.describe_point(x) + ", " + s.describe_point(y) +
                                         ")");
        }
    }
    return CheckResult::pass();
}

CheckResult check_g_regular(const MappingPair& p, const PartialOrder& order) {
    if (!p.space().is_finite()) {
        throw not_finite("check_g_regular requires a finite space; on intervals regularity "
                         "is a declared assumption");
    }
    std::vector<std::size_t> table(p.space().size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = p.g_map().eval_index(i);
    auto leq = [&](std::size_t a, std::size_t b) {
        return order.leq(Point::index(a), Point::index(b));
    };
    return detail::chain_limit_check(detail::table_range(table), leq, leq, p.space());
}

AlphaFunction alpha_from_cyclic(const CyclicPartition& partition, const Map& g,
                                const Space& space) {
    if (partition.is_finite()) {
        std::vector<std::size_t> g_a1 = image_of(g, partition.indices_a1());
        std::vector<std::size_t> g_a2 = image_of(g, partition.indices_a2());
        const std::size_t n = space.size();
        std::vector<double> values(n * n, 0.0);
        auto contains = [](const std::vector<std::size_t>& set, std::size_t v) {
            return std::find(set.begin(), set.end(), v) != set.end();
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                bool hit = (contains(g_a1, i) && contains(g_a2, j)) ||
                           (contains(g_a2, i) && contains(g_a1, j));
                values[i * n + j] = hit ? 1.0 : 0.0;
            }
        }
        return AlphaFunction::matrix(n, std::move(values));
    }
    return AlphaFunction::pair_sets(g.image_hull(partition.interval_a1()),
                                    g.image_hull(partition.interval_a2()));
}

NamedChecks check_cyclic_conditions(const MappingPair& p, const CyclicPartition& partition) {
    NamedChecks results;
    const Space& s = p.space();

    if (s.is_finite()) {
        results.emplace_back("g-images-closed", CheckResult::pass());

        auto f_a1 = image_of(p.f_map(), partition.indices_a1());
        auto f_a2 = image_of(p.f_map(), partition.indices_a2());
        auto g_a1 = image_of(p.g_map(), partition.indices_a1());
        auto g_a2 = image_of(p.g_map(), partition.indices_a2());
        auto subset = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                          const char* name) {
            for (std::size_t v : a) {
                if (std::find(b.begin(), b.end(), v) == b.end()) {
                    return CheckResult::fail(std::string(name) + " violated, image point " +
                                             s.label(v) + " uncovered");
                }
            }
            return CheckResult::pass();
        };
        results.emplace_back("f(A1)-within-g(A2)", subset(f_a1, g_a2, "f(A1) within g(A2)"));
        results.emplace_back("f(A2)-within-g(A1)", subset(f_a2, g_a1, "f(A2) within g(A1)"));

        CheckResult injective = CheckResult::pass();
        std::vector<std::size_t> domain = partition.indices_a1();
        for (std::size_t i : partition.indices_a2()) {
            if (std::find(domain.begin(), domain.end(), i) == domain.end()) domain.push_back(i);
        }
        for (std::size_t a = 0; a < domain.size() && injective.passed; ++a) {
            for (std::size_t b = a + 1; b < domain.size(); ++b) {
                if (p.g_map().eval_index(domain[a]) == p.g_map().eval_index(domain[b])) {
                    injective = CheckResult::fail(
                        "g not one-to-one",
                        "(" + s.label(domain[a]) + ", " + s.label(domain[b]) + ")");
                    break;
                }
            }
        }
        results.emplace_back("g-injective", injective);
        return results;
    }

    ClosedInterval a1 = partition.interval_a1();
    ClosedInterval a2 = partition.interval_a2();

    auto closed_check = [&](const ClosedInterval& dom) {
        auto closed = p.g_map().range_closed_on(dom);
        if (!closed.has_value()) {
            CheckResult r = CheckResult::pass();
            r.witness = "assumed (not analytically decidable)";
            return r;
        }
        return *closed ? CheckResult::pass() : CheckResult::fail("g image not closed");
    };
    CheckResult closed1 = closed_check(a1);
    CheckResult closed2 = closed_check(a2);
    CheckResult closed = closed1.passed ? closed2 : closed1;
    if (closed.passed && (!closed1.witness.empty() || !closed2.witness.empty())) {
        closed.witness = "assumed (not analytically decidable)";
    }
    results.emplace_back("g-images-closed", closed);

    auto inclusion = [&](const ClosedInterval& from, const ClosedInterval& into) {
        auto f_img = p.f_map().image_hull(from);
        auto g_img = p.g_map().image_hull(into);
        if (covered_by(f_img, g_img)) return CheckResult::pass();
        return CheckResult::fail("image not covered");
    };
    results.emplace_back("f(A1)-within-g(A2)", inclusion(a1, a2));
    results.emplace_back("f(A2)-within-g(A1)", inclusion(a2, a1));

    ClosedInterval hull{std::min(a1.lo, a2.lo), std::max(a1.hi, a2.hi)};
    auto injective = p.g_map().injective_on(hull);
    if (!injective.has_value()) {
        results.emplace_back("g-injective",
                             CheckResult::fail("injectivity not analytically decidable"));
    } else {
        results.emplace_back("g-injective", *injective
                                                ? CheckResult::pass()
                                                : CheckResult::fail("g not one-to-one"));
    }
    return results;
}

CorollaryConfig CorollaryConfig::banach(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw coefficient_out_of_range("Banach contraction requires lambda in (0, 1)");
    }
    CorollaryConfig c;
    c.kind_ = Kind::Banach;
    c.lambda_ = lambda;
    return c;
}

CorollaryConfig CorollaryConfig::kannan(double lambda) {
    if (!(lambda > 0.0 && lambda < 0.5)) {
        throw coefficient_out_of_range("Kannan contraction requires lambda in (0, 1/2)");
    }
    CorollaryConfig c;
    c.kind_ = Kind::Kannan;
    c.lambda_ = lambda;
    return c;
}

CorollaryConfig CorollaryConfig::chatterjea(double lambda) {
    if (!(lambda > 0.0 && lambda < 0.5)) {
        throw coefficient_out_of_range("Chatterjea contraction requires lambda in (0, 1/2)");
    }
    CorollaryConfig c;
    c.kind_ = Kind::Chatterjea;
    c.lambda_ = lambda;
    return c;
}

CorollaryConfig CorollaryConfig::ciric(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw coefficient_out_of_range("Ciric contraction requires lambda in (0, 1)");
    }
    CorollaryConfig c;
    c.kind_ = Kind::Ciric;
    c.lambda_ = lambda;
    return c;
}

CorollaryConfig CorollaryConfig::hardy_rogers(double a, double b, double c) {
    double total = a + 2.0 * b + 2.0 * c;
    if (a < 0.0 || b < 0.0 || c < 0.0 || !(total > 0.0 && total < 1.0)) {
        throw coefficient_out_of_range(
            "Hardy-Rogers contraction requires A, B, C >= 0 with A + 2B + 2C in (0, 1)");
    }
    CorollaryConfig cfg;
    cfg.kind_ = Kind::HardyRogers;
    cfg.a_ = a;
    cfg.b_ = b;
    cfg.c_ = c;
    return cfg;
}

CorollaryConfig CorollaryConfig::berinde(ComparisonFunction psi) {
    CorollaryConfig c;
    c.kind_ = Kind::Berinde;
    c.psi_ = std::move(psi);
    return c;
}

CorollaryConfig CorollaryConfig::ordered(PartialOrder order, ComparisonFunction psi) {
    CorollaryConfig c;
    c.kind_ = Kind::OrderedGeneralized;
    c.order_ = std::move(order);
    c.psi_ = std::move(psi);
    return c;
}

CorollaryConfig CorollaryConfig::cyclic(CyclicPartition partition, ComparisonFunction psi) {
    CorollaryConfig c;
    c.kind_ = Kind::Cyclic;
    c.partition_ = std::move(partition);
    c.psi_ = std::move(psi);
    return c;
}

CorollaryReduction::CorollaryReduction(CorollaryConfig config, AlphaFunction alpha,
                                       ComparisonFunction psi)
    : config_(std::move(config)), alpha_(std::move(alpha)), psi_(std::move(psi)) {}

double CorollaryReduction::direct_rhs(const MappingPair& p, const Point& x,
                                      const Point& y) const {
    const Space& s = p.space();
    Point gx = p.g(x), gy = p.g(y);
    Point fx = p.f(x), fy = p.f(y);
    switch (config_.kind()) {
        case CorollaryConfig::Kind::Banach:
            return config_.lambda() * s.distance(gx, gy);
        case CorollaryConfig::Kind::Kannan:
            return config_.lambda() * (s.distance(gx, fx) + s.distance(gy, fy));
        case CorollaryConfig::Kind::Chatterjea:
            return config_.lambda() * (s.distance(gx, fy) + s.distance(gy, fx));
        case CorollaryConfig::Kind::Ciric:
            return config_.lambda() * contraction_majorant(p, x, y);
        case CorollaryConfig::Kind::HardyRogers:
            return config_.coef_a() * s.distance(gx, gy) +
                   config_.coef_b() * (s.distance(gx, fx) + s.distance(gy, fy)) +
                   config_.coef_c() * (s.distance(gx, fy) + s.distance(gy, fx));
        case CorollaryConfig::Kind::Berinde:
            return config_.psi()->eval(s.distance(gx, gy));
        case CorollaryConfig::Kind::OrderedGeneralized: {
            if (!config_.order()->leq(gx, gy)) {
                return std::numeric_limits<double>::infinity();
            }
            return config_.psi()->eval(contraction_majorant(p, x, y));
        }
        case CorollaryConfig::Kind::Cyclic: {
            const CyclicPartition& part = *config_.partition();
            bool constrained = (part.in_a1(x) && part.in_a2(y)) ||
                               (part.in_a2(x) && part.in_a1(y));
            if (!constrained) return std::numeric_limits<double>::infinity();
            return config_.psi()->eval(contraction_majorant(p, x, y));
        }
    }
    return kInf;
}

CheckResult CorollaryReduction::check_direct(const MappingPair& p,
                                             const std::vector<std::pair<Point, Point>>& pairs,
                                             double slack) const {
    const Space& s = p.space();
    double worst = 0.0;
    std::size_t worst_idx = 0;
    bool violated = false;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [x, y] = pairs[k];
        double rhs = direct_rhs(p, x, y);
        if (rhs == kInf) continue;
        double v = s.distance(p.f(x), p.f(y)) - (rhs + slack);
        if (v > 0.0 && (!violated || v > worst)) {
            violated = true;
            worst = v;
            worst_idx = k;
        }
    }
    if (!violated) return CheckResult::pass();
    const auto& [x, y] = pairs[worst_idx];
    return CheckResult::fail("direct inequality violated",
                             "(" + s.describe_point(x) + ", " + s.describe_point(y) + ")",
                             worst);
}

CorollaryReduction reduce_corollary(const CorollaryConfig& config, const MappingPair& p) {
    switch (config.kind()) {
        case CorollaryConfig::Kind::Banach:
        case CorollaryConfig::Kind::Ciric:
            return CorollaryReduction(config, AlphaFunction::constant(1.0),
                                      ComparisonFunction::linear(config.lambda()));
        case CorollaryConfig::Kind::Kannan:
        case CorollaryConfig::Kind::Chatterjea:
            // The two-sided displacement sums are at most 2 * M.
            return CorollaryReduction(config, AlphaFunction::constant(1.0),
                                      ComparisonFunction::linear(2.0 * config.lambda()));
        case CorollaryConfig::Kind::HardyRogers:
            return CorollaryReduction(
                config, AlphaFunction::constant(1.0),
                ComparisonFunction::linear(config.coef_a() + 2.0 * config.coef_b() +
                                           2.0 * config.coef_c()));
        case CorollaryConfig::Kind::Berinde:
            return CorollaryReduction(config, AlphaFunction::constant(1.0), *config.psi());
        case CorollaryConfig::Kind::OrderedGeneralized:
            return CorollaryReduction(config, alpha_from_order(*config.order()),
                                      *config.psi());
        case CorollaryConfig::Kind::Cyclic:
            return CorollaryReduction(
                config, alpha_from_cyclic(*config.partition(), p.g_map(), p.space()),
                *config.psi());
    }
    throw std::logic_error("unreachable corollary kind");
}

}  // namespace coincide
