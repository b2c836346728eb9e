#include "coincide/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "chain_graph.hpp"
#include "coincide/errors.hpp"
#include "coincide/rng.hpp"

namespace coincide {

namespace {

void require_finite(const MappingPair& p, const char* op) {
    if (!p.space().is_finite()) {
        throw not_finite(std::string(op) + " requires a finite space");
    }
}

std::vector<std::size_t> coincidence_indices(const MappingPair& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.space().size(); ++i) {
        if (p.f_map().eval_index(i) == p.g_map().eval_index(i)) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> g_range(const MappingPair& p) {
    std::vector<std::size_t> table(p.space().size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = p.g_map().eval_index(i);
    return detail::table_range(table);
}

}  // namespace

const CheckResult* CoincidenceReport::find(const std::string& name) const {
    for (const auto& [key, result] : hypothesis_results) {
        if (key == name) return &result;
    }
    return nullptr;
}

namespace {
const char* kCoincidenceHypotheses[] = {"contractive", "alpha-admissible-wrt-g",
                                        "range-inclusion", "initial-point",
                                        "chain-limit-compatibility"};
const char* kUniquenessHypotheses[] = {"uniqueness-hypothesis", "commuting-at-coincidence"};
}  // namespace

bool CoincidenceReport::coincidence_hypotheses_pass() const {
    for (const char* name : kCoincidenceHypotheses) {
        const CheckResult* r = find(name);
        if (!r || !r->passed) return false;
    }
    return true;
}

bool CoincidenceReport::uniqueness_hypotheses_pass() const {
    if (!coincidence_hypotheses_pass()) return false;
    for (const char* name : kUniquenessHypotheses) {
        const CheckResult* r = find(name);
        if (!r || !r->passed) return false;
    }
    return true;
}

CoincidenceReport enumerate_coincidence(const MappingPair& p) {
    require_finite(p, "enumerate_coincidence");
    CoincidenceReport report;
    for (std::size_t i : coincidence_indices(p)) {
        report.coincidence_points.push_back(Point::index(i));
        Point w = Point::index(p.g_map().eval_index(i));
        if (std::find(report.points_of_coincidence.begin(), report.points_of_coincidence.end(),
                      w) == report.points_of_coincidence.end()) {
            report.points_of_coincidence.push_back(w);
        }
        if (p.g_map().eval_index(i) == i && p.f_map().eval_index(i) == i) {
            report.common_fixed_points.push_back(Point::index(i));
        }
    }
    return report;
}

CheckResult check_uniqueness_hypothesis(const MappingPair& p, const AlphaFunction& alpha) {
    require_finite(p, "check_uniqueness_hypothesis");
    const Space& s = p.space();
    auto coin = coincidence_indices(p);
    for (std::size_t u : coin) {
        for (std::size_t v : coin) {
            Point gu = Point::index(p.g_map().eval_index(u));
            Point gv = Point::index(p.g_map().eval_index(v));
            bool found = false;
            for (std::size_t w = 0; w < s.size(); ++w) {
                Point gw = Point::index(p.g_map().eval_index(w));
                if (alpha.eval(gu, gw) >= 1.0 && alpha.eval(gv, gw) >= 1.0) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                return CheckResult::fail("no hub point for coincidence pair",
                                         "(" + s.label(u) + ", " + s.label(v) + ")");
            }
        }
    }
    return CheckResult::pass();
}

CheckResult check_commuting_at_coincidence(const MappingPair& p) {
    require_finite(p, "check_commuting_at_coincidence");
    for (std::size_t z : coincidence_indices(p)) {
        std::size_t fg = p.f_map().eval_index(p.g_map().eval_index(z));
        std::size_t gf = p.g_map().eval_index(p.f_map().eval_index(z));
        if (fg != gf) {
            return CheckResult::fail("f and g do not commute at coincidence point",
                                     p.space().label(z));
        }
    }
    return CheckResult::pass();
}

CheckResult check_chain_limit_compatibility(const MappingPair& p, const AlphaFunction& alpha) {
    require_finite(p, "check_chain_limit_compatibility");
    auto relate = [&](std::size_t a, std::size_t b) {
        return alpha.eval(Point::index(a), Point::index(b)) >= 1.0;
    };
    return detail::chain_limit_check(g_range(p), relate, relate, p.space());
}

CoincidenceReport run_theorem_suite(const MappingPair& p, const AlphaFunction& alpha,
                                    const ComparisonFunction& psi) {
    require_finite(p, "run_theorem_suite");
    const Space& s = p.space();

    CoincidenceReport report = enumerate_coincidence(p);
    auto pairs = sample_pairs(s, {});

    report.hypothesis_results.emplace_back("contractive",
                                           check_contractive(p, alpha, psi, pairs));
    report.hypothesis_results.emplace_back("alpha-admissible-wrt-g",
                                           check_alpha_admissible_wrt_g(p, alpha, pairs));
    report.hypothesis_results.emplace_back("range-inclusion", check_range_inclusion(p));

    CheckResult initial = CheckResult::fail("no point with alpha(g x0, f x0) >= 1");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (check_initial_point(p, alpha, Point::index(i))) {
            initial = CheckResult::pass();
            initial.witness = s.label(i);
            break;
        }
    }
    report.hypothesis_results.emplace_back("initial-point", initial);
    report.hypothesis_results.emplace_back("chain-limit-compatibility",
                                           check_chain_limit_compatibility(p, alpha));
    report.hypothesis_results.emplace_back("uniqueness-hypothesis",
                                           check_uniqueness_hypothesis(p, alpha));
    report.hypothesis_results.emplace_back("commuting-at-coincidence",
                                           check_commuting_at_coincidence(p));

    for (const auto& [name, result] : report.hypothesis_results) {
        if (!result.passed) report.failed_hypotheses.push_back(name);
    }

    bool contradiction = false;
    if (report.coincidence_hypotheses_pass()) {
        if (report.coincidence_points.empty()) contradiction = true;
        if (report.uniqueness_hypotheses_pass()) {
            if (report.common_fixed_points.size() != 1) contradiction = true;
            if (report.points_of_coincidence.size() > 1) contradiction = true;
        }
        report.verdict = contradiction ? CoincidenceReport::Verdict::Contradiction
                                       : CoincidenceReport::Verdict::TheoremConfirmed;
    } else {
        report.verdict = CoincidenceReport::Verdict::HypothesesFailed;
    }
    return report;
}

std::vector<CoincidenceReport> falsification_search(
    std::uint64_t seed, std::size_t trials, std::size_t space_size_max,
    const std::function<void(const FalsificationTrial&, const CoincidenceReport&)>& observer) {
    if (space_size_max == 0 || space_size_max > 8) {
        throw std::invalid_argument("space_size_max must lie in [1, 8]");
    }
    static constexpr double kAlphaLevels[] = {0.0, 0.5, 1.0, 2.0};

    std::mt19937_64 rng(seed);
    std::vector<CoincidenceReport> reports;
    reports.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        std::size_t n = 1 + uniform_index(rng, space_size_max);
        Space space = random_finite_space(rng, n);

        std::vector<std::size_t> f_table(n), g_table(n);
        for (std::size_t i = 0; i < n; ++i) f_table[i] = uniform_index(rng, n);
        for (std::size_t i = 0; i < n; ++i) g_table[i] = uniform_index(rng, n);

        std::vector<double> alpha_values(n * n);
        for (double& v : alpha_values) v = kAlphaLevels[uniform_index(rng, 4)];

        double lambda = uniform_real(rng, 0.05, 0.95);

        FalsificationTrial trial{
            MappingPair(space, Map::table(std::move(f_table)), Map::table(std::move(g_table))),
            AlphaFunction::matrix(n, std::move(alpha_values)),
            ComparisonFunction::linear(lambda)};

        CoincidenceReport report = run_theorem_suite(trial.pair, trial.alpha, trial.psi);
        if (observer) observer(trial, report);
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace coincide
