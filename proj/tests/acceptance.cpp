// Acceptance suite: exercises each acceptance scenario end to end and
// prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "coincide/adapters.hpp"
#include "coincide/comparison.hpp"
#include "coincide/errors.hpp"
#include "coincide/iterate.hpp"
#include "coincide/oracle.hpp"
#include "coincide/scenario.hpp"
#include "example_configs.hpp"

using namespace coincide;

namespace {

int failures = 0;

struct Criterion {
    Criterion(int id, const char* title) : id(id), title(title) {}

    int id;
    const char* title;
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    ~Criterion() {
        if (ok) {
            std::printf("PASS criterion %d: %s%s%s\n", id, title, detail.empty() ? "" : " — ",
                        detail.c_str());
        } else {
            std::printf("FAIL criterion %d: %s — %s\n", id, title, detail.c_str());
            ++failures;
        }
    }
};

double ulp_of(double x) {
    return std::nextafter(std::abs(x), std::numeric_limits<double>::infinity()) - std::abs(x);
}

std::string scenario_path(const std::string& name) {
    return std::string(COINCIDE_SCENARIO_DIR) + "/" + name;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ComparisonFunction harmonic_table(int knot_count) {
    std::vector<ComparisonFunction::Knot> knots;
    for (int k = knot_count; k >= 1; --k) knots.push_back({1.0 / k, 1.0 / (k + 1)});
    return ComparisonFunction::table(std::move(knots));
}

// Direct form of the certificate for linear psi: lambda^n d0 / (1-lambda).
bool linear_certificate_holds(const IterationTrace& trace, double lambda) {
    if (trace.f_values.size() < 2) return true;
    double d0 = trace.step_distances.front();
    for (std::size_t n = 0; n + 1 < trace.f_values.size(); ++n) {
        double bound = std::pow(lambda, n) * d0 / (1.0 - lambda) + 1e-9;
        for (std::size_t m = n + 1; m < trace.f_values.size(); ++m) {
            if (trace.space.distance(trace.f_values[n], trace.f_values[m]) > bound) {
                return false;
            }
        }
    }
    return true;
}

void criterion_1() {
    Criterion c{1, "half-line iteration converges to the common fixed point"};
    auto start = Clock::now();

    configs::HalfLinePair cfg;
    auto pair = cfg.pair();
    auto trace = jungck_iterate(pair, cfg.alpha(), cfg.psi(), Point::coord(1.0), 1e-9, 200);
    c.require(trace.outcome == IterationTrace::Outcome::CoincidenceFound, "did not converge");
    if (trace.found) {
        double z = trace.found->as_coord();
        c.require(std::abs(z) <= 1.5e-9, "|z| = " + std::to_string(z) + " > 1.5e-9");
        double gap = std::abs(pair.f(*trace.found).as_coord() - pair.g(*trace.found).as_coord());
        c.require(gap <= 1e-9, "f(z) and g(z) differ by " + std::to_string(gap));
    }
    c.require(trace.iterations <= 60,
              "took " + std::to_string(trace.iterations) + " iterations");

    auto result = run_scenario_file(scenario_path("half_line_iterate.scn"));
    c.require(result.exit_code == 0, "scenario exit code " + std::to_string(result.exit_code));
    c.require(result.report.find("common-fixed-point: yes") != std::string::npos,
              "report does not confirm the common fixed point");

    double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s");
    c.detail = std::to_string(trace.iterations) + " iterations, " +
               std::to_string(elapsed) + "s";
}

void criterion_2() {
    Criterion c{2, "half-line hypothesis suite passes on the sampled grid"};
    configs::HalfLinePair cfg;
    auto pair = cfg.pair();
    SamplePlan plan{0.0, 3.0, 0.01, 10000, 42};
    auto pairs = sample_pairs(cfg.space, plan);

    c.require(check_contractive(pair, cfg.alpha(), cfg.psi(), pairs, 1e-12).passed,
              "contractive check failed");
    c.require(check_alpha_admissible_wrt_g(pair, cfg.alpha(), pairs).passed,
              "admissibility w.r.t. g failed");
    c.require(check_range_inclusion(pair, sample_points(cfg.space, plan)).passed,
              "range inclusion failed");
    c.require(check_initial_point(pair, cfg.alpha(), Point::coord(1.0)),
              "x0 = 1 rejected");
}

void criterion_3() {
    Criterion c{3, "admissibility dichotomy for the reciprocal/exponential pair"};
    configs::ReciprocalExpPair cfg;

    std::vector<std::pair<Point, Point>> witness_pair = {
        {Point::coord(2.0), Point::coord(1.0)}};
    auto refuted = check_alpha_admissible(cfg.f, cfg.alpha(), witness_pair, cfg.space);
    c.require(!refuted.passed, "plain admissibility not refuted at (2,1)");
    c.require(refuted.witness == "(2, 1)", "witness was " + refuted.witness);

    SamplePlan plan{1.0, 100.0, 1.0, 10000, 42};
    auto pairs = sample_pairs(cfg.space, plan);
    c.require(!check_alpha_admissible(cfg.f, cfg.alpha(), pairs, cfg.space).passed,
              "plain admissibility passed on the sampled pairs");
    c.require(check_alpha_admissible_wrt_g(cfg.pair(), cfg.alpha(), pairs).passed,
              "admissibility w.r.t. g failed on the sampled pairs");
}

void criterion_4() {
    Criterion c{4, "Cauchy certificate holds on every produced trace"};

    configs::HalfLinePair half;
    auto half_trace =
        jungck_iterate(half.pair(), half.alpha(), half.psi(), Point::coord(1.0), 1e-9, 200);
    c.require(verify_cauchy_certificate(half_trace, half.psi()).passed,
              "half-line trace certificate failed");
    c.require(linear_certificate_holds(half_trace, 0.8),
              "half-line trace exceeds the closed-form bound");

    configs::BanachFinite banach;
    auto banach_trace =
        jungck_iterate(banach.pair(), banach.alpha(), banach.psi(), Point::index(0));
    c.require(verify_cauchy_certificate(banach_trace, banach.psi()).passed,
              "finite trace certificate failed");
    c.require(linear_certificate_holds(banach_trace, 0.6),
              "finite trace exceeds the closed-form bound");

    configs::CyclicQuarter cyc;
    auto cyc_alpha = alpha_from_cyclic(cyc.partition, cyc.g, cyc.space);
    auto cyc_trace = jungck_iterate(cyc.pair(), cyc_alpha, cyc.psi(), Point::coord(1.0));
    c.require(verify_cauchy_certificate(cyc_trace, cyc.psi()).passed,
              "cyclic trace certificate failed");
    c.require(linear_certificate_holds(cyc_trace, 0.25),
              "cyclic trace exceeds the closed-form bound");

    // Randomized hypothesis-passing finite configurations.
    std::size_t checked = 0;
    bool all_ok = true;
    falsification_search(
        11, 200, 6, [&](const FalsificationTrial& trial, const CoincidenceReport& report) {
            if (!report.coincidence_hypotheses_pass()) return;
            for (std::size_t i = 0; i < trial.pair.space().size(); ++i) {
                if (!check_initial_point(trial.pair, trial.alpha, Point::index(i))) continue;
                auto trace = jungck_iterate(trial.pair, trial.alpha, trial.psi,
                                            Point::index(i));
                all_ok = all_ok && verify_cauchy_certificate(trace, trial.psi).passed &&
                         linear_certificate_holds(trace, trial.psi.lambda());
                ++checked;
                break;
            }
        });
    c.require(all_ok, "a randomized trace violated its certificate");
    c.require(checked > 0, "no randomized hypothesis-passing trace found");
    c.detail = std::to_string(checked) + " randomized traces checked";
}

void criterion_5() {
    Criterion c{5, "falsification search confirms the finite-space theorems"};
    auto start = Clock::now();

    std::size_t contradictions = 0, passing = 0, with_uniqueness = 0;
    bool conclusions_ok = true;
    auto reports = falsification_search(
        42, 1000, 6, [&](const FalsificationTrial&, const CoincidenceReport& report) {
            if (report.verdict == CoincidenceReport::Verdict::Contradiction) {
                ++contradictions;
            }
            if (report.coincidence_hypotheses_pass()) {
                ++passing;
                conclusions_ok = conclusions_ok && !report.coincidence_points.empty();
                if (report.uniqueness_hypotheses_pass()) {
                    ++with_uniqueness;
                    conclusions_ok = conclusions_ok &&
                                     report.common_fixed_points.size() == 1 &&
                                     report.points_of_coincidence.size() == 1;
                }
            }
        });
    double elapsed = seconds_since(start);

    c.require(reports.size() == 1000, "expected 1000 reports");
    c.require(contradictions == 0,
              std::to_string(contradictions) + " contradiction verdicts");
    c.require(passing > 0, "no hypothesis-passing configuration sampled");
    c.require(conclusions_ok, "a hypothesis-passing configuration broke a conclusion");
    c.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s");
    c.detail = std::to_string(passing) + " passing, " + std::to_string(with_uniqueness) +
               " with uniqueness, " + std::to_string(elapsed) + "s";
}

void criterion_6() {
    Criterion c{6, "classical corollaries reduce with the documented slopes"};
    Space s = Space::interval(0.0, 3.0);
    MappingPair p(s, Map::scale(0.25), Map::identity(), Map::identity());
    SamplePlan plan{0.0, 3.0, 0.25, 10000, 42};
    auto pairs = sample_pairs(s, plan);

    struct Case {
        const char* name;
        CorollaryConfig config;
        double lambda_eff;
    };
    const Case cases[] = {
        {"banach", CorollaryConfig::banach(0.5), 0.5},
        {"kannan", CorollaryConfig::kannan(0.3), 0.6},
        {"chatterjea", CorollaryConfig::chatterjea(0.3), 0.6},
        {"ciric", CorollaryConfig::ciric(0.9), 0.9},
        {"hardy-rogers", CorollaryConfig::hardy_rogers(0.2, 0.1, 0.1), 0.6},
    };
    for (const Case& k : cases) {
        auto red = reduce_corollary(k.config, p);
        c.require(std::abs(red.psi().lambda() - k.lambda_eff) <= 1e-15,
                  std::string(k.name) + " effective slope mismatch");
        std::size_t direct_hits = 0;
        for (const auto& [x, y] : pairs) {
            double rhs = red.direct_rhs(p, x, y);
            double m = red.psi().eval(contraction_majorant(p, x, y));
            if (rhs > m + 1e-12) {
                c.require(false, std::string(k.name) + " direct bound not dominated");
                break;
            }
            double d = s.distance(p.f(x), p.f(y));
            if (d <= rhs + 1e-12) {
                ++direct_hits;
                if (red.alpha().eval(p.g(x), p.g(y)) * d > m + 1e-12) {
                    c.require(false, std::string(k.name) + " implication broken");
                    break;
                }
            }
        }
        c.require(direct_hits > 0, std::string(k.name) + " had no direct-passing pair");
    }
}

void criterion_7() {
    Criterion c{7, "cyclic cover contracts into the intersection"};
    configs::CyclicQuarter cfg;
    auto checks = check_cyclic_conditions(cfg.pair(), cfg.partition);
    c.require(all_passed(checks), "a cyclic structural condition failed");

    auto alpha = alpha_from_cyclic(cfg.partition, cfg.g, cfg.space);
    auto trace = jungck_iterate(cfg.pair(), alpha, cfg.psi(), Point::coord(1.0), 1e-9, 100);
    c.require(trace.outcome == IterationTrace::Outcome::CoincidenceFound, "did not converge");
    if (trace.found) {
        c.require(std::abs(trace.found->as_coord()) <= 1e-9, "|z| > 1e-9");
    }
    c.require(cfg.partition.in_a1(Point::coord(0.0)) && cfg.partition.in_a2(Point::coord(0.0)),
              "0 is not in the intersection of the cover");
}

void criterion_8() {
    Criterion c{8, "diamond order adapter confirms the theorem suite"};
    configs::DiamondOrder cfg;
    auto alpha = alpha_from_order(cfg.order);
    auto report = run_theorem_suite(cfg.pair(), alpha, cfg.psi());
    c.require(report.verdict == CoincidenceReport::Verdict::TheoremConfirmed,
              "verdict was not theorem-confirmed");
    c.require(report.common_fixed_points.size() == 1, "expected one common fixed point");
}

void criterion_9() {
    Criterion c{9, "comparison-function suite"};
    auto linear = ComparisonFunction::linear(0.8);
    double bound = linear.tail_bound(0, 1.0);
    c.require(std::abs(bound - 5.0) <= 4.0 * ulp_of(5.0),
              "tail bound " + std::to_string(bound) + " not 5.0");

    auto identity = ComparisonFunction::table({{1.0, 1.0}});
    std::vector<double> samples = {1.0};
    auto id_result = identity.check_membership(samples);
    c.require(!id_result.passed && id_result.reason == "psi(t) < t violated",
              "identity table not rejected");

    auto harmonic = harmonic_table(2001);
    auto h_result = harmonic.check_membership(samples);
    c.require(!h_result.passed && h_result.reason == "NonSummable",
              "harmonic table not rejected as NonSummable");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("all 9 criteria passed\n");
    } else {
        std::printf("%d criteria failed\n", failures);
    }
    return failures;
}
