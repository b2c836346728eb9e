#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "coincide/errors.hpp"
#include "coincide/scenario.hpp"

using namespace coincide;

namespace {

std::string scenario_path(const std::string& name) {
    return std::string(COINCIDE_SCENARIO_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Writes text to a temporary scenario file, runs it, cleans up.
ScenarioResult run_text(const std::string& text, const std::string& tag) {
    std::string path = "tmp_" + tag + ".scn";
    {
        std::ofstream out(path);
        out << text;
    }
    auto result = run_scenario_file(path);
    std::remove(path.c_str());
    return result;
}

const std::vector<std::string> kCorpus = {
    "half_line_iterate.scn",      "half_line_check.scn",
    "admissibility_reciprocal_exp.scn", "admissibility_exp_square.scn",
    "admissibility_log_sqrt.scn", "banach_finite.scn",
    "banach_finite_iterate.scn",     "diamond_order.scn",
    "cyclic_quarter_check.scn",      "cyclic_quarter_iterate.scn",
    "corollary_hardy_rogers.scn",    "corollary_kannan.scn",
    "falsify_small.scn",
};

}  // namespace

TEST_CASE("every corpus scenario round-trips through the serializer") {
    for (const std::string& name : kCorpus) {
        CAPTURE(name);
        Scenario first = parse_scenario(read_file(scenario_path(name)));
        std::string canon = first.to_text();
        Scenario second = parse_scenario(canon);
        CHECK(second.to_text() == canon);
    }
}

TEST_CASE("half-line iterate scenario finds the fixed point") {
    auto result = run_scenario_file(scenario_path("half_line_iterate.scn"));
    CHECK(result.exit_code == 0);
    CHECK(result.report.find("outcome: coincidence-found") != std::string::npos);
    CHECK(result.report.find("coincidence-point:") != std::string::npos);
    CHECK(result.report.find("common-fixed-point: yes") != std::string::npos);
    CHECK(result.report.find("cauchy-certificate: pass") != std::string::npos);
}

TEST_CASE("half-line check scenario passes every hypothesis") {
    auto result = run_scenario_file(scenario_path("half_line_check.scn"));
    CHECK(result.exit_code == 0);
    CHECK(result.report.find("result: pass") != std::string::npos);
}

TEST_CASE("admissibility dichotomy splits as documented") {
    auto result = run_scenario_file(scenario_path("admissibility_reciprocal_exp.scn"));
    CHECK(result.exit_code == 1);
    CHECK(result.report.find("alpha-admissible\tfail") != std::string::npos);
    CHECK(result.report.find("alpha-admissible-wrt-g\tpass") != std::string::npos);
    CHECK(result.report.find("(2, 1)") != std::string::npos);

    CHECK(run_scenario_file(scenario_path("admissibility_exp_square.scn")).exit_code == 0);
    CHECK(run_scenario_file(scenario_path("admissibility_log_sqrt.scn")).exit_code == 0);
}

TEST_CASE("oracle scenarios confirm their theorems") {
    auto banach = run_scenario_file(scenario_path("banach_finite.scn"));
    CHECK(banach.exit_code == 0);
    CHECK(banach.report.find("verdict: theorem-confirmed") != std::string::npos);
    CHECK(banach.report.find("common-fixed-points: p2") != std::string::npos);

    auto diamond = run_scenario_file(scenario_path("diamond_order.scn"));
    CHECK(diamond.exit_code == 0);
    CHECK(diamond.report.find("verdict: theorem-confirmed") != std::string::npos);
    CHECK(diamond.report.find("common-fixed-points: b") != std::string::npos);
}

TEST_CASE("cyclic scenarios check and converge") {
    auto check = run_scenario_file(scenario_path("cyclic_quarter_check.scn"));
    CHECK(check.exit_code == 0);

    auto iterate = run_scenario_file(scenario_path("cyclic_quarter_iterate.scn"));
    CHECK(iterate.exit_code == 0);
    CHECK(iterate.report.find("outcome: coincidence-found") != std::string::npos);
}

TEST_CASE("corollary scenarios pass their reductions") {
    for (const char* name : {"corollary_hardy_rogers.scn", "corollary_kannan.scn"}) {
        CAPTURE(name);
        auto result = run_scenario_file(scenario_path(name));
        CHECK(result.exit_code == 0);
        CHECK(result.report.find("dominance\tpass") != std::string::npos);
        CHECK(result.report.find("direct-implies-generalized\tpass") != std::string::npos);
    }
}

TEST_CASE("the corpus falsification run reports zero contradictions") {
    auto result = run_scenario_file(scenario_path("falsify_small.scn"));
    CHECK(result.exit_code == 0);
    CHECK(result.report.find("trials: 1000") != std::string::npos);
    CHECK(result.report.find("contradictions: 0") != std::string::npos);
}

TEST_CASE("falsify scenarios are deterministic given the seed") {
    std::string text =
        "[run]\nmode = falsify\nseed = 7\ntrials = 100\nspace_size_max = 5\n";
    auto a = run_text(text, "falsify_a");
    auto b = run_text(text, "falsify_b");
    CHECK(a.exit_code == 0);
    CHECK(a.report == b.report);
    CHECK(a.report.find("contradictions: 0") != std::string::npos);

    // Seed override changes the reported seed.
    std::string path = "tmp_falsify_seed.scn";
    {
        std::ofstream out(path);
        out << text;
    }
    auto c = run_scenario_file(path, 123);
    std::remove(path.c_str());
    CHECK(c.report.find("seed: 123") != std::string::npos);
}

TEST_CASE("matrix and table forms parse, run and round-trip") {
    std::string text =
        "[space]\nkind = finite\npoints = a b c\ndist =\n0 1 2\n1 0 1\n2 1 0\n"
        "[pair]\nf = table a a b\ng = identity\n"
        "[alpha]\nform = matrix\n1 1 0\n1 1 1\n0 1 1\n"
        "[psi]\nkind = table\nknots =\n1 0.6\n2 1.2\n10 6\n"
        "[order]\nkind = matrix\nrel =\n1 1 1\n0 1 1\n0 0 1\n"
        "[partition]\na1 = a b\na2 = b c\n"
        "[run]\nmode = check\n"
        "checks = space-valid psi-membership order-valid partition-valid g-nondecreasing\n";
    Scenario sc = parse_scenario(text);
    std::string canon = sc.to_text();
    CHECK(parse_scenario(canon).to_text() == canon);

    auto result = run_text(text, "kitchen_sink");
    CHECK(result.exit_code == 0);
    CHECK(result.report.find("result: pass") != std::string::npos);
}

TEST_CASE("finite iterate scenario resolves labelled starting points") {
    auto result = run_scenario_file(scenario_path("banach_finite_iterate.scn"));
    CHECK(result.exit_code == 0);
    CHECK(result.report.find("coincidence-point: p2") != std::string::npos);
}

TEST_CASE("non-converging runs exit with failure") {
    // The doubling map diverges: max_iter is reached.
    std::string diverging =
        "[space]\nkind = interval\nlo = 0\nhi = inf\n"
        "[pair]\nf = scale 2\ng = identity\ng_inverse = identity\n"
        "[alpha]\nform = constant 1\n"
        "[psi]\nkind = linear\nlambda = 0.5\n"
        "[run]\nmode = iterate\nx0 = 1\nmax_iter = 15\n";
    auto result = run_text(diverging, "diverge");
    CHECK(result.exit_code == 1);
    CHECK(result.report.find("outcome: max-iterations") != std::string::npos);

    // f lands outside the g range: preimage failure.
    std::string broken =
        "[space]\nkind = finite\npoints = a b c\ndist =\n0 1 2\n1 0 1\n2 1 0\n"
        "[pair]\nf = table c c c\ng = table a b b\n"
        "[alpha]\nform = constant 1\n"
        "[psi]\nkind = linear\nlambda = 0.5\n"
        "[run]\nmode = iterate\nx0 = a\n";
    auto failed = run_text(broken, "preimage");
    CHECK(failed.exit_code == 1);
    CHECK(failed.report.find("outcome: preimage-failure") != std::string::npos);
}

TEST_CASE("missing sections are input errors") {
    std::string no_psi =
        "[space]\nkind = interval\nlo = 0\nhi = 10\n"
        "[pair]\nf = scale 1/2\ng = identity\ng_inverse = identity\n"
        "[alpha]\nform = constant 1\n"
        "[run]\nmode = iterate\nx0 = 1\n";
    CHECK_THROWS_AS(parse_scenario(no_psi), parse_error);
    CHECK(run_text(no_psi, "no_psi").exit_code == 2);

    CHECK(run_text("[run]\nmode = iterate\n", "bare").exit_code == 2);
    CHECK(run_scenario_file("does_not_exist.scn").exit_code == 2);
}

TEST_CASE("malformed scenarios report line diagnostics") {
    try {
        parse_scenario("[space]\nkind = interval\nlo = zero\nhi = 1\n[run]\nmode = check\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 3);
    }

    CHECK_THROWS_AS(parse_scenario("[mystery]\nkey = 1\n[run]\nmode = check\n"), parse_error);
    CHECK_THROWS_AS(
        parse_scenario("[space]\nkind = interval\nlo = 0\nhi = 1\n"
                       "[run]\nmode = check\nchecks = not-a-check\n"),
        parse_error);
    // Duplicate sections are rejected.
    CHECK_THROWS_AS(parse_scenario("[run]\nmode = check\n[run]\nmode = check\n"), parse_error);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
    auto a = run_scenario_file(scenario_path("half_line_check.scn"));
    auto b = run_scenario_file(scenario_path("half_line_check.scn"));
    CHECK(a.report == b.report);
}
