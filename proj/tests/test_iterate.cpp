#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coincide/errors.hpp"
#include "coincide/iterate.hpp"
#include "example_configs.hpp"

using namespace coincide;

TEST_CASE("half-line iteration contracts to the origin") {
    configs::HalfLinePair cfg;
    auto psi = cfg.psi();
    auto trace = jungck_iterate(cfg.pair(), cfg.alpha(), psi, Point::coord(1.0), 1e-9, 200);

    REQUIRE(trace.outcome == IterationTrace::Outcome::CoincidenceFound);
    CHECK(trace.iterations <= 60);
    double z = trace.found->as_coord();
    CHECK(std::abs(z) <= 1.5e-9);

    auto p = cfg.pair();
    CHECK(std::abs(p.f(*trace.found).as_coord() - p.g(*trace.found).as_coord()) <= 1e-9);

    // The recursion halves g and thirds f, so x_{n+1} = (2/3) x_n.
    for (std::size_t n = 0; n + 1 < trace.points.size(); ++n) {
        CHECK(trace.points[n + 1].as_coord() ==
              doctest::Approx(trace.points[n].as_coord() * 2.0 / 3.0).epsilon(1e-12));
        CHECK(std::abs(trace.g_values[n + 1].as_coord() - trace.f_values[n].as_coord()) <=
              1e-12);
    }
    for (double a : trace.alpha_chain) CHECK(a >= 1.0);

    double d0 = trace.step_distances[0];
    CHECK(d0 == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    for (std::size_t n = 0; n < trace.step_distances.size(); ++n) {
        CHECK(trace.step_distances[n] <= psi.iterate(static_cast<int>(n), d0) + 1e-9);
        if (n + 1 < trace.step_distances.size() && trace.step_distances[n] > 0.0) {
            CHECK(trace.step_distances[n + 1] <= psi.eval(trace.step_distances[n]) + 1e-9);
        }
    }
    CHECK(trace.certificate[0] == doctest::Approx(psi.tail_bound(0, d0)));
    CHECK(verify_cauchy_certificate(trace, psi).passed);
}

TEST_CASE("equal mappings coincide after the first step") {
    Space s = Space::interval(0.0, 10.0);
    Map half = Map::scale(0.5);
    MappingPair p(s, half, half, Map::scale(2.0));
    auto trace = jungck_iterate(p, AlphaFunction::constant(1.0),
                                ComparisonFunction::linear(0.5), Point::coord(4.0));
    CHECK(trace.outcome == IterationTrace::Outcome::CoincidenceFound);
    CHECK(trace.iterations == 1);
    CHECK(trace.found->as_coord() == 4.0);

    Space fin = Space::finite({"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0});
    MappingPair fp(fin, Map::table({1, 2, 2}), Map::table({1, 2, 2}));
    auto ftrace = jungck_iterate(fp, AlphaFunction::constant(1.0),
                                 ComparisonFunction::linear(0.5), Point::index(0));
    CHECK(ftrace.outcome == IterationTrace::Outcome::CoincidenceFound);
    CHECK(ftrace.iterations == 1);
}

TEST_CASE("finite contraction table reaches its fixed point") {
    configs::BanachFinite cfg;
    auto pairs = sample_pairs(cfg.space, {});
    REQUIRE(check_contractive(cfg.pair(), cfg.alpha(), cfg.psi(), pairs).passed);

    auto trace = jungck_iterate(cfg.pair(), cfg.alpha(), cfg.psi(), Point::index(0));
    CHECK(trace.outcome == IterationTrace::Outcome::CoincidenceFound);
    CHECK(trace.found->as_index() == 2);
    CHECK(trace.iterations <= 4);
    // Exact coincidence on finite spaces.
    CHECK(cfg.pair().f(*trace.found) == cfg.pair().g(*trace.found));
    CHECK(verify_cauchy_certificate(trace, cfg.psi()).passed);
}

TEST_CASE("certificate verification rejects a divergent run") {
    Space s = Space::interval(0.0, configs::kInf);
    MappingPair doubling(s, Map::scale(2.0), Map::identity(), Map::identity());
    auto trace = jungck_iterate(doubling, AlphaFunction::constant(1.0),
                                ComparisonFunction::linear(0.5), Point::coord(1.0), 1e-9, 20);
    CHECK(trace.outcome == IterationTrace::Outcome::MaxIterations);
    CHECK_FALSE(verify_cauchy_certificate(trace, ComparisonFunction::linear(0.5)).passed);
}

TEST_CASE("single-point traces pass the certificate vacuously") {
    IterationTrace trace;
    trace.space = Space::interval(0.0, 1.0);
    trace.points = {Point::coord(0.5)};
    trace.g_values = {Point::coord(0.5)};
    trace.f_values = {Point::coord(0.5)};
    CHECK(verify_cauchy_certificate(trace, ComparisonFunction::linear(0.5)).passed);
}

TEST_CASE("identical runs produce identical traces") {
    configs::HalfLinePair cfg;
    auto a = jungck_iterate(cfg.pair(), cfg.alpha(), cfg.psi(), Point::coord(1.0));
    auto b = jungck_iterate(cfg.pair(), cfg.alpha(), cfg.psi(), Point::coord(1.0));
    CHECK(a.points == b.points);
    CHECK(a.step_distances == b.step_distances);
    CHECK(a.export_table() == b.export_table());
}

TEST_CASE("runtime range violation surfaces as a preimage failure") {
    Space s = Space::finite({"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0});
    // f lands on c, which g never reaches.
    MappingPair p(s, Map::table({2, 2, 2}), Map::table({0, 1, 1}));
    auto trace = jungck_iterate(p, AlphaFunction::constant(1.0),
                                ComparisonFunction::linear(0.5), Point::index(0));
    CHECK(trace.outcome == IterationTrace::Outcome::PreimageFailure);
    CHECK_FALSE(trace.found.has_value());
}

TEST_CASE("rejected starting points throw") {
    configs::HalfLinePair cfg;
    CHECK_THROWS_AS(jungck_iterate(cfg.pair(), AlphaFunction::constant(0.0), cfg.psi(),
                                   Point::coord(1.0)),
                    initial_point_rejected);
    // x0 = 3: g x0 = 1.5 leaves the alpha box.
    CHECK_THROWS_AS(jungck_iterate(cfg.pair(), cfg.alpha(), cfg.psi(), Point::coord(3.0)),
                    initial_point_rejected);
}

TEST_CASE("trace export lists one row per point") {
    configs::BanachFinite cfg;
    auto trace = jungck_iterate(cfg.pair(), cfg.alpha(), cfg.psi(), Point::index(0));
    std::string table = trace.export_table();
    std::size_t rows = std::count(table.begin(), table.end(), '\n');
    CHECK(rows == trace.points.size() + 1);  // header + one per point
    CHECK(table.find("n\tx\tg_x\tf_x") == 0);
}
