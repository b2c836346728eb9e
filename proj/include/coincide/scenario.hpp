#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "coincide/adapters.hpp"
#include "coincide/comparison.hpp"
#include "coincide/maps.hpp"
#include "coincide/pair.hpp"
#include "coincide/space.hpp"

namespace coincide {

/// Execution parameters of a scenario's [run] section.
struct RunSpec {
    enum class Mode { Check, Iterate, Oracle, Falsify };

    Mode mode = Mode::Check;
    std::optional<Point> x0;
    double tol = 1e-9;
    std::size_t max_iter = 10000;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::size_t space_size_max = 6;
    double grid_lo = 0.0;
    double grid_hi = 1.0;
    double grid_step = 0.01;
    std::size_t random_pairs = 10000;
    double slack = 1e-12;
    std::vector<std::string> checks;  // empty = every applicable check
};

/// A parsed scenario file: flat key-value sections declaring the space, the
/// mapping pair, alpha (explicit or built by an adapter directive), psi,
/// optional order / partition / corollary blocks, and the run parameters.
struct Scenario {
    enum class AlphaSource { None, Explicit, FromOrder, FromCyclic };

    /// Corollary block as written; materialized into a CorollaryConfig at
    /// run time (the adapter kinds borrow [psi] / [order] / [partition]).
    struct CorollarySpec {
        std::string kind;
        double lambda = 0.0;
        double a = 0.0, b = 0.0, c = 0.0;
    };

    std::optional<Space> space;
    std::optional<Map> f, g, g_inverse;
    bool g_range_closed_declared = false;
    AlphaSource alpha_source = AlphaSource::None;
    std::optional<AlphaFunction> alpha;
    std::optional<ComparisonFunction> psi;
    std::optional<PartialOrder> order;
    std::optional<CyclicPartition> partition;
    std::optional<CorollarySpec> corollary;
    RunSpec run;

    /// Canonical text rendering; parse(to_text()) reproduces the scenario.
    std::string to_text() const;
};

/// Parses scenario text; throws parse_error with a line diagnostic.
Scenario parse_scenario(const std::string& text);

/// Reads and parses a scenario file; throws parse_error (file problems are
/// reported as line 0).
Scenario load_scenario(const std::string& path);

/// Outcome of executing a scenario.
///
/// Exit codes: 0 all checks passed / coincidence found; 1 a check failed,
/// the iteration hit max_iter, or a preimage failed; 2 input error;
/// 3 contradiction (a passing hypothesis set with a failing conclusion —
/// expected never).
struct ScenarioResult {
    int exit_code = 0;
    std::string report;
};

ScenarioResult run_scenario(const Scenario& scenario);

/// Loads and runs a scenario file. Parse failures come back as exit code 2
/// with the diagnostic in the report. `seed_override` replaces the [run]
/// seed when set.
ScenarioResult run_scenario_file(const std::string& path,
                                 std::optional<std::uint64_t> seed_override = {});

}  // namespace coincide
