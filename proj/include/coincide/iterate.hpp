#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coincide/comparison.hpp"
#include "coincide/pair.hpp"
#include "coincide/space.hpp"

namespace coincide {

/// Full record of one run of the coincidence iteration.
///
/// Invariants for a trace produced under passing hypotheses:
///  - g_values[n+1] equals f_values[n] (bit-exact on finite spaces, within
///    1e-12 on intervals; violations abort the run as PreimageFailure);
///  - alpha_chain[n] >= 1;
///  - step_distances[n] <= psi^n(step_distances[0]) + 1e-9.
struct IterationTrace {
    enum class Outcome { CoincidenceFound, MaxIterations, PreimageFailure };

    Space space;
    std::vector<Point> points;
    std::vector<Point> g_values;
    std::vector<Point> f_values;
    std::vector<double> step_distances;  // d(f x_n, f x_{n+1})
    std::vector<double> alpha_chain;     // alpha(g x_n, g x_{n+1})
    std::vector<double> certificate;     // tail bound at each n
    Outcome outcome = Outcome::MaxIterations;
    std::optional<Point> found;          // set when outcome == CoincidenceFound
    std::size_t iterations = 0;          // steps taken

    /// Tab-delimited table, one row per recorded point.
    std::string export_table() const;
};

/// Runs the coincidence iteration x_{n+1} = g_preimage(f(x_n)) from x0.
///
/// Requires alpha(g x0, f x0) >= 1 (throws initial_point_rejected). At each
/// new point the run stops with CoincidenceFound when the step distance is
/// exactly zero, or when the coincidence gap d(f x, g x) is small enough
/// that its projected iterate series stays within tol (for linear psi this
/// is gap <= tol * (1 - lambda)), so the reported point sits within tol of
/// the limit coincidence value. PreimageFailure is an outcome, not an
/// exception: it records a runtime violation of range inclusion.
IterationTrace jungck_iterate(const MappingPair& p, const AlphaFunction& alpha,
                              const ComparisonFunction& psi, const Point& x0,
                              double tol = 1e-9, std::size_t max_iter = 10000);

/// Verifies the Cauchy certificate on a finished trace: for every n < m,
/// d(f x_n, f x_m) must not exceed the psi tail bound from n of the first
/// step distance, plus 1e-9 slack.
CheckResult verify_cauchy_certificate(const IterationTrace& trace,
                                      const ComparisonFunction& psi);

}  // namespace coincide
