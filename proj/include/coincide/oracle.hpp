#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "coincide/comparison.hpp"
#include "coincide/iterate.hpp"
#include "coincide/pair.hpp"

namespace coincide {

/// Exhaustive findings for a finite-space configuration: the coincidence
/// set, its g-values, the common fixed points, every hypothesis verdict,
/// and the resulting theorem-level verdict.
///
/// Contradiction means a full hypothesis set passed while the guaranteed
/// conclusion failed; it is asserted never to occur.
struct CoincidenceReport {
    enum class Verdict { TheoremConfirmed, HypothesesFailed, Contradiction };

    std::vector<Point> coincidence_points;
    std::vector<Point> points_of_coincidence;  // distinct g-values of the above
    std::vector<Point> common_fixed_points;
    std::vector<std::pair<std::string, CheckResult>> hypothesis_results;
    std::vector<std::string> failed_hypotheses;
    Verdict verdict = Verdict::HypothesesFailed;

    const CheckResult* find(const std::string& name) const;

    /// The five coincidence-theorem hypotheses (contractive, admissibility
    /// w.r.t. g, range inclusion, initial point, chain-limit compatibility).
    bool coincidence_hypotheses_pass() const;
    /// The five above plus the uniqueness hypothesis and commuting at
    /// coincidence points.
    bool uniqueness_hypotheses_pass() const;
};

/// Exact coincidence / common-fixed-point enumeration by table scan.
/// Fills only the point sets of the report. Throws not_finite.
CoincidenceReport enumerate_coincidence(const MappingPair& p);

/// For all u, v in the coincidence set there must exist w with
/// alpha(gu, gw) >= 1 and alpha(gv, gw) >= 1 (w may equal u or v).
CheckResult check_uniqueness_hypothesis(const MappingPair& p, const AlphaFunction& alpha);

/// f(g z) = g(f z) at every coincidence point z.
CheckResult check_commuting_at_coincidence(const MappingPair& p);

/// Finite reformulation of the chain-limit hypothesis: in the directed
/// graph on g-range with an edge (a, b) when alpha(a, b) >= 1, every simple
/// cycle must contain a node alpha-related to each self-looped node
/// reachable from the cycle (the possible eventual values of an admissible
/// chain passing through it).
CheckResult check_chain_limit_compatibility(const MappingPair& p, const AlphaFunction& alpha);

/// Runs every hypothesis check exhaustively, enumerates the point sets and
/// cross-checks the theorem conclusions (non-empty coincidence set; when
/// the uniqueness hypotheses also hold, a single common fixed point and a
/// single shared g-value across coincidence points).
CoincidenceReport run_theorem_suite(const MappingPair& p, const AlphaFunction& alpha,
                                    const ComparisonFunction& psi);

/// One randomly generated finite configuration of the falsification run.
struct FalsificationTrial {
    MappingPair pair;
    AlphaFunction alpha;
    ComparisonFunction psi;
};

/// Randomized falsification harness: seeded random finite spaces (points in
/// the unit square, Euclidean distances), random f/g tables, alpha matrices
/// quantized to {0, 1/2, 1, 2} and linear psi with random slope. Every
/// trial runs the full theorem suite; any Contradiction verdict in the
/// returned reports would falsify the underlying result. The optional
/// observer sees each trial's configuration and report.
std::vector<CoincidenceReport> falsification_search(
    std::uint64_t seed, std::size_t trials, std::size_t space_size_max,
    const std::function<void(const FalsificationTrial&, const CoincidenceReport&)>& observer =
        {});

}  // namespace coincide
