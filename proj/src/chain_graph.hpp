#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "coincide/check_result.hpp"
#include "coincide/space.hpp"

namespace coincide::detail {

/// Shared engine for the finite chain-limit checks: enumerate the proper
/// simple cycles (length >= 2) of `edge` over `nodes` (point indices), and
/// for every self-looped node reachable from a cycle require some cycle
/// node `related` to it.
///
/// Proper cycles model the recurring part of an infinite chain; the
/// self-looped reachable nodes are its possible eventual values. A chain
/// that merely sits at one value is covered by that value's own self-loop,
/// which the chain condition already forces, so singleton loops are not
/// treated as recurring parts.
inline CheckResult chain_limit_check(
    const std::vector<std::size_t>& nodes,
    const std::function<bool(std::size_t, std::size_t)>& edge,
    const std::function<bool(std::size_t, std::size_t)>& related, const Space& s) {
    const std::size_t n = nodes.size();

    // Simple cycles rooted at their smallest position, via DFS restricted
    // to positions >= the root.
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> path;
    std::vector<bool> on_path(n, false);

    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t root, std::size_t at) {
        for (std::size_t next = root; next < n; ++next) {
            if (!edge(nodes[at], nodes[next])) continue;
            if (next == root) {
                if (path.size() >= 2) cycles.push_back(path);
                continue;
            }
            if (on_path[next]) continue;
            on_path[next] = true;
            path.push_back(next);
            dfs(root, next);
            path.pop_back();
            on_path[next] = false;
        }
    };
    for (std::size_t root = 0; root < n; ++root) {
        path.assign(1, root);
        std::fill(on_path.begin(), on_path.end(), false);
        on_path[root] = true;
        dfs(root, root);
    }

    for (const auto& cycle : cycles) {
        std::vector<bool> reach(n, false);
        std::vector<std::size_t> frontier = cycle;
        for (std::size_t pos : cycle) reach[pos] = true;
        while (!frontier.empty()) {
            std::size_t at = frontier.back();
            frontier.pop_back();
            for (std::size_t next = 0; next < n; ++next) {
                if (!reach[next] && edge(nodes[at], nodes[next])) {
                    reach[next] = true;
                    frontier.push_back(next);
                }
            }
        }
        for (std::size_t w = 0; w < n; ++w) {
            if (!reach[w] || !edge(nodes[w], nodes[w])) continue;
            bool ok = false;
            for (std::size_t a : cycle) {
                if (related(nodes[a], nodes[w])) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                std::string cyc;
                for (std::size_t a : cycle) {
                    if (!cyc.empty()) cyc += ",";
                    cyc += s.describe_point(Point::index(nodes[a]));
                }
                return CheckResult::fail(
                    "chain limit not related to its cycle",
                    "cycle {" + cyc + "} -> " + s.describe_point(Point::index(nodes[w])));
            }
        }
    }
    return CheckResult::pass();
}

/// Distinct values of a finite g table, in first-appearance order.
inline std::vector<std::size_t> table_range(const std::vector<std::size_t>& table) {
    std::vector<std::size_t> range;
    for (std::size_t v : table) {
        if (std::find(range.begin(), range.end(), v) == range.end()) range.push_back(v);
    }
    return range;
}

}  // namespace coincide::detail
