#pragma once
// Merge invariants shared by the dedup unit tests and the acceptance suite.

#include <algorithm>
#include <vector>

#include "hyperkg/dedup.hpp"
#include "hyperkg/hypergraph.hpp"

namespace hyperkg::testing {

// Exact degree accounting for a merge:
//   deg_after(r) = sum of member degrees before
//                - sum over surviving edges of (|e ∩ C| - 1)
//                - sum over removed edges of |e ∩ C|
// where C is the class and "surviving" means the edge id is still present.
inline bool degree_conservation_holds(const Hypergraph& before, const Hypergraph& after,
                                      const MergePlan& plan) {
    for (const auto& cls : plan.classes) {
        long long expected = 0;
        for (const auto& m : cls.members)
            if (before.has_node(m)) expected += static_cast<long long>(before.degree(m));
        for (const auto& e : before.edges()) {
            long long k = 0;
            for (const auto& m : cls.members)
                if (e.contains(m)) ++k;
            if (k == 0) continue;
            if (after.find_edge(e.id))
                expected -= k - 1;
            else
                expected -= k;
        }
        long long actual = after.has_node(cls.representative)
                               ? static_cast<long long>(after.degree(cls.representative))
                               : 0;
        if (actual != expected) return false;
    }
    return true;
}

// Post-merge structural checks: no sub-2-node edges, no self-loop rows,
// every edge keeps at least one provenance row, mapping is a fixpoint.
inline bool merge_postconditions_hold(const Hypergraph& after, const MergePlan& plan) {
    for (const auto& e : after.edges()) {
        if (e.nodes.size() < 2) return false;
        if (after.provenance_of(e.id).empty()) return false;
    }
    for (const auto& p : after.provenance())
        if (sorted_unique(p.source) == sorted_unique(p.target)) return false;
    for (const auto& v : after.node_labels())
        if (plan.map(v) != v) return false;
    return true;
}

} // namespace hyperkg::testing
