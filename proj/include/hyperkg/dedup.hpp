#pragma once
// Embedding-based semantic node merging: similarity components above a
// threshold, degree-based representative selection, and the four
// synchronized merge operations (text aggregation, provenance rewrite,
// edge reconstruction, embedding recomputation).

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hyperkg/embedding.hpp"
#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"
#include "hyperkg/union_find.hpp"

namespace hyperkg {

struct MergeClass {
    NodeLabel representative;
    std::vector<NodeLabel> members; // sorted, includes the representative
};

struct MergePlan {
    std::vector<MergeClass> classes;                    // disjoint
    std::unordered_map<NodeLabel, NodeLabel> mapping;   // member -> representative

    bool empty() const { return classes.empty(); }

    const NodeLabel& map(const NodeLabel& v) const {
        auto it = mapping.find(v);
        return it == mapping.end() ? v : it->second;
    }
};

// Connected components of the graph {pairs with cosine >= theta} restricted
// to the candidates; singletons are non-merges and dropped. Components are
// the transitive closure, so chained pairwise-similar labels merge together.
// max_class_size (0 = unlimited) aborts on pathological chaining.
inline std::vector<std::vector<NodeLabel>> similarity_components(
    const EmbeddingStore& store, const std::vector<NodeLabel>& candidates,
    double theta, std::size_t max_class_size = 0) {
    if (!(theta > 0.0) || theta > 1.0)
        throw DataError("similarity threshold must be in (0, 1]");
    std::vector<NodeLabel> nodes = sorted_unique(candidates);
    for (const auto& v : nodes)
        if (!store.contains(v)) throw NotFoundError("candidate not embedded: " + v);

    UnionFind uf(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Embedding& u = store.get(nodes[i]);
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (cosine_similarity(u, store.get(nodes[j])) >= theta) uf.unite(i, j);
        }
    }

    std::map<std::size_t, std::vector<NodeLabel>> by_root;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        by_root[uf.find(i)].push_back(nodes[i]);

    std::vector<std::vector<NodeLabel>> classes;
    for (auto& [_, members] : by_root) {
        if (members.size() < 2) continue;
        if (max_class_size != 0 && members.size() > max_class_size)
            throw DataError("similarity class exceeds max size " +
                            std::to_string(max_class_size) + " (" +
                            std::to_string(members.size()) + " members)");
        std::sort(members.begin(), members.end());
        classes.push_back(std::move(members));
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

// Highest-degree member wins; ties break to the lexicographically smallest
// label so runs are reproducible.
inline NodeLabel select_representative(const Hypergraph& graph,
                                       const std::vector<NodeLabel>& cls) {
    if (cls.empty()) throw DataError("representative of an empty class");
    const NodeLabel* best = nullptr;
    std::size_t best_degree = 0;
    for (const auto& v : cls) {
        std::size_t d = graph.degree(v); // throws NotFoundError for unknown members
        if (!best || d > best_degree || (d == best_degree && v < *best)) {
            best = &v;
            best_degree = d;
        }
    }
    return *best;
}

inline MergePlan build_merge_plan(const Hypergraph& graph,
                                  const std::vector<std::vector<NodeLabel>>& classes) {
    MergePlan plan;
    for (const auto& cls : classes) {
        MergeClass mc;
        mc.members = sorted_unique(cls);
        mc.representative = select_representative(graph, mc.members);
        for (const auto& v : mc.members) {
            if (plan.mapping.count(v))
                throw DataError("merge classes are not disjoint at: " + v);
            plan.mapping[v] = mc.representative;
        }
        plan.classes.push_back(std::move(mc));
    }
    std::sort(plan.classes.begin(), plan.classes.end(),
              [](const MergeClass& a, const MergeClass& b) {
                  return a.representative < b.representative;
              });
    return plan;
}

struct MergeOutcome {
    Hypergraph graph;
    EmbeddingStore store;
    std::size_t edges_removed = 0;
    std::size_t provenance_rows_removed = 0;
};

// Applies a merge plan atomically. Representatives must exist in the graph;
// members already merged away are tolerated as no-ops, which makes applying
// the same plan twice equal applying it once.
//
// Edges whose rewritten node set collapses below 2 labels are removed, as
// are provenance rows whose rewritten source set equals the target set; an
// edge that loses all its rows is removed with them so every surviving edge
// keeps provenance.
inline MergeOutcome apply_merge(const Hypergraph& graph, const EmbeddingStore& store,
                                const MergePlan& plan, EmbeddingProvider& provider) {
    for (const auto& cls : plan.classes) {
        if (!graph.has_node(cls.representative))
            throw DataError("merge representative not in graph: " + cls.representative);
        if (std::find(cls.members.begin(), cls.members.end(), cls.representative) ==
            cls.members.end())
            throw DataError("representative not a member of its class: " +
                            cls.representative);
        for (const auto& v : cls.members) {
            auto it = plan.mapping.find(v);
            if (it == plan.mapping.end() || it->second != cls.representative)
                throw DataError("merge mapping is inconsistent at: " + v);
        }
    }

    // (1) Text aggregation: representative inherits all chunk annotations.
    auto text = graph.node_text_map();
    for (const auto& cls : plan.classes) {
        auto& agg = text[cls.representative];
        for (const auto& v : cls.members) {
            if (v == cls.representative) continue;
            auto it = text.find(v);
            if (it == text.end()) continue;
            agg.insert(it->second.begin(), it->second.end());
            text.erase(it);
        }
    }

    // (3) Hypergraph reconstruction: rewrite node sets, drop degenerates.
    std::vector<Hyperedge> edges;
    std::set<EdgeId> dropped;
    for (const auto& e : graph.edges()) {
        std::vector<NodeLabel> rewritten;
        rewritten.reserve(e.nodes.size());
        for (const auto& v : e.nodes) rewritten.push_back(plan.map(v));
        rewritten = sorted_unique(std::move(rewritten));
        if (rewritten.size() < 2) {
            dropped.insert(e.id);
            continue;
        }
        Hyperedge copy = e;
        copy.nodes = std::move(rewritten);
        edges.push_back(std::move(copy));
    }

    // (2) Dataframe synchronization: rewrite source/target occurrences, then
    // drop self-loop rows (source set == target set after mapping).
    std::vector<ProvenanceTriple> rows;
    std::unordered_map<EdgeId, std::size_t> rows_per_edge;
    for (const auto& p : graph.provenance()) {
        if (dropped.count(p.edge_id)) continue;
        ProvenanceTriple row = p;
        for (auto& v : row.source) v = plan.map(v);
        for (auto& v : row.target) v = plan.map(v);
        if (sorted_unique(row.source) == sorted_unique(row.target)) continue;
        ++rows_per_edge[row.edge_id];
        rows.push_back(std::move(row));
    }
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [&](const Hyperedge& e) {
                                   return rows_per_edge.count(e.id) == 0;
                               }),
                edges.end());

    // Drop annotations for labels that no longer appear anywhere.
    std::set<NodeLabel> surviving;
    for (const auto& e : edges)
        surviving.insert(e.nodes.begin(), e.nodes.end());
    for (auto it = text.begin(); it != text.end();)
        it = surviving.count(it->first) ? std::next(it) : text.erase(it);

    Hypergraph merged = Hypergraph::from_parts(std::move(edges), std::move(rows),
                                               graph.next_edge_id(), std::move(text));

    // (4) Embedding recomputation: drop merged-away labels, re-embed the
    // representatives from their canonical labels. Provider failure throws
    // before anything is committed, keeping the pass atomic.
    EmbeddingStore new_store = store;
    std::vector<NodeLabel> reps;
    for (const auto& cls : plan.classes) {
        for (const auto& v : cls.members)
            if (v != cls.representative) new_store.erase(v);
        reps.push_back(cls.representative);
    }
    embed_into_store(new_store, provider, reps);

    MergeOutcome out;
    out.edges_removed = graph.edge_count() - merged.edge_count();
    out.provenance_rows_removed = graph.provenance().size() - merged.provenance().size();
    out.graph = std::move(merged);
    out.store = std::move(new_store);
    return out;
}

// Audit rows: {"representative", "merged": [...], "degrees": [...]} where
// degrees are the pre-merge degrees of the merged-away labels.
inline void write_merge_audit(const Hypergraph& graph, const MergePlan& plan,
                              std::ostream& out) {
    for (const auto& cls : plan.classes) {
        nlohmann::ordered_json merged = nlohmann::ordered_json::array();
        nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
        for (const auto& v : cls.members) {
            if (v == cls.representative) continue;
            merged.push_back(v);
            degrees.push_back(graph.has_node(v) ? graph.degree(v) : 0);
        }
        nlohmann::ordered_json row;
        row["representative"] = cls.representative;
        row["merged"] = std::move(merged);
        row["degrees"] = std::move(degrees);
        out << row.dump() << "\n";
    }
}

// Runs the full merge pass on the f-th document boundary, no-op otherwise.
// new_nodes get embedded; components are then found over every embedded
// label still present in the graph, so synonyms across documents merge.
inline MergeOutcome incremental_dedup(const Hypergraph& graph, const EmbeddingStore& store,
                                      EmbeddingProvider& provider,
                                      const std::vector<NodeLabel>& new_nodes,
                                      std::size_t document_index, double theta,
                                      std::size_t merge_frequency,
                                      std::size_t max_class_size = 0) {
    if (merge_frequency == 0) throw DataError("merge frequency must be >= 1");
    if (document_index % merge_frequency != 0)
        return MergeOutcome{graph, store, 0, 0};

    EmbeddingStore working = store;
    std::vector<NodeLabel> to_embed;
    for (const auto& v : sorted_unique(new_nodes))
        if (!working.contains(v) && graph.has_node(v)) to_embed.push_back(v);
    embed_into_store(working, provider, to_embed);

    std::vector<NodeLabel> candidates;
    for (const auto& v : working.labels())
        if (graph.has_node(v)) candidates.push_back(v);

    auto classes = similarity_components(working, candidates, theta, max_class_size);
    if (classes.empty()) return MergeOutcome{graph, working, 0, 0};
    MergePlan plan = build_merge_plan(graph, classes);
    return apply_merge(graph, working, plan, provider);
}

} // namespace hyperkg
