#pragma once
// Hypergraph data model: labeled nodes, n-ary hyperedges backed by directed
// provenance rows, and a node -> edge inverted index kept exactly consistent
// with the edge collection.
//
// A built graph is treated as an immutable snapshot: mutation happens while
// constructing (add_event / merge), readers then share the value freely.
// Duplicate hyperedges (same node set) are retained as distinct edges; edge
// ids are assigned sequentially and never reused.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperkg/errors.hpp"

namespace hyperkg {

using NodeLabel = std::string;
using EdgeId = std::uint64_t;

inline std::string trim_copy(std::string_view s) {
    const char* ws = " \t\r\n\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return std::string{};
    auto e = s.find_last_not_of(ws);
    return std::string{s.substr(b, e - b + 1)};
}

// Labels are whitespace-trimmed, case-preserved, compared by exact bytes.
inline NodeLabel canonical_label(std::string_view raw) {
    std::string t = trim_copy(raw);
    if (t.empty()) throw DataError("node label is empty after trimming");
    return t;
}

struct Hyperedge {
    EdgeId id = 0;
    std::vector<NodeLabel> nodes; // sorted, unique, size >= 2
    std::string relation;
    std::string chunk_id;

    std::size_t size() const { return nodes.size(); }

    bool contains(const NodeLabel& v) const {
        return std::binary_search(nodes.begin(), nodes.end(), v);
    }
};

// One directed row backing a hyperedge; source/target keep extraction order.
struct ProvenanceTriple {
    EdgeId edge_id = 0;
    std::vector<NodeLabel> source;
    std::vector<NodeLabel> target;
    std::string relation;
    std::string chunk_id;
};

inline std::vector<NodeLabel> sorted_unique(std::vector<NodeLabel> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

struct DuplicateGroup {
    std::vector<NodeLabel> nodes;
    std::size_t count = 0;
};

struct DuplicateReport {
    std::vector<DuplicateGroup> groups; // only groups with count >= 2
    std::size_t surplus = 0;            // sum of (count - 1)
};

// Sparse 0/1 incidence: |E| rows (edge-id order) x |V| columns (lexicographic).
struct IncidenceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<EdgeId> row_edges;
    std::vector<NodeLabel> col_nodes;
    std::vector<std::pair<std::size_t, std::size_t>> entries; // (row, col), value 1
};

class Hypergraph {
public:
    Hypergraph() = default;

    // One extraction event -> one hyperedge plus its provenance row.
    // Rejects events whose label union has < 2 distinct nodes and events
    // whose source and target are identical as sets.
    EdgeId add_event(const std::vector<std::string>& source_raw,
                     const std::vector<std::string>& target_raw,
                     std::string_view relation_raw,
                     std::string_view chunk_id_raw) {
        if (source_raw.empty()) throw DataError("event has empty source list");
        if (target_raw.empty()) throw DataError("event has empty target list");
        std::string relation = trim_copy(relation_raw);
        if (relation.empty()) throw DataError("event relation is empty");
        std::string chunk_id = trim_copy(chunk_id_raw);
        if (chunk_id.empty()) throw DataError("event chunk_id is empty");

        std::vector<NodeLabel> source, target;
        source.reserve(source_raw.size());
        target.reserve(target_raw.size());
        for (const auto& s : source_raw) source.push_back(canonical_label(s));
        for (const auto& t : target_raw) target.push_back(canonical_label(t));

        std::vector<NodeLabel> members = source;
        members.insert(members.end(), target.begin(), target.end());
        members = sorted_unique(std::move(members));
        if (members.size() < 2)
            throw DataError("degenerate event: fewer than 2 distinct nodes");
        if (sorted_unique(source) == sorted_unique(target))
            throw DataError("self-loop event: source set equals target set");

        EdgeId id = next_edge_id_++;
        Hyperedge edge{id, std::move(members), relation, chunk_id};
        for (const auto& v : edge.nodes) {
            index_[v].push_back(id);
            node_text_[v].insert(chunk_id);
        }
        edges_.push_back(std::move(edge));
        provenance_.push_back(
            ProvenanceTriple{id, std::move(source), std::move(target), relation, chunk_id});
        provenance_by_edge_[id].push_back(provenance_.size() - 1);
        return id;
    }

    // Appends a copy of another graph's edge (with its provenance rows)
    // under a fresh id, keeping the index and annotations in step.
    EdgeId absorb(const Hyperedge& e, const std::vector<const ProvenanceTriple*>& rows) {
        if (e.nodes.size() < 2) throw DataError("edge has fewer than 2 nodes");
        if (rows.empty()) throw DataError("edge has no provenance row");
        EdgeId id = next_edge_id_++;
        Hyperedge copy = e;
        copy.id = id;
        for (const auto& v : copy.nodes) {
            index_[v].push_back(id);
            node_text_[v].insert(copy.chunk_id);
        }
        edges_.push_back(std::move(copy));
        for (const auto* p : rows) {
            ProvenanceTriple row = *p;
            row.edge_id = id;
            provenance_.push_back(std::move(row));
            provenance_by_edge_[id].push_back(provenance_.size() - 1);
        }
        return id;
    }

    void merge_node_text(const NodeLabel& v, const std::set<std::string>& chunks) {
        if (!has_node(v)) return;
        node_text_[v].insert(chunks.begin(), chunks.end());
    }

    // Assembles a graph from explicit parts (snapshot load, merge rewrite).
    // Validates every structural invariant; node text annotations default to
    // the chunk ids of incident edges unless an aggregated map is supplied.
    static Hypergraph from_parts(std::vector<Hyperedge> edges,
                                 std::vector<ProvenanceTriple> provenance,
                                 EdgeId next_edge_id,
                                 std::unordered_map<NodeLabel, std::set<std::string>>
                                     node_text = {}) {
        Hypergraph g;
        std::sort(edges.begin(), edges.end(),
                  [](const Hyperedge& a, const Hyperedge& b) { return a.id < b.id; });
        EdgeId max_id = 0;
        for (auto& e : edges) {
            if (e.nodes.size() < 2) throw DataError("edge has fewer than 2 nodes");
            if (!std::is_sorted(e.nodes.begin(), e.nodes.end()) ||
                std::adjacent_find(e.nodes.begin(), e.nodes.end()) != e.nodes.end())
                e.nodes = sorted_unique(std::move(e.nodes));
            for (const auto& v : e.nodes)
                if (v != trim_copy(v) || v.empty())
                    throw DataError("edge contains a non-canonical label");
            max_id = std::max(max_id, e.id);
        }
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i].id == edges[i - 1].id) throw DataError("duplicate edge id");
        g.edges_ = std::move(edges);
        g.next_edge_id_ = std::max(next_edge_id, g.edges_.empty() ? 0 : max_id + 1);

        for (const auto& e : g.edges_)
            for (const auto& v : e.nodes) g.index_[v].push_back(e.id);

        for (auto& p : provenance) {
            const Hyperedge* e = g.find_edge(p.edge_id);
            if (!e) throw DataError("provenance row references unknown edge id");
            std::vector<NodeLabel> members = p.source;
            members.insert(members.end(), p.target.begin(), p.target.end());
            if (sorted_unique(std::move(members)) != e->nodes)
                throw DataError("provenance row does not cover its edge's node set");
            if (sorted_unique(p.source) == sorted_unique(p.target))
                throw DataError("provenance row is a self-loop");
            g.provenance_.push_back(std::move(p));
            g.provenance_by_edge_[g.provenance_.back().edge_id].push_back(
                g.provenance_.size() - 1);
        }
        for (const auto& e : g.edges_)
            if (g.provenance_by_edge_.find(e.id) == g.provenance_by_edge_.end())
                throw DataError("edge has no provenance row");

        if (!node_text.empty()) {
            g.node_text_ = std::move(node_text);
        } else {
            for (const auto& e : g.edges_)
                for (const auto& v : e.nodes) g.node_text_[v].insert(e.chunk_id);
        }
        return g;
    }

    // --- structural queries -------------------------------------------------

    // Number of hyperedges containing the node; duplicates count separately.
    std::size_t degree(const NodeLabel& v) const { return posting(v).size(); }

    // Sum of degrees over a node subset (input treated as a set).
    std::size_t volume(const std::vector<NodeLabel>& subset) const {
        std::size_t total = 0;
        for (const auto& v : sorted_unique(subset)) total += degree(v);
        return total;
    }

    // Keeps exactly the edges fully contained in the subset, with provenance.
    Hypergraph induced_subhypergraph(const std::vector<NodeLabel>& subset) const {
        auto keep = sorted_unique(subset);
        for (const auto& v : keep)
            if (!has_node(v)) throw NotFoundError("unknown node: " + v);
        std::vector<Hyperedge> kept;
        std::vector<ProvenanceTriple> rows;
        for (const auto& e : edges_) {
            bool inside = std::includes(keep.begin(), keep.end(),
                                        e.nodes.begin(), e.nodes.end());
            if (!inside) continue;
            kept.push_back(e);
            for (const auto* p : provenance_of(e.id)) rows.push_back(*p);
        }
        return from_parts(std::move(kept), std::move(rows), next_edge_id_);
    }

    IncidenceMatrix incidence_matrix() const {
        IncidenceMatrix m;
        if (edges_.empty()) return m;
        m.col_nodes = node_labels();
        m.rows = edges_.size();
        m.cols = m.col_nodes.size();
        std::unordered_map<NodeLabel, std::size_t> col;
        for (std::size_t c = 0; c < m.col_nodes.size(); ++c) col[m.col_nodes[c]] = c;
        m.row_edges.reserve(m.rows);
        for (std::size_t r = 0; r < edges_.size(); ++r) {
            m.row_edges.push_back(edges_[r].id);
            for (const auto& v : edges_[r].nodes) m.entries.emplace_back(r, col[v]);
        }
        std::sort(m.entries.begin(), m.entries.end());
        return m;
    }

    DuplicateReport duplicate_edge_groups() const {
        std::map<std::vector<NodeLabel>, std::size_t> counts;
        for (const auto& e : edges_) ++counts[e.nodes];
        DuplicateReport rep;
        for (auto& [nodes, count] : counts) {
            if (count < 2) continue;
            rep.groups.push_back(DuplicateGroup{nodes, count});
            rep.surplus += count - 1;
        }
        return rep;
    }

    // (inner, outer) pairs where inner.nodes is a proper subset of outer.nodes.
    // Equal node sets are duplicates, not nestings.
    std::vector<std::pair<EdgeId, EdgeId>> nested_pairs() const {
        std::vector<std::pair<EdgeId, EdgeId>> out;
        for (const auto& e : edges_) {
            // Candidate outers must contain every node of e: intersect the
            // posting lists, starting from the rarest node.
            const std::vector<EdgeId>* seed = nullptr;
            for (const auto& v : e.nodes) {
                const auto& pl = posting(v);
                if (!seed || pl.size() < seed->size()) seed = &pl;
            }
            for (EdgeId cand_id : *seed) {
                if (cand_id == e.id) continue;
                const Hyperedge& cand = edge(cand_id);
                if (cand.nodes.size() <= e.nodes.size()) continue;
                if (std::includes(cand.nodes.begin(), cand.nodes.end(),
                                  e.nodes.begin(), e.nodes.end()))
                    out.emplace_back(e.id, cand_id);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // --- accessors ----------------------------------------------------------

    const std::vector<Hyperedge>& edges() const { return edges_; }

    std::size_t edge_count() const { return edges_.size(); }

    std::size_t node_count() const { return index_.size(); }

    bool empty() const { return edges_.empty(); }

    bool has_node(const NodeLabel& v) const { return index_.count(v) != 0; }

    const Hyperedge* find_edge(EdgeId id) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                                   [](const Hyperedge& e, EdgeId x) { return e.id < x; });
        if (it == edges_.end() || it->id != id) return nullptr;
        return &*it;
    }

    const Hyperedge& edge(EdgeId id) const {
        const Hyperedge* e = find_edge(id);
        if (!e) throw NotFoundError("unknown edge id: " + std::to_string(id));
        return *e;
    }

    // Position of an edge in the id-sorted edge vector. Ids are contiguous
    // unless merges removed edges, so the common case is a direct index.
    std::size_t edge_position(EdgeId id) const {
        if (!edges_.empty() && edges_.back().id == edges_.size() - 1)
            return static_cast<std::size_t>(id); // contiguous 0..E-1
        auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                                   [](const Hyperedge& e, EdgeId x) { return e.id < x; });
        return static_cast<std::size_t>(it - edges_.begin());
    }

    // Posting list of edge ids containing the node, ascending.
    const std::vector<EdgeId>& edges_of(const NodeLabel& v) const { return posting(v); }

    const std::vector<ProvenanceTriple>& provenance() const { return provenance_; }

    std::vector<const ProvenanceTriple*> provenance_of(EdgeId id) const {
        std::vector<const ProvenanceTriple*> rows;
        auto it = provenance_by_edge_.find(id);
        if (it == provenance_by_edge_.end()) return rows;
        rows.reserve(it->second.size());
        for (std::size_t i : it->second) rows.push_back(&provenance_[i]);
        return rows;
    }

    std::vector<NodeLabel> node_labels() const {
        std::vector<NodeLabel> out;
        out.reserve(index_.size());
        for (const auto& [v, _] : index_) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::unordered_map<NodeLabel, std::vector<EdgeId>>& inverted_index() const {
        return index_;
    }

    // Opaque unioned chunk annotations per node (in-memory only).
    const std::set<std::string>& node_text(const NodeLabel& v) const {
        auto it = node_text_.find(v);
        if (it == node_text_.end()) throw NotFoundError("unknown node: " + v);
        return it->second;
    }

    const std::unordered_map<NodeLabel, std::set<std::string>>& node_text_map() const {
        return node_text_;
    }

    EdgeId next_edge_id() const { return next_edge_id_; }

private:
    const std::vector<EdgeId>& posting(const NodeLabel& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw NotFoundError("unknown node: " + v);
        return it->second;
    }

    std::vector<Hyperedge> edges_; // ascending id
    std::vector<ProvenanceTriple> provenance_;
    std::unordered_map<EdgeId, std::vector<std::size_t>> provenance_by_edge_;
    std::unordered_map<NodeLabel, std::vector<EdgeId>> index_;
    std::unordered_map<NodeLabel, std::set<std::string>> node_text_;
    EdgeId next_edge_id_ = 0;
};

} // namespace hyperkg
