#pragma once
// Dyadic projections of a hypergraph (clique, star, collapsed, cyclic
// implicit, chain implicit) and the pairwise reasoning primitives defined
// on the projected graphs (shortest distance, h-hop neighborhood, entity
// path). Node ordering for the implicit projections is lexicographic so
// results depend only on labels, never on insertion order.

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"

namespace hyperkg {

enum class PairNodeKind { entity, edge_node };

using NodePair = std::pair<std::string, std::string>; // first < second

inline NodePair make_pair_key(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

class PairwiseGraph {
public:
    // Self-loop pairs are rejected; repeated insertion accumulates weight.
    void add_pair(const std::string& a, const std::string& b, std::uint64_t weight = 1) {
        if (a == b) throw DataError("pairwise graph does not allow self-loops");
        add_node(a);
        add_node(b);
        edges_[make_pair_key(a, b)] += weight;
    }

    void add_node(const std::string& v, PairNodeKind kind = PairNodeKind::entity) {
        auto [it, inserted] = kinds_.emplace(v, kind);
        if (!inserted && kind == PairNodeKind::edge_node) it->second = kind;
    }

    void set_pair_label(const std::string& a, const std::string& b, std::string label) {
        labels_[make_pair_key(a, b)] = std::move(label);
    }

    bool has_node(const std::string& v) const { return kinds_.count(v) != 0; }

    bool has_pair(const std::string& a, const std::string& b) const {
        return edges_.count(make_pair_key(a, b)) != 0;
    }

    std::uint64_t weight(const std::string& a, const std::string& b) const {
        auto it = edges_.find(make_pair_key(a, b));
        return it == edges_.end() ? 0 : it->second;
    }

    std::optional<std::string> pair_label(const std::string& a, const std::string& b) const {
        auto it = labels_.find(make_pair_key(a, b));
        if (it == labels_.end()) return std::nullopt;
        return it->second;
    }

    PairNodeKind kind(const std::string& v) const {
        auto it = kinds_.find(v);
        if (it == kinds_.end()) throw NotFoundError("unknown node: " + v);
        return it->second;
    }

    std::size_t node_count() const { return kinds_.size(); }

    std::size_t pair_count() const { return edges_.size(); }

    std::uint64_t total_weight() const {
        std::uint64_t sum = 0;
        for (const auto& [_, w] : edges_) sum += w;
        return sum;
    }

    const std::map<NodePair, std::uint64_t>& pairs() const { return edges_; }

    std::vector<std::string> nodes() const {
        std::vector<std::string> out;
        out.reserve(kinds_.size());
        for (const auto& [v, _] : kinds_) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Neighbor lists, sorted, built once on demand.
    const std::vector<std::string>& neighbors(const std::string& v) const {
        ensure_adjacency();
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) {
            if (!has_node(v)) throw NotFoundError("unknown node: " + v);
            static const std::vector<std::string> none;
            return none;
        }
        return it->second;
    }

    std::size_t degree(const std::string& v) const { return neighbors(v).size(); }

    // Edge-list export: "a<TAB>b<TAB>weight" lines, bytewise sorted.
    void write_edge_list(std::ostream& out) const {
        for (const auto& [pair, w] : edges_)
            out << pair.first << '\t' << pair.second << '\t' << w << '\n';
    }

    std::string edge_list_string() const {
        std::ostringstream os;
        write_edge_list(os);
        return os.str();
    }

private:
    void ensure_adjacency() const {
        if (adjacency_built_) return;
        adjacency_.clear();
        for (const auto& [pair, _] : edges_) {
            adjacency_[pair.first].push_back(pair.second);
            adjacency_[pair.second].push_back(pair.first);
        }
        for (auto& [_, nbrs] : adjacency_) std::sort(nbrs.begin(), nbrs.end());
        adjacency_built_ = true;
    }

    std::map<NodePair, std::uint64_t> edges_;
    std::map<NodePair, std::string> labels_;
    std::unordered_map<std::string, PairNodeKind> kinds_;
    mutable std::unordered_map<std::string, std::vector<std::string>> adjacency_;
    mutable bool adjacency_built_ = false;
};

inline const std::string kEdgeNodePrefix = "edge:";

// Every hyperedge becomes a complete graph over its nodes; pair weight is
// the number of hyperedges containing the pair.
inline PairwiseGraph clique_expand(const Hypergraph& g) {
    PairwiseGraph out;
    for (const auto& e : g.edges())
        for (std::size_t i = 0; i < e.nodes.size(); ++i)
            for (std::size_t j = i + 1; j < e.nodes.size(); ++j)
                out.add_pair(e.nodes[i], e.nodes[j]);
    return out;
}

// Bipartite incidence graph: hyperedges become "edge:<id>" nodes, one pair
// per (node, edge) membership, exactly sum(|e|) pairs in total.
inline PairwiseGraph star_expand(const Hypergraph& g) {
    PairwiseGraph out;
    for (const auto& e : g.edges()) {
        std::string edge_node = kEdgeNodePrefix + std::to_string(e.id);
        out.add_node(edge_node, PairNodeKind::edge_node);
        for (const auto& v : e.nodes) out.add_pair(v, edge_node);
    }
    return out;
}

inline std::string group_label(std::vector<NodeLabel> members) {
    members = sorted_unique(std::move(members));
    std::string out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ", ";
        out += members[i];
    }
    return out;
}

// One relation-labeled pair per provenance row between two atomic group
// nodes; individual members are not nodes of the result. Group labels are
// the comma-joined sorted member labels so identical groups coincide.
inline PairwiseGraph collapse(const Hypergraph& g) {
    PairwiseGraph out;
    for (const auto& p : g.provenance()) {
        std::string s = group_label(p.source);
        std::string t = group_label(p.target);
        out.add_pair(s, t);
        if (!out.pair_label(s, t)) out.set_pair_label(s, t, p.relation);
    }
    return out;
}

// Ring over each edge's lexicographically ordered nodes; a size-2 edge
// degenerates to a single pair rather than two parallel ones.
inline PairwiseGraph cyclic_implicit(const Hypergraph& g) {
    PairwiseGraph out;
    for (const auto& e : g.edges()) {
        const auto& vs = e.nodes; // already sorted
        if (vs.size() == 2) {
            out.add_pair(vs[0], vs[1]);
            continue;
        }
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) out.add_pair(vs[i], vs[i + 1]);
        out.add_pair(vs.back(), vs.front());
    }
    return out;
}

// Simple path over each edge's lexicographically ordered nodes: n-1 pairs.
inline PairwiseGraph chain_implicit(const Hypergraph& g) {
    PairwiseGraph out;
    for (const auto& e : g.edges())
        for (std::size_t i = 0; i + 1 < e.nodes.size(); ++i)
            out.add_pair(e.nodes[i], e.nodes[i + 1]);
    return out;
}

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Shortest-path hop count; kUnreachable when no path exists.
inline std::size_t pairwise_distance(const PairwiseGraph& g, const std::string& s,
                                     const std::string& t) {
    if (!g.has_node(s)) throw NotFoundError("unknown node: " + s);
    if (!g.has_node(t)) throw NotFoundError("unknown node: " + t);
    if (s == t) return 0;
    std::unordered_map<std::string, std::size_t> dist{{s, 0}};
    std::deque<std::string> queue{s};
    while (!queue.empty()) {
        std::string v = std::move(queue.front());
        queue.pop_front();
        std::size_t d = dist[v];
        for (const auto& w : g.neighbors(v)) {
            if (dist.count(w)) continue;
            if (w == t) return d + 1;
            dist[w] = d + 1;
            queue.push_back(w);
        }
    }
    return kUnreachable;
}

// All nodes within h hops of s, including s itself.
inline std::set<std::string> h_hop_neighborhood(const PairwiseGraph& g,
                                                const std::string& s, std::size_t h) {
    if (!g.has_node(s)) throw NotFoundError("unknown node: " + s);
    std::set<std::string> seen{s};
    std::vector<std::string> frontier{s};
    for (std::size_t hop = 0; hop < h && !frontier.empty(); ++hop) {
        std::vector<std::string> next;
        for (const auto& v : frontier)
            for (const auto& w : g.neighbors(v))
                if (seen.insert(w).second) next.push_back(w);
        frontier = std::move(next);
    }
    return seen;
}

namespace detail {

// Lexicographically smallest shortest node sequence from s to t: walk from s
// choosing the smallest-label neighbor that still decreases the distance to
// t (neighbor lists are sorted, so the first qualifying one wins).
inline std::vector<std::string> lex_shortest_path(const PairwiseGraph& g,
                                                  const std::string& s,
                                                  const std::string& t) {
    std::unordered_map<std::string, std::size_t> dist_to_t{{t, 0}};
    std::deque<std::string> queue{t};
    while (!queue.empty()) {
        std::string v = std::move(queue.front());
        queue.pop_front();
        for (const auto& w : g.neighbors(v)) {
            if (dist_to_t.count(w)) continue;
            dist_to_t[w] = dist_to_t[v] + 1;
            queue.push_back(w);
        }
    }
    auto it = dist_to_t.find(s);
    if (it == dist_to_t.end()) return {};
    std::vector<std::string> path{s};
    std::string current = s;
    std::size_t remaining = it->second;
    while (remaining > 0) {
        for (const auto& w : g.neighbors(current)) {
            auto dit = dist_to_t.find(w);
            if (dit != dist_to_t.end() && dit->second == remaining - 1) {
                path.push_back(w);
                current = w;
                --remaining;
                break;
            }
        }
    }
    return path;
}

} // namespace detail

// Union of one shortest path per consecutive pair of the node list, as a
// set of pairwise edges. Ties break to the lexicographically smallest node
// sequence; any unreachable consecutive pair is an error naming the pair.
inline std::set<NodePair> entity_path(const PairwiseGraph& g,
                                      const std::vector<std::string>& node_list) {
    for (const auto& v : node_list)
        if (!g.has_node(v)) throw NotFoundError("unknown node: " + v);
    std::set<NodePair> out;
    for (std::size_t i = 0; i + 1 < node_list.size(); ++i) {
        const auto& s = node_list[i];
        const auto& t = node_list[i + 1];
        if (s == t) continue;
        auto path = detail::lex_shortest_path(g, s, t);
        if (path.empty())
            throw DataError("no path between consecutive entities: " + s + " and " + t);
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            out.insert(make_pair_key(path[k], path[k + 1]));
    }
    return out;
}

} // namespace hyperkg
