#pragma once
// GraphAgent tooling: keyword -> node matching by embedding distance,
// breadth-first search directly over hyperedges under a node-intersection
// constraint, enumeration of the K equally-shortest hyperedge paths, and
// provenance-grounded statement reconstruction.
//
// Traversal is undirected: a transition e -> e' is allowed iff
// |e ∩ e'| >= S. BFS is seeded with every edge containing the start node
// and path length counts hyperedges, so a single edge containing both
// endpoints is a length-1 path. All minimal-length paths are recovered;
// ordering is lexicographic over edge-id sequences and the result is
// truncated to K.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hyperkg/embedding.hpp"
#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"

namespace hyperkg {

struct HyperPath {
    std::vector<EdgeId> edges;
    std::vector<std::vector<NodeLabel>> intersections; // per adjacent pair, sorted
    NodeLabel start;
    NodeLabel end;

    std::size_t length() const { return edges.size(); }
};

struct PathQuery {
    NodeLabel start;
    NodeLabel end;
    std::uint64_t min_intersection = 1; // S
    std::uint64_t max_paths = 1;        // K
    bool allow_longer = false;          // keep searching deeper tiers up to K paths
};

enum class PathNotice { none, same_node, unreachable };

struct PathResult {
    std::vector<HyperPath> paths;
    std::optional<std::uint64_t> minimal_length;
    bool truncated = false;
    PathNotice notice = PathNotice::none;
};

struct KeywordMatch {
    std::string keyword;
    NodeLabel node;      // best candidate (empty if store is empty)
    double distance = 0; // cosine distance, [0, 2]
    bool matched = false;
};

// Embeds each keyword and matches it to the nearest node label by cosine
// distance; matches above the threshold are flagged unmatched.
inline std::vector<KeywordMatch> match_keywords(const EmbeddingStore& store,
                                                EmbeddingProvider& provider,
                                                const std::vector<std::string>& keywords,
                                                double distance_threshold) {
    if (store.size() == 0) throw DataError("match_keywords: embedding store is empty");
    for (const auto& k : keywords)
        if (trim_copy(k).empty()) throw DataError("match_keywords: empty keyword");
    EmbedResult embedded = provider.embed(keywords);
    if (embedded.vectors.size() != keywords.size())
        throw ProviderError("provider returned wrong number of vectors");
    const auto labels = store.labels();
    std::vector<KeywordMatch> out;
    out.reserve(keywords.size());
    for (std::size_t i = 0; i < keywords.size(); ++i) {
        KeywordMatch m;
        m.keyword = keywords[i];
        double best = 4.0;
        for (const auto& label : labels) {
            double d = cosine_distance(embedded.vectors[i], store.get(label));
            if (d < best || (d == best && label < m.node)) {
                best = d;
                m.node = label;
            }
        }
        m.distance = best;
        m.matched = best <= distance_threshold;
        out.push_back(std::move(m));
    }
    return out;
}

namespace detail {

// Per-query BFS state over hyperedges. Everything is indexed by edge
// POSITION in the id-sorted edge vector (dense, so depths live in flat
// arrays); positions are ascending in edge id, which keeps every sorted
// position sequence lexicographic in ids.
struct EdgeBfs {
    const Hypergraph& graph;
    const NodeLabel& end;
    std::uint64_t s;
    std::vector<std::uint32_t> depth; // per position; 0 = unvisited
    std::uint32_t found_depth = 0;    // 0 = end not reached

    EdgeBfs(const Hypergraph& g, const NodeLabel& end_node, std::uint64_t min_intersection)
        : graph(g), end(end_node), s(min_intersection), depth(g.edge_count(), 0) {}

    const Hyperedge& at(std::uint32_t pos) const { return graph.edges()[pos]; }

    std::uint32_t position(EdgeId id) const {
        return static_cast<std::uint32_t>(graph.edge_position(id));
    }

    bool contains_end(std::uint32_t pos) const { return at(pos).contains(end); }

    // Level-synchronous BFS from the seed edges. For s == 1 each node's
    // posting list is expanded at most once (a node shared with any visited
    // edge reaches everything in its list); for s >= 2 each frontier edge
    // counts shared nodes per candidate. With stop_at_end the search halts
    // after the level where the end node first appears (that level is still
    // discovered completely); otherwise it explores up to max_depth levels.
    void run(const std::vector<EdgeId>& seeds, bool stop_at_end = true,
             std::uint32_t max_depth = 0) {
        std::vector<std::uint32_t> frontier;
        frontier.reserve(seeds.size());
        for (EdgeId id : seeds) {
            std::uint32_t pos = position(id);
            depth[pos] = 1;
            frontier.push_back(pos);
            if (found_depth == 0 && contains_end(pos)) found_depth = 1;
        }
        if (stop_at_end && found_depth != 0) return;

        // Nodes are marked exhausted by the address of their posting list,
        // which is stable for the lifetime of the query.
        std::unordered_set<const void*> exhausted;
        std::unordered_map<std::uint32_t, std::uint32_t> shared;
        std::uint32_t level = 1;
        while (!frontier.empty() && (max_depth == 0 || level < max_depth)) {
            std::vector<std::uint32_t> next;
            for (std::uint32_t pos : frontier) {
                const Hyperedge& e = at(pos);
                if (s == 1) {
                    for (const auto& v : e.nodes) {
                        const auto& posting = graph.edges_of(v);
                        if (!exhausted.insert(&posting).second) continue;
                        for (EdgeId other : posting) {
                            std::uint32_t opos = position(other);
                            if (depth[opos] == 0) {
                                depth[opos] = level + 1;
                                next.push_back(opos);
                            }
                        }
                    }
                } else {
                    shared.clear();
                    for (const auto& v : e.nodes)
                        for (EdgeId other : graph.edges_of(v)) {
                            std::uint32_t opos = position(other);
                            if (opos != pos && depth[opos] == 0) ++shared[opos];
                        }
                    for (const auto& [opos, count] : shared) {
                        if (count < s) continue;
                        if (depth[opos] == 0) {
                            depth[opos] = level + 1;
                            next.push_back(opos);
                        }
                    }
                }
            }
            ++level;
            if (found_depth == 0)
                for (std::uint32_t pos : next)
                    if (contains_end(pos)) {
                        found_depth = level;
                        break;
                    }
            if (stop_at_end && found_depth != 0) return;
            frontier = std::move(next);
        }
    }

    // All s-neighbor positions regardless of depth, ascending.
    std::vector<std::uint32_t> neighbors(std::uint32_t pos) const {
        const Hyperedge& e = at(pos);
        std::vector<std::uint32_t> out;
        if (s == 1) {
            for (const auto& v : e.nodes) {
                const auto& posting = graph.edges_of(v);
                out.reserve(out.size() + posting.size());
                for (EdgeId other : posting) out.push_back(position(other));
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            out.erase(std::remove(out.begin(), out.end(), pos), out.end());
        } else {
            std::unordered_map<std::uint32_t, std::uint32_t> shared;
            for (const auto& v : e.nodes)
                for (EdgeId other : graph.edges_of(v)) {
                    std::uint32_t opos = position(other);
                    if (opos != pos) ++shared[opos];
                }
            for (const auto& [opos, count] : shared)
                if (count >= s) out.push_back(opos);
            std::sort(out.begin(), out.end());
        }
        return out;
    }
};

// Depth-first enumeration of minimal-length paths in lexicographic edge-id
// order, stopping after `limit` paths. Successors are filtered by both the
// forward depth (one deeper) and the backward depth (one shallower), so an
// edge is expanded only when it provably lies on a minimal path: the walk
// never enters a dead end and the work is bounded by limit * d_min
// successor scans.
inline void enumerate_minimal(const EdgeBfs& forward, const EdgeBfs& backward,
                              const std::vector<EdgeId>& seeds, std::uint64_t limit,
                              std::vector<std::vector<std::uint32_t>>& out) {
    const std::uint32_t d_min = forward.found_depth;

    auto on_minimal = [&](std::uint32_t pos, std::uint32_t want_f) {
        return forward.depth[pos] == want_f && backward.depth[pos] != 0 &&
               want_f + backward.depth[pos] == d_min + 1;
    };

    auto successors_of = [&](std::uint32_t pos, std::uint32_t f) {
        std::vector<std::uint32_t> keep;
        for (std::uint32_t other : forward.neighbors(pos))
            if (on_minimal(other, f + 1)) keep.push_back(other);
        return keep;
    };

    struct Frame {
        std::vector<std::uint32_t> succs;
        std::size_t next = 0;
    };

    for (EdgeId seed : seeds) {
        if (out.size() >= limit) return;
        std::uint32_t pos = forward.position(seed);
        if (!on_minimal(pos, 1)) continue;
        if (d_min == 1) {
            out.push_back({pos});
            continue;
        }
        std::vector<Frame> stack;
        stack.push_back(Frame{successors_of(pos, 1)});
        std::vector<std::uint32_t> path{pos};
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (out.size() >= limit) return;
            if (top.next < top.succs.size()) {
                std::uint32_t child = top.succs[top.next++];
                path.push_back(child);
                if (path.size() == d_min) {
                    out.push_back(path);
                    path.pop_back();
                    continue;
                }
                stack.push_back(
                    Frame{successors_of(child, static_cast<std::uint32_t>(path.size()))});
            } else {
                stack.pop_back();
                path.pop_back();
            }
        }
    }
}

// Exact-length simple-path enumeration for the optional longer tiers,
// pruned by the backward distance-to-end.
inline void enumerate_tier(const EdgeBfs& adjacency, const EdgeBfs& backward,
                           const std::vector<EdgeId>& seeds, std::uint32_t tier_length,
                           std::uint64_t limit,
                           std::vector<std::vector<std::uint32_t>>& out) {
    struct Frame {
        std::uint32_t pos;
        std::vector<std::uint32_t> succs;
        std::size_t next = 0;
    };
    // Completing needs a suffix of (tier_length - edges_so_far + 1) edges
    // counting the candidate itself.
    auto feasible = [&](std::uint32_t pos, std::uint32_t edges_so_far) {
        return backward.depth[pos] != 0 &&
               backward.depth[pos] <= tier_length - edges_so_far + 1;
    };
    for (EdgeId seed : seeds) {
        if (out.size() >= limit) return;
        std::uint32_t spos = adjacency.position(seed);
        if (!feasible(spos, 1)) continue;
        if (tier_length == 1) {
            if (adjacency.contains_end(spos)) out.push_back({spos});
            continue;
        }
        std::vector<Frame> stack;
        std::unordered_set<std::uint32_t> on_path{spos};
        std::vector<std::uint32_t> path{spos};
        stack.push_back(Frame{spos, adjacency.neighbors(spos)});
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (out.size() >= limit) return;
            if (top.next < top.succs.size()) {
                std::uint32_t child = top.succs[top.next++];
                if (on_path.count(child)) continue;
                const auto len = static_cast<std::uint32_t>(path.size()) + 1;
                if (!feasible(child, len)) continue;
                if (len == tier_length) {
                    if (adjacency.contains_end(child)) {
                        path.push_back(child);
                        out.push_back(path);
                        path.pop_back();
                    }
                    continue;
                }
                path.push_back(child);
                on_path.insert(child);
                stack.push_back(Frame{child, adjacency.neighbors(child)});
            } else {
                on_path.erase(top.pos);
                stack.pop_back();
                path.pop_back();
            }
        }
    }
}

} // namespace detail

inline constexpr std::uint32_t kMaxExtraTiers = 8;

inline PathResult shortest_hyperpaths(const Hypergraph& g, const PathQuery& query) {
    if (query.min_intersection < 1) throw DataError("min_intersection must be >= 1");
    if (query.max_paths < 1) throw DataError("max_paths must be >= 1");
    if (!g.has_node(query.start)) throw NotFoundError("unknown node: " + query.start);
    if (!g.has_node(query.end)) throw NotFoundError("unknown node: " + query.end);

    PathResult result;
    if (query.start == query.end) {
        result.notice = PathNotice::same_node;
        return result;
    }

    const std::vector<EdgeId>& seeds = g.edges_of(query.start); // ascending
    detail::EdgeBfs bfs(g, query.end, query.min_intersection);
    bfs.run(seeds);
    if (bfs.found_depth == 0) {
        result.notice = PathNotice::unreachable;
        return result;
    }
    result.minimal_length = bfs.found_depth;

    // Backward depths from the end edges prune the enumeration; levels past
    // the deepest tier we may enumerate are never needed.
    const std::uint32_t deepest = static_cast<std::uint32_t>(bfs.found_depth) +
                                  (query.allow_longer ? kMaxExtraTiers : 0);
    detail::EdgeBfs backward(g, query.start, query.min_intersection);
    backward.run(g.edges_of(query.end), false, deepest);

    // Enumerate one past K so truncation is reported without enumerating
    // every minimal path.
    const std::uint64_t limit = query.max_paths + 1;
    std::vector<std::vector<std::uint32_t>> sequences;
    detail::enumerate_minimal(bfs, backward, seeds, limit, sequences);

    if (query.allow_longer && sequences.size() < limit) {
        std::uint32_t tier = bfs.found_depth;
        while (sequences.size() < limit && ++tier <= bfs.found_depth + kMaxExtraTiers) {
            detail::enumerate_tier(bfs, backward, seeds, tier, limit, sequences);
        }
    }

    if (sequences.size() > query.max_paths) {
        result.truncated = true;
        sequences.resize(query.max_paths);
    }

    const auto& edges = g.edges();
    for (auto& seq : sequences) {
        HyperPath path;
        path.start = query.start;
        path.end = query.end;
        path.edges.reserve(seq.size());
        for (std::uint32_t pos : seq) path.edges.push_back(edges[pos].id);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            const auto& a = edges[seq[i]].nodes;
            const auto& b = edges[seq[i + 1]].nodes;
            std::vector<NodeLabel> shared;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(shared));
            path.intersections.push_back(std::move(shared));
        }
        result.paths.push_back(std::move(path));
    }
    return result;
}

// Union of the hyperedges on the returned paths, with full memberships and
// provenance, as a sub-hypergraph.
inline Hypergraph induced_path_subgraph(const Hypergraph& g,
                                        const std::vector<HyperPath>& paths) {
    std::set<EdgeId> wanted;
    for (const auto& p : paths) wanted.insert(p.edges.begin(), p.edges.end());
    std::vector<Hyperedge> edges;
    std::vector<ProvenanceTriple> rows;
    for (EdgeId id : wanted) {
        edges.push_back(g.edge(id));
        for (const auto* p : g.provenance_of(id)) rows.push_back(*p);
    }
    return Hypergraph::from_parts(std::move(edges), std::move(rows), g.next_edge_id());
}

namespace detail {

inline std::string join_labels(const std::vector<NodeLabel>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ", ";
        out += labels[i];
    }
    return out;
}

} // namespace detail

// One directional sentence per provenance row: "source <relation> target."
inline std::vector<std::string> reconstruct_statements(const Hypergraph& g,
                                                       const std::vector<EdgeId>& edges) {
    std::vector<std::string> out;
    for (EdgeId id : edges) {
        auto rows = g.provenance_of(id);
        if (rows.empty())
            throw DataError("edge " + std::to_string(id) + " has no provenance");
        for (const auto* p : rows)
            out.push_back(detail::join_labels(p->source) + " " + p->relation + " " +
                          detail::join_labels(p->target) + ".");
    }
    return out;
}

inline std::vector<std::string> reconstruct_statements(const Hypergraph& g,
                                                       const HyperPath& path) {
    return reconstruct_statements(g, path.edges);
}

inline std::vector<std::string> reconstruct_statements(const Hypergraph& g,
                                                       const Hypergraph& subgraph) {
    std::vector<EdgeId> ids;
    ids.reserve(subgraph.edge_count());
    for (const auto& e : subgraph.edges()) ids.push_back(e.id);
    return reconstruct_statements(g, ids);
}

} // namespace hyperkg
