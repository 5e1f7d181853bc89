#pragma once
// Corpus-level structural analyses: summary statistics, degree
// distributions with power-law fits, pair co-occurrence enumeration,
// hub ego-network reports, rich-club coefficients, s-connected
// components over hyperedges, and per-node structural signatures.
//
// Everything is read-only over an immutable graph; candidate generation
// always goes through the inverted index, never a full |E|^2 sweep.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"
#include "hyperkg/union_find.hpp"

namespace hyperkg {

namespace detail {

// Dense interning of node labels for packed pair keys.
struct NodeIds {
    std::vector<NodeLabel> labels; // sorted; id = index
    std::unordered_map<NodeLabel, std::uint32_t> ids;

    explicit NodeIds(const Hypergraph& g) : labels(g.node_labels()) {
        ids.reserve(labels.size());
        for (std::uint32_t i = 0; i < labels.size(); ++i) ids[labels[i]] = i;
    }

    std::uint32_t id(const NodeLabel& v) const { return ids.at(v); }
};

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace detail

inline constexpr std::uint64_t kDefaultPairBudget = 20'000'000;

// Streams every unordered node pair co-appearing in >= min_overlap
// hyperedges (duplicate edges counted) to `fn(label_a, label_b, count)` in
// ascending (a, b) order. Above `pair_budget` distinct-pair estimate the
// enumeration shards the pair space and makes one pass per shard, bounding
// peak memory at roughly budget-many counters.
template <class Fn>
void for_each_cooccurring_pair(const Hypergraph& g, std::uint64_t min_overlap, Fn&& fn,
                               std::uint64_t pair_budget = kDefaultPairBudget) {
    if (min_overlap < 1) throw DataError("min_overlap must be >= 1");
    if (g.empty()) return;
    detail::NodeIds ids(g);

    std::uint64_t estimate = 0;
    for (const auto& e : g.edges()) {
        std::uint64_t n = e.nodes.size();
        estimate += n * (n - 1) / 2;
    }
    std::uint64_t shards = pair_budget == 0 ? 1 : (estimate + pair_budget - 1) / pair_budget;
    if (shards == 0) shards = 1;

    std::vector<std::vector<std::uint32_t>> edge_ids;
    edge_ids.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        std::vector<std::uint32_t> members;
        members.reserve(e.nodes.size());
        for (const auto& v : e.nodes) members.push_back(ids.id(v));
        edge_ids.push_back(std::move(members));
    }

    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        std::unordered_map<std::uint64_t, std::uint64_t> counts;
        if (shards == 1) counts.reserve(std::min<std::uint64_t>(estimate, 1u << 22));
        for (const auto& members : edge_ids) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    std::uint64_t key = detail::pack_pair(members[i], members[j]);
                    if (shards > 1 && key % shards != shard) continue;
                    ++counts[key];
                }
            }
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> hits;
        hits.reserve(counts.size());
        for (const auto& [key, count] : counts)
            if (count >= min_overlap) hits.emplace_back(key, count);
        std::sort(hits.begin(), hits.end());
        for (const auto& [key, count] : hits)
            fn(ids.labels[key >> 32], ids.labels[key & 0xffffffffu], count);
    }
}

inline std::uint64_t co_occurrence_count(const Hypergraph& g, std::uint64_t min_overlap,
                                         std::uint64_t pair_budget = kDefaultPairBudget) {
    std::uint64_t n = 0;
    for_each_cooccurring_pair(
        g, min_overlap,
        [&](const NodeLabel&, const NodeLabel&, std::uint64_t) { ++n; }, pair_budget);
    return n;
}

struct GraphStats {
    std::uint64_t node_count = 0;
    std::uint64_t edge_count = 0;
    double avg_edge_size = 0.0;
    std::uint64_t max_edge_size = 0;
    double avg_node_degree = 0.0;
    std::uint64_t max_node_degree = 0;
    std::uint64_t max_pairwise_edge_intersection = 0;
    std::uint64_t duplicate_surplus = 0;
    std::map<std::uint64_t, std::uint64_t> overlap_pair_counts; // threshold -> pairs
};

// Largest |e ∩ e'| over distinct edge pairs, via per-edge candidate counting
// against the inverted index.
inline std::uint64_t max_edge_intersection(const Hypergraph& g) {
    std::uint64_t best = 0;
    std::unordered_map<EdgeId, std::uint32_t> shared;
    for (const auto& e : g.edges()) {
        shared.clear();
        for (const auto& v : e.nodes)
            for (EdgeId other : g.edges_of(v))
                if (other > e.id) ++shared[other];
        for (const auto& [_, count] : shared)
            best = std::max<std::uint64_t>(best, count);
    }
    return best;
}

inline GraphStats summary_stats(const Hypergraph& g,
                                std::uint64_t pair_budget = kDefaultPairBudget) {
    if (g.empty()) throw DataError("summary_stats on an empty graph");
    GraphStats s;
    s.node_count = g.node_count();
    s.edge_count = g.edge_count();
    std::uint64_t membership = 0;
    for (const auto& e : g.edges()) {
        membership += e.nodes.size();
        s.max_edge_size = std::max<std::uint64_t>(s.max_edge_size, e.nodes.size());
    }
    s.avg_edge_size = static_cast<double>(membership) / static_cast<double>(s.edge_count);
    s.avg_node_degree = static_cast<double>(membership) / static_cast<double>(s.node_count);
    for (const auto& [_, posting] : g.inverted_index())
        s.max_node_degree = std::max<std::uint64_t>(s.max_node_degree, posting.size());
    s.duplicate_surplus = g.duplicate_edge_groups().surplus;
    s.max_pairwise_edge_intersection = max_edge_intersection(g);
    std::uint64_t ge1 = 0, ge2 = 0, ge3 = 0;
    for_each_cooccurring_pair(
        g, 1,
        [&](const NodeLabel&, const NodeLabel&, std::uint64_t c) {
            ++ge1;
            if (c >= 2) ++ge2;
            if (c >= 3) ++ge3;
        },
        pair_budget);
    s.overlap_pair_counts = {{1, ge1}, {2, ge2}, {3, ge3}};
    return s;
}

struct DegreeDistribution {
    std::map<std::uint64_t, std::uint64_t> histogram; // degree -> node count
    std::map<std::uint64_t, double> ccdf;             // degree -> P(deg >= d)
};

inline DegreeDistribution degree_distribution(const Hypergraph& g) {
    if (g.empty()) throw DataError("degree_distribution on an empty graph");
    DegreeDistribution d;
    for (const auto& [_, posting] : g.inverted_index()) ++d.histogram[posting.size()];
    const double total = static_cast<double>(g.node_count());
    std::uint64_t at_least = g.node_count();
    for (const auto& [degree, count] : d.histogram) {
        d.ccdf[degree] = static_cast<double>(at_least) / total;
        at_least -= count;
    }
    return d;
}

struct PowerLawFit {
    double slope_magnitude = 0.0;
    double r_squared = 0.0;
    std::size_t points_used = 0;
};

// Ordinary least squares on (log10 degree, log10 frequency) over the raw
// histogram; no binning, no xmin search.
inline PowerLawFit powerlaw_fit(const std::map<std::uint64_t, std::uint64_t>& histogram) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [degree, freq] : histogram) {
        if (degree == 0 || freq == 0) continue;
        pts.emplace_back(std::log10(static_cast<double>(degree)),
                         std::log10(static_cast<double>(freq)));
    }
    if (pts.size() < 3)
        throw DataError("powerlaw_fit needs at least 3 distinct degrees");
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw DataError("powerlaw_fit: degenerate degree axis");
    const double slope = sxy / sxx;
    double ss_res = 0;
    for (const auto& [x, y] : pts) {
        double r = y - (my + slope * (x - mx));
        ss_res += r * r;
    }
    PowerLawFit fit;
    fit.slope_magnitude = std::abs(slope);
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    fit.points_used = pts.size();
    return fit;
}

struct HubRow {
    NodeLabel label;
    std::uint64_t degree = 0;
    double pct_of_edges = 0.0; // degree / |E| of the analyzed snapshot
    std::uint64_t unique_neighbors = 0;
    double neighbor_density = 0.0;
    std::vector<std::pair<NodeLabel, std::uint64_t>> top_cooccurring;
};

struct HubReport {
    std::vector<HubRow> rows; // degree descending
    bool clipped = false;     // top_n exceeded |V|
};

// Nodes ranked by degree (ties: label ascending). Neighbor density is the
// pair density of the co-occurrence graph induced on the open neighborhood,
// ego excluded: 2*E_nb / (n_nb*(n_nb-1)).
inline HubReport hub_report(const Hypergraph& g, std::size_t top_n,
                            std::size_t cooccur_top_k = 3) {
    if (top_n < 1) throw DataError("hub_report needs top_n >= 1");
    if (g.empty()) throw DataError("hub_report on an empty graph");
    HubReport report;
    std::vector<std::pair<std::uint64_t, NodeLabel>> ranked;
    ranked.reserve(g.node_count());
    for (const auto& [v, posting] : g.inverted_index())
        ranked.emplace_back(posting.size(), v);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (top_n > ranked.size()) {
        report.clipped = true;
        top_n = ranked.size();
    }

    for (std::size_t i = 0; i < top_n; ++i) {
        const NodeLabel& hub = ranked[i].second;
        HubRow row;
        row.label = hub;
        row.degree = ranked[i].first;
        row.pct_of_edges = static_cast<double>(row.degree) /
                           static_cast<double>(g.edge_count());

        std::map<NodeLabel, std::uint64_t> cooc; // neighbor -> shared edge count
        for (EdgeId eid : g.edges_of(hub))
            for (const auto& u : g.edge(eid).nodes)
                if (u != hub) ++cooc[u];
        row.unique_neighbors = cooc.size();

        std::vector<std::pair<NodeLabel, std::uint64_t>> top(cooc.begin(), cooc.end());
        std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        if (top.size() > cooccur_top_k) top.resize(cooccur_top_k);
        row.top_cooccurring = std::move(top);

        if (cooc.size() >= 2) {
            std::unordered_set<NodeLabel> nbr;
            nbr.reserve(cooc.size());
            for (const auto& [u, _] : cooc) nbr.insert(u);
            std::set<std::pair<NodeLabel, NodeLabel>> linked;
            for (const auto& [u, _] : cooc) {
                for (EdgeId eid : g.edges_of(u)) {
                    for (const auto& w : g.edge(eid).nodes) {
                        if (w <= u || w == hub) continue;
                        if (nbr.count(w)) linked.emplace(u, w);
                    }
                }
            }
            const double n = static_cast<double>(cooc.size());
            row.neighbor_density = 2.0 * static_cast<double>(linked.size()) / (n * (n - 1));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

// Per hub: total co-occurrences with the other hubs (duplicates counted).
inline std::map<NodeLabel, std::uint64_t> hub_integration(
    const Hypergraph& g, const std::vector<NodeLabel>& hub_set) {
    auto hubs = sorted_unique(hub_set);
    if (hubs.size() < 2) throw DataError("hub_integration needs >= 2 hubs");
    std::unordered_set<NodeLabel> hub_lookup(hubs.begin(), hubs.end());
    std::map<NodeLabel, std::uint64_t> scores;
    for (const auto& h : hubs) {
        std::uint64_t total = 0;
        for (EdgeId eid : g.edges_of(h)) // throws NotFoundError for unknown hubs
            for (const auto& u : g.edge(eid).nodes)
                if (u != h && hub_lookup.count(u)) ++total;
        scores[h] = total;
    }
    return scores;
}

struct RichClubResult {
    std::uint64_t degree_threshold = 0;
    std::uint64_t hub_count = 0;      // N_k
    std::uint64_t hub_edge_count = 0; // unordered hub pairs with >= 1 co-occurrence
    double coefficient = 0.0;         // 2*E_k / (N_k*(N_k-1)); 0 when N_k < 2
};

inline double rich_club_coefficient(std::uint64_t hub_count, std::uint64_t hub_edge_count) {
    if (hub_count < 2) return 0.0;
    return 2.0 * static_cast<double>(hub_edge_count) /
           (static_cast<double>(hub_count) * static_cast<double>(hub_count - 1));
}

inline RichClubResult rich_club(const Hypergraph& g, std::uint64_t degree_threshold) {
    if (degree_threshold < 1) throw DataError("rich_club threshold must be >= 1");
    RichClubResult r;
    r.degree_threshold = degree_threshold;
    if (g.empty()) return r;
    detail::NodeIds ids(g);
    std::vector<bool> is_hub(ids.labels.size(), false);
    for (std::uint32_t i = 0; i < ids.labels.size(); ++i)
        if (g.degree(ids.labels[i]) >= degree_threshold) {
            is_hub[i] = true;
            ++r.hub_count;
        }
    std::unordered_set<std::uint64_t> linked;
    std::vector<std::uint32_t> hub_members;
    for (const auto& e : g.edges()) {
        hub_members.clear();
        for (const auto& v : e.nodes) {
            std::uint32_t id = ids.id(v);
            if (is_hub[id]) hub_members.push_back(id);
        }
        for (std::size_t i = 0; i < hub_members.size(); ++i)
            for (std::size_t j = i + 1; j < hub_members.size(); ++j)
                linked.insert(detail::pack_pair(hub_members[i], hub_members[j]));
    }
    r.hub_edge_count = linked.size();
    r.coefficient = rich_club_coefficient(r.hub_count, r.hub_edge_count);
    return r;
}

struct SComponentReport {
    std::uint64_t s = 0;
    std::uint64_t component_count = 0;
    std::vector<std::uint64_t> component_sizes; // in hyperedges, descending
};

namespace detail {

// Union-find over hyperedges, uniting edges whose pairwise intersection has
// at least s nodes. Candidates come from shared posting lists; s = 1 unites
// whole posting lists directly.
inline UnionFind s_union_find(const Hypergraph& g, std::uint64_t s) {
    const auto& edges = g.edges();
    std::unordered_map<EdgeId, std::size_t> position;
    position.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) position[edges[i].id] = i;

    UnionFind uf(edges.size());
    if (s == 1) {
        for (const auto& [_, posting] : g.inverted_index())
            for (std::size_t k = 1; k < posting.size(); ++k)
                uf.unite(position[posting[0]], position[posting[k]]);
    } else {
        std::unordered_map<EdgeId, std::uint32_t> shared;
        for (const auto& e : edges) {
            shared.clear();
            for (const auto& v : e.nodes)
                for (EdgeId other : g.edges_of(v))
                    if (other > e.id) ++shared[other];
            for (const auto& [other, count] : shared)
                if (count >= s) uf.unite(position[e.id], position[other]);
        }
    }
    return uf;
}

} // namespace detail

inline SComponentReport s_components(const Hypergraph& g, std::uint64_t s) {
    if (s < 1) throw DataError("s_components needs s >= 1");
    SComponentReport report;
    report.s = s;
    if (g.empty()) return report;

    UnionFind uf = detail::s_union_find(g, s);
    std::unordered_map<std::size_t, std::uint64_t> sizes;
    for (std::size_t i = 0; i < g.edge_count(); ++i) ++sizes[uf.find(i)];
    report.component_count = sizes.size();
    report.component_sizes.reserve(sizes.size());
    for (const auto& [_, size] : sizes) report.component_sizes.push_back(size);
    std::sort(report.component_sizes.rbegin(), report.component_sizes.rend());
    return report;
}

// Component membership as sorted edge-id lists, largest first (ties: by
// first edge id), for refinement checks and downstream grouping.
inline std::vector<std::vector<EdgeId>> s_component_partition(const Hypergraph& g,
                                                              std::uint64_t s) {
    if (s < 1) throw DataError("s_components needs s >= 1");
    if (g.empty()) return {};
    UnionFind uf = detail::s_union_find(g, s);
    std::map<std::size_t, std::vector<EdgeId>> by_root;
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        by_root[uf.find(i)].push_back(edges[i].id);
    std::vector<std::vector<EdgeId>> out;
    for (auto& [_, members] : by_root) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
    });
    return out;
}

struct SignatureRow {
    NodeLabel label;
    std::uint64_t degree = 0;
    std::uint64_t unique_neighbors = 0;
    double avg_edge_size = 0.0; // mean size of incident hyperedges
};

struct StructuralSignatures {
    std::vector<SignatureRow> rows;                  // label ascending
    std::vector<std::array<double, 3>> standardized; // z-scores, parallel to rows
    std::array<bool, 3> zero_variance = {false, false, false};
};

// Per-node (degree, unique neighbors, average incident edge size), plus the
// population z-score standardization used for external projection.
inline StructuralSignatures structural_signatures(const Hypergraph& g) {
    if (g.empty()) throw DataError("structural_signatures on an empty graph");
    StructuralSignatures sig;
    for (const auto& v : g.node_labels()) {
        SignatureRow row;
        row.label = v;
        const auto& posting = g.edges_of(v);
        row.degree = posting.size();
        std::unordered_set<NodeLabel> nbrs;
        std::uint64_t membership = 0;
        for (EdgeId eid : posting) {
            const auto& e = g.edge(eid);
            membership += e.nodes.size();
            for (const auto& u : e.nodes)
                if (u != v) nbrs.insert(u);
        }
        row.unique_neighbors = nbrs.size();
        row.avg_edge_size = static_cast<double>(membership) /
                            static_cast<double>(posting.size());
        sig.rows.push_back(std::move(row));
    }

    const std::size_t n = sig.rows.size();
    std::array<double, 3> mean{}, var{};
    auto feature = [](const SignatureRow& r, std::size_t c) {
        return c == 0   ? static_cast<double>(r.degree)
               : c == 1 ? static_cast<double>(r.unique_neighbors)
                        : r.avg_edge_size;
    };
    for (std::size_t c = 0; c < 3; ++c) {
        for (const auto& r : sig.rows) mean[c] += feature(r, c);
        mean[c] /= static_cast<double>(n);
        for (const auto& r : sig.rows) {
            double d = feature(r, c) - mean[c];
            var[c] += d * d;
        }
        var[c] /= static_cast<double>(n); // population variance
        if (var[c] == 0.0) sig.zero_variance[c] = true;
    }
    sig.standardized.reserve(n);
    for (const auto& r : sig.rows) {
        std::array<double, 3> z{};
        for (std::size_t c = 0; c < 3; ++c)
            z[c] = sig.zero_variance[c] ? 0.0
                                        : (feature(r, c) - mean[c]) / std::sqrt(var[c]);
        sig.standardized.push_back(z);
    }
    return sig;
}

} // namespace hyperkg
