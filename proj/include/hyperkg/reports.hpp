#pragma once
// JSON payload builders shared by the CLI and the HTTP service, so the
// same snapshot always yields byte-identical payloads through either
// surface. Coefficients are rounded to 6 decimal places before emission.

#include <cmath>
#include <string>

#include <json.hpp>

#include "hyperkg/analysis.hpp"
#include "hyperkg/hypergraph.hpp"
#include "hyperkg/snapshot.hpp"
#include "hyperkg/traverse.hpp"

namespace hyperkg {

inline double round6(double x) {
    double y = std::round(x * 1e6) / 1e6;
    return y == 0.0 ? 0.0 : y; // normalize -0
}

inline ordered_json stats_json(const GraphStats& s) {
    ordered_json j;
    j["node_count"] = s.node_count;
    j["edge_count"] = s.edge_count;
    j["avg_edge_size"] = round6(s.avg_edge_size);
    j["max_edge_size"] = s.max_edge_size;
    j["avg_node_degree"] = round6(s.avg_node_degree);
    j["max_node_degree"] = s.max_node_degree;
    j["max_pairwise_edge_intersection"] = s.max_pairwise_edge_intersection;
    j["duplicate_surplus"] = s.duplicate_surplus;
    ordered_json overlaps;
    for (const auto& [threshold, count] : s.overlap_pair_counts)
        overlaps[std::to_string(threshold)] = count;
    j["overlap_pair_counts"] = std::move(overlaps);
    return j;
}

inline ordered_json richclub_json(const RichClubResult& r) {
    ordered_json j;
    j["degree_threshold"] = r.degree_threshold;
    j["hub_count"] = r.hub_count;
    j["hub_edge_count"] = r.hub_edge_count;
    j["coefficient"] = round6(r.coefficient);
    return j;
}

inline ordered_json scomponents_json(const SComponentReport& r) {
    ordered_json j;
    j["s"] = r.s;
    j["component_count"] = r.component_count;
    j["component_sizes"] = r.component_sizes;
    return j;
}

inline ordered_json hubs_json(const HubReport& r) {
    ordered_json j;
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json jr;
        jr["label"] = row.label;
        jr["degree"] = row.degree;
        jr["pct_of_edges"] = round6(row.pct_of_edges);
        jr["unique_neighbors"] = row.unique_neighbors;
        jr["neighbor_density"] = round6(row.neighbor_density);
        auto& top = jr["top_cooccurring"] = ordered_json::array();
        for (const auto& [label, count] : row.top_cooccurring) {
            ordered_json jc;
            jc["label"] = label;
            jc["count"] = count;
            top.push_back(std::move(jc));
        }
        rows.push_back(std::move(jr));
    }
    j["clipped"] = r.clipped;
    return j;
}

inline ordered_json match_json(const std::vector<KeywordMatch>& matches) {
    ordered_json j;
    auto& rows = j["matches"] = ordered_json::array();
    for (const auto& m : matches) {
        ordered_json jm;
        jm["keyword"] = m.keyword;
        if (m.matched)
            jm["node"] = m.node;
        else
            jm["node"] = nullptr;
        jm["distance"] = round6(m.distance);
        jm["matched"] = m.matched;
        rows.push_back(std::move(jm));
    }
    return j;
}

inline ordered_json paths_json(const Hypergraph& g, const PathResult& r) {
    ordered_json j;
    auto& paths = j["paths"] = ordered_json::array();
    for (const auto& p : r.paths) {
        ordered_json jp;
        jp["edges"] = p.edges;
        jp["intersections"] = p.intersections;
        jp["statements"] = reconstruct_statements(g, p);
        paths.push_back(std::move(jp));
    }
    if (r.minimal_length)
        j["minimal_length"] = *r.minimal_length;
    else
        j["minimal_length"] = nullptr;
    j["truncated"] = r.truncated;
    if (r.notice == PathNotice::same_node)
        j["notice"] = "same_node";
    else if (r.notice == PathNotice::unreachable)
        j["notice"] = "unreachable";
    return j;
}

inline std::string payload(const ordered_json& j) { return j.dump(2); }

// Signature TSV: label, degree, unique neighbors, average incident edge
// size; the standardized variant carries the z-scored columns instead.
inline std::string signatures_tsv(const StructuralSignatures& sig, bool standardized) {
    std::string out = "label\tdegree\tuniq_neighbors\tavg_edge_size\n";
    for (std::size_t i = 0; i < sig.rows.size(); ++i) {
        const auto& r = sig.rows[i];
        out += r.label;
        out += '\t';
        if (standardized) {
            const auto& z = sig.standardized[i];
            out += std::to_string(round6(z[0])) + "\t" + std::to_string(round6(z[1])) +
                   "\t" + std::to_string(round6(z[2]));
        } else {
            out += std::to_string(r.degree) + "\t" + std::to_string(r.unique_neighbors) +
                   "\t" + std::to_string(round6(r.avg_edge_size));
        }
        out += '\n';
    }
    return out;
}

} // namespace hyperkg
