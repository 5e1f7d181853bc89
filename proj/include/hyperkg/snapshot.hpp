#pragma once
// Snapshot file format: one JSON document, UTF-8, LF line endings,
// keys emitted in a fixed order so identical graphs serialize to
// identical bytes.
//
//   {
//     "nodes": ["label", ...],                      // sorted
//     "edges": [{"id", "nodes", "relation", "chunk_id"}, ...],   // id-sorted
//     "provenance": [{"edge_id", "source", "target", "relation", "chunk_id"}, ...]
//   }

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"

namespace hyperkg {

using ordered_json = nlohmann::ordered_json;

inline ordered_json snapshot_json(const Hypergraph& g) {
    ordered_json doc;
    doc["nodes"] = g.node_labels();
    auto& edges = doc["edges"] = ordered_json::array();
    for (const auto& e : g.edges()) {
        ordered_json je;
        je["id"] = e.id;
        je["nodes"] = e.nodes;
        je["relation"] = e.relation;
        je["chunk_id"] = e.chunk_id;
        edges.push_back(std::move(je));
    }
    auto& prov = doc["provenance"] = ordered_json::array();
    // Rows grouped by edge id, original insertion order within an edge.
    for (const auto& e : g.edges()) {
        for (const auto* p : g.provenance_of(e.id)) {
            ordered_json jp;
            jp["edge_id"] = p->edge_id;
            jp["source"] = p->source;
            jp["target"] = p->target;
            jp["relation"] = p->relation;
            jp["chunk_id"] = p->chunk_id;
            prov.push_back(std::move(jp));
        }
    }
    return doc;
}

inline std::string snapshot_string(const Hypergraph& g) {
    return snapshot_json(g).dump(2) + "\n";
}

inline void save_snapshot(const Hypergraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open snapshot file for writing: " + path);
    out << snapshot_string(g);
    if (!out) throw DataError("failed writing snapshot file: " + path);
}

inline Hypergraph load_snapshot_json(const ordered_json& doc) {
    if (!doc.is_object() || !doc.contains("edges") || !doc.contains("provenance"))
        throw DataError("snapshot document missing required keys");
    std::vector<Hyperedge> edges;
    for (const auto& je : doc.at("edges")) {
        Hyperedge e;
        e.id = je.at("id").get<EdgeId>();
        e.nodes = je.at("nodes").get<std::vector<NodeLabel>>();
        e.relation = je.at("relation").get<std::string>();
        e.chunk_id = je.at("chunk_id").get<std::string>();
        edges.push_back(std::move(e));
    }
    std::vector<ProvenanceTriple> prov;
    for (const auto& jp : doc.at("provenance")) {
        ProvenanceTriple p;
        p.edge_id = jp.at("edge_id").get<EdgeId>();
        p.source = jp.at("source").get<std::vector<NodeLabel>>();
        p.target = jp.at("target").get<std::vector<NodeLabel>>();
        p.relation = jp.at("relation").get<std::string>();
        p.chunk_id = jp.at("chunk_id").get<std::string>();
        prov.push_back(std::move(p));
    }
    return Hypergraph::from_parts(std::move(edges), std::move(prov), 0);
}

inline Hypergraph load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open snapshot file: " + path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(std::string("snapshot is not valid JSON: ") + ex.what());
    }
    return load_snapshot_json(doc);
}

} // namespace hyperkg
