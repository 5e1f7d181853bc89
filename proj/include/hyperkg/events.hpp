#pragma once
// Extraction-event ingest: JSONL parsing, document-level hypergraph
// construction, and the incremental union into the global graph.
//
// Event schema (one JSON object per line, unknown extra keys ignored):
//   {"source": ["label", ...], "target": ["label", ...],
//    "relation": "text", "chunk_id": "<doc>#<index>"}

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"

namespace hyperkg {

struct ExtractionEvent {
    std::vector<std::string> source;
    std::vector<std::string> target;
    std::string relation;
    std::string chunk_id;
};

// Chunk identity parsed from "<doc>#<index>". Spans are optional; chunking
// itself happens upstream of this engine.
struct ChunkRecord {
    std::string document_id;
    std::uint64_t chunk_index = 0;
    std::uint64_t char_begin = 0;
    std::uint64_t char_end = 0;
};

inline constexpr std::size_t kMaxChunkChars = 10000;

inline ChunkRecord parse_chunk_id(const std::string& chunk_id) {
    auto pos = chunk_id.rfind('#');
    if (pos == std::string::npos || pos == 0 || pos + 1 == chunk_id.size())
        throw DataError("chunk_id not in <doc>#<index> form: " + chunk_id);
    ChunkRecord rec;
    rec.document_id = chunk_id.substr(0, pos);
    const std::string idx = chunk_id.substr(pos + 1);
    for (char c : idx)
        if (c < '0' || c > '9')
            throw DataError("chunk_id index is not a number: " + chunk_id);
    rec.chunk_index = std::stoull(idx);
    return rec;
}

// Chunks of one document must be contiguous, non-overlapping, <= 10k chars.
inline void validate_chunk_records(const std::vector<ChunkRecord>& chunks) {
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto& c = chunks[i];
        if (c.char_end < c.char_begin)
            throw DataError("chunk has negative span");
        if (c.char_end - c.char_begin > kMaxChunkChars)
            throw DataError("chunk exceeds 10,000 characters");
        if (c.chunk_index != i)
            throw DataError("chunk indexes are not contiguous from 0");
        if (i > 0 && c.char_begin != chunks[i - 1].char_end)
            throw DataError("chunks overlap or leave a gap");
    }
}

struct LineError {
    std::size_t line = 0; // 1-based
    std::string reason;
};

struct ParseResult {
    std::vector<ExtractionEvent> events; // stream order
    std::vector<LineError> errors;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw DataError(std::string("missing key: ") + key);
    const auto& v = j.at(key);
    if (!v.is_array()) throw DataError(std::string(key) + " is not an array");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) throw DataError(std::string(key) + " contains a non-string");
        out.push_back(item.get<std::string>());
    }
    return out;
}

// Full event validation without building a graph: shares the rejection
// rules with Hypergraph::add_event so parse errors surface per line.
inline ExtractionEvent validate_event(const nlohmann::json& j) {
    ExtractionEvent ev;
    ev.source = string_list(j, "source");
    ev.target = string_list(j, "target");
    if (!j.contains("relation") || !j.at("relation").is_string())
        throw DataError("missing or non-string relation");
    if (!j.contains("chunk_id") || !j.at("chunk_id").is_string())
        throw DataError("missing or non-string chunk_id");
    ev.relation = trim_copy(j.at("relation").get<std::string>());
    ev.chunk_id = trim_copy(j.at("chunk_id").get<std::string>());
    if (ev.source.empty()) throw DataError("empty source list");
    if (ev.target.empty()) throw DataError("empty target list");
    if (ev.relation.empty()) throw DataError("empty relation");
    if (ev.chunk_id.empty()) throw DataError("empty chunk_id");
    parse_chunk_id(ev.chunk_id);

    std::vector<NodeLabel> src, tgt;
    for (auto& s : ev.source) {
        s = canonical_label(s);
        src.push_back(s);
    }
    for (auto& t : ev.target) {
        t = canonical_label(t);
        tgt.push_back(t);
    }
    std::vector<NodeLabel> members = src;
    members.insert(members.end(), tgt.begin(), tgt.end());
    if (sorted_unique(std::move(members)).size() < 2)
        throw DataError("fewer than 2 distinct labels in source ∪ target");
    if (sorted_unique(src) == sorted_unique(tgt))
        throw DataError("source set equals target set");
    return ev;
}

} // namespace detail

// Parses newline-delimited JSON events. Every invalid line is reported with
// its 1-based number; the caller chooses whether to skip or abort.
inline ParseResult parse_events(std::istream& in) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_copy(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            result.errors.push_back({line_no, std::string("malformed JSON: ") + ex.what()});
            continue;
        }
        try {
            result.events.push_back(detail::validate_event(j));
        } catch (const Error& ex) {
            result.errors.push_back({line_no, ex.what()});
        }
    }
    return result;
}

// One hyperedge per event: nodes = source ∪ target, relation and chunk id
// attached, one provenance row per event.
inline Hypergraph build_document_hypergraph(const std::vector<ExtractionEvent>& events) {
    Hypergraph g;
    for (const auto& ev : events)
        g.add_event(ev.source, ev.target, ev.relation, ev.chunk_id);
    return g;
}

// Node union plus edge concatenation with fresh ids for the incoming edges,
// so global edge count grows by exactly |E_i|. Takes the global graph by
// value: pass it with std::move inside the construction loop to append in
// place instead of copying the accumulated snapshot each round.
inline Hypergraph merge_into_global(Hypergraph global, const Hypergraph& doc) {
    for (const auto& e : doc.edges()) global.absorb(e, doc.provenance_of(e.id));
    // Text annotations accumulated on either side are unioned.
    for (const auto& [v, chunks] : doc.node_text_map()) global.merge_node_text(v, chunks);
    return global;
}

} // namespace hyperkg
