#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "hyperkg/events.hpp"
#include "hyperkg/snapshot.hpp"
#include "support/generators.hpp"

using namespace hyperkg;

TEST_CASE("parse_events accepts n-ary relation records") {
    std::istringstream in(
        R"({"source":["PCL","chitosan"],"target":["PCL/chitosan nanofibers"],"relation":"compose","chunk_id":"d7#2"})"
        "\n"
        R"({"source":["biomaterials"],"target":["diagnostics","therapeutics"],"relation":"are engineered for","chunk_id":"d1#0","extra":"ignored"})"
        "\n");
    ParseResult r = parse_events(in);
    REQUIRE(r.errors.empty());
    REQUIRE(r.events.size() == 2);
    CHECK(r.events[0].source == std::vector<std::string>{"PCL", "chitosan"});
    CHECK(r.events[0].target == std::vector<std::string>{"PCL/chitosan nanofibers"});
    CHECK(r.events[0].relation == "compose");

    Hypergraph g = build_document_hypergraph(r.events);
    CHECK(g.edge(0).size() == 3);
    CHECK(g.edge(1).size() == 3);
}

TEST_CASE("parse_events reports invalid lines with numbers") {
    std::istringstream in(
        "{not json\n"
        R"({"source":["PLA"],"target":["PLA"],"relation":"is","chunk_id":"d1#0"})"
        "\n"
        R"({"source":[],"target":["X"],"relation":"is","chunk_id":"d1#0"})"
        "\n"
        R"({"source":["A"],"target":["B"],"relation":"is","chunk_id":"d1#0"})"
        "\n"
        R"({"source":["A"],"target":["B"],"relation":"is","chunk_id":"missing-index"})"
        "\n");
    ParseResult r = parse_events(in);
    REQUIRE(r.events.size() == 1);
    REQUIRE(r.errors.size() == 4);
    CHECK(r.errors[0].line == 1);
    CHECK(r.errors[1].line == 2); // self-loop: union of size 1
    CHECK(r.errors[2].line == 3); // empty source
    CHECK(r.errors[3].line == 5); // bad chunk id format
}

TEST_CASE("labels are trimmed and events keep stream order") {
    std::istringstream in(
        R"({"source":["  A "],"target":[" B"],"relation":" r ","chunk_id":"d1#0"})"
        "\n"
        R"({"source":["C"],"target":["D"],"relation":"r","chunk_id":"d1#1"})"
        "\n");
    ParseResult r = parse_events(in);
    REQUIRE(r.events.size() == 2);
    CHECK(r.events[0].source == std::vector<std::string>{"A"});
    CHECK(r.events[0].target == std::vector<std::string>{"B"});
    CHECK(r.events[0].relation == "r");
    CHECK(r.events[1].source == std::vector<std::string>{"C"});
}

TEST_CASE("chunk id parsing and validation") {
    ChunkRecord rec = parse_chunk_id("doc-42#7");
    CHECK(rec.document_id == "doc-42");
    CHECK(rec.chunk_index == 7);
    CHECK_THROWS_AS(parse_chunk_id("nochunk"), DataError);
    CHECK_THROWS_AS(parse_chunk_id("#3"), DataError);
    CHECK_THROWS_AS(parse_chunk_id("doc#"), DataError);
    CHECK_THROWS_AS(parse_chunk_id("doc#x1"), DataError);

    std::vector<ChunkRecord> chunks = {{"d", 0, 0, 10000}, {"d", 1, 10000, 12000}};
    CHECK_NOTHROW(validate_chunk_records(chunks));
    chunks[1].char_begin = 9000; // overlap
    CHECK_THROWS_AS(validate_chunk_records(chunks), DataError);
    CHECK_THROWS_AS(validate_chunk_records({{"d", 0, 0, 10001}}), DataError);
}

TEST_CASE("document hypergraph construction") {
    std::vector<ExtractionEvent> events = {
        {{"PCL", "chitosan"}, {"nanofibers"}, "compose", "d1#0"},
        {{"chitosan"}, {"collagen", "hydrogel"}, "binds", "d1#1"},
    };
    Hypergraph g = build_document_hypergraph(events);
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 2);
    // the shared node indexes both edges
    CHECK(g.edges_of("chitosan") == std::vector<EdgeId>{0, 1});

    CHECK(build_document_hypergraph({}).empty());

    // two identical events stay two distinct edges
    std::vector<ExtractionEvent> dup = {events[0], events[0]};
    Hypergraph g2 = build_document_hypergraph(dup);
    CHECK(g2.edge_count() == 2);
    CHECK(g2.duplicate_edge_groups().surplus == 1);
}

TEST_CASE("merge_into_global concatenates edges with fresh ids") {
    testing::Rng rng(23);
    Hypergraph global = testing::random_hypergraph(rng, 10, 12);
    Hypergraph doc = testing::random_hypergraph(rng, 5, 12);

    Hypergraph merged = merge_into_global(global, doc);
    CHECK(merged.edge_count() == 15);
    CHECK(merged.node_count() <= global.node_count() + doc.node_count());

    Hypergraph same = merge_into_global(global, Hypergraph{});
    CHECK(snapshot_string(same) == snapshot_string(global));

    // merging the same document twice doubles its edges; every node set now
    // appears twice, so the surplus grows by exactly |E_doc|
    Hypergraph twice = merge_into_global(merge_into_global(Hypergraph{}, doc), doc);
    CHECK(twice.edge_count() == 2 * doc.edge_count());
    CHECK(twice.duplicate_edge_groups().surplus ==
          doc.edge_count() + doc.duplicate_edge_groups().surplus);
}

TEST_CASE("node union is exact when documents are disjoint") {
    std::vector<ExtractionEvent> a = {{{"A"}, {"B"}, "r", "d1#0"}};
    std::vector<ExtractionEvent> b = {{{"C"}, {"D"}, "r", "d2#0"}};
    Hypergraph ga = build_document_hypergraph(a);
    Hypergraph gb = build_document_hypergraph(b);
    CHECK(merge_into_global(ga, gb).node_count() == 4);

    std::vector<ExtractionEvent> c = {{{"A"}, {"D"}, "r", "d3#0"}};
    Hypergraph gc = build_document_hypergraph(c);
    CHECK(merge_into_global(ga, gc).node_count() == 3);
}

TEST_CASE("merge order does not change node sets or edge multisets") {
    testing::Rng rng(29);
    auto docs = std::vector<Hypergraph>{};
    for (int i = 0; i < 4; ++i) docs.push_back(testing::random_hypergraph(rng, 8, 10));

    auto fingerprint = [](const Hypergraph& g) {
        std::multiset<std::tuple<std::vector<NodeLabel>, std::string, std::string>> edges;
        for (const auto& e : g.edges()) edges.insert({e.nodes, e.relation, e.chunk_id});
        return std::make_pair(g.node_labels(), edges);
    };

    Hypergraph forward;
    for (const auto& d : docs) forward = merge_into_global(std::move(forward), d);
    Hypergraph backward;
    for (auto it = docs.rbegin(); it != docs.rend(); ++it)
        backward = merge_into_global(std::move(backward), *it);
    CHECK(fingerprint(forward) == fingerprint(backward));
}

TEST_CASE("snapshot roundtrip is byte-identical") {
    testing::Rng rng(31);
    Hypergraph g = testing::random_hypergraph(rng, 50, 20);
    std::string first = snapshot_string(g);
    Hypergraph loaded = load_snapshot_json(ordered_json::parse(first));
    CHECK(snapshot_string(loaded) == first);
}

TEST_CASE("snapshot load rejects inconsistent documents") {
    ordered_json doc;
    doc["nodes"] = {"A", "B"};
    doc["edges"] = ordered_json::array(
        {{{"id", 0}, {"nodes", {"A", "B"}}, {"relation", "r"}, {"chunk_id", "d#0"}}});
    doc["provenance"] = ordered_json::array(); // edge without provenance
    CHECK_THROWS_AS(load_snapshot_json(doc), DataError);
}
