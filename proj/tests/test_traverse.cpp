#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "hyperkg/reports.hpp"
#include "hyperkg/traverse.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace hyperkg;
using Catch::Approx;

namespace {

// Composite-materials toy corpus shaped like the agent walkthroughs: one
// cerium-oxide film edge bridged to several PCL edges through Chitosan,
// plus a hydrogel edge that shares two nodes with a scaffold edge.
Hypergraph composite_corpus() {
    Hypergraph g;
    // 0: films
    g.add_event({"Cerium oxide", "Chitosan", "Hydroxyethylcellulose",
                 "Polyethylene glycol"},
                {"Antibacterial nano composite films"}, "compose", "d1#0");
    // 1..3: PCL edges all containing Chitosan
    g.add_event({"PCL", "Chitosan"}, {"PCL/chitosan nanofibers"}, "compose", "d2#0");
    g.add_event({"PCL", "Chitosan"}, {"hybrid vascular grafts"}, "compose", "d2#1");
    g.add_event({"PCL", "natural polymers"}, {"Chitosan", "silk", "gelatin"}, "compose",
                "d3#0");
    // 4: hydrogel, 5: scaffold edge sharing {Chitosan, collagen} with it
    g.add_event({"Chitosan", "collagen"}, {"hydrogel"}, "compose", "d4#0");
    g.add_event({"PCL", "Chitosan", "collagen", "gelatin"}, {"scaffolds"}, "form",
                "d4#1");
    return g;
}

} // namespace

TEST_CASE("single shortest path bridges cerium oxide to PCL via Chitosan") {
    Hypergraph g = composite_corpus();
    PathQuery q{"Cerium oxide", "PCL", 1, 1};
    PathResult r = shortest_hyperpaths(g, q);

    REQUIRE(r.minimal_length == 2);
    REQUIRE(r.paths.size() == 1);
    CHECK(r.truncated); // more equally short paths exist
    const HyperPath& p = r.paths[0];
    CHECK(p.edges == std::vector<EdgeId>{0, 1});
    REQUIRE(p.intersections.size() == 1);
    CHECK(p.intersections[0] == std::vector<NodeLabel>{"Chitosan"});

    auto statements = reconstruct_statements(g, p);
    REQUIRE(statements.size() == 2);
    CHECK(statements[0] ==
          "Cerium oxide, Chitosan, Hydroxyethylcellulose, Polyethylene glycol compose "
          "Antibacterial nano composite films.");
    CHECK(statements[1] == "PCL, Chitosan compose PCL/chitosan nanofibers.");
}

TEST_CASE("K=3 returns three equally short paths in edge-id order") {
    Hypergraph g = composite_corpus();
    PathResult r = shortest_hyperpaths(g, {"Cerium oxide", "PCL", 1, 3});
    REQUIRE(r.paths.size() == 3);
    CHECK(r.paths[0].edges == std::vector<EdgeId>{0, 1});
    CHECK(r.paths[1].edges == std::vector<EdgeId>{0, 2});
    CHECK(r.paths[2].edges == std::vector<EdgeId>{0, 3});
    CHECK(r.truncated); // the scaffold edge gives a fourth
    for (const auto& p : r.paths) CHECK(p.length() == 2);

    PathResult all = shortest_hyperpaths(g, {"Cerium oxide", "PCL", 1, 10});
    CHECK(all.paths.size() == 4);
    CHECK_FALSE(all.truncated);
}

TEST_CASE("S=2 keeps only transitions sharing two nodes") {
    Hypergraph g = composite_corpus();
    PathResult r = shortest_hyperpaths(g, {"hydrogel", "PCL", 2, 1});
    REQUIRE(r.paths.size() == 1);
    CHECK(r.paths[0].edges == std::vector<EdgeId>{4, 5});
    CHECK(r.paths[0].intersections[0] == std::vector<NodeLabel>{"Chitosan", "collagen"});

    auto statements = reconstruct_statements(g, r.paths[0]);
    CHECK(statements[1] == "PCL, Chitosan, collagen, gelatin form scaffolds.");

    // cerium oxide never shares two nodes with anything
    PathResult blocked = shortest_hyperpaths(g, {"Cerium oxide", "PCL", 2, 1});
    CHECK(blocked.paths.empty());
    CHECK(blocked.notice == PathNotice::unreachable);
    CHECK_FALSE(blocked.minimal_length.has_value());
}

TEST_CASE("a single edge containing both endpoints is a length-1 path") {
    Hypergraph g = composite_corpus();
    PathResult r = shortest_hyperpaths(g, {"Chitosan", "PCL", 1, 2});
    REQUIRE(r.minimal_length == 1);
    REQUIRE(r.paths.size() == 2);
    CHECK(r.paths[0].edges == std::vector<EdgeId>{1});
    CHECK(r.paths[1].edges == std::vector<EdgeId>{2});
    CHECK(r.paths[0].intersections.empty());
    CHECK(r.truncated);
}

TEST_CASE("same node, unknown node and unreachable notices") {
    Hypergraph g = composite_corpus();
    PathResult same = shortest_hyperpaths(g, {"PCL", "PCL", 1, 1});
    CHECK(same.paths.empty());
    CHECK(same.notice == PathNotice::same_node);

    CHECK_THROWS_AS(shortest_hyperpaths(g, {"PCL", "unobtainium", 1, 1}), NotFoundError);
    CHECK_THROWS_AS(shortest_hyperpaths(g, {"PCL", "Chitosan", 0, 1}), DataError);

    Hypergraph split = g;
    split.add_event({"lonely"}, {"island"}, "r", "d9#0");
    PathResult un = shortest_hyperpaths(split, {"PCL", "island", 1, 5});
    CHECK(un.paths.empty());
    CHECK(un.notice == PathNotice::unreachable);
}

TEST_CASE("duplicate hyperedges are distinct traversable paths") {
    Hypergraph g;
    g.add_event({"A"}, {"B"}, "r", "d#0");
    g.add_event({"A"}, {"B"}, "r", "d#1"); // exact duplicate, different provenance
    PathResult r = shortest_hyperpaths(g, {"A", "B", 1, 5});
    REQUIRE(r.paths.size() == 2);
    CHECK(r.paths[0].edges == std::vector<EdgeId>{0});
    CHECK(r.paths[1].edges == std::vector<EdgeId>{1});
}

TEST_CASE("allow_longer extends into deeper tiers until K paths") {
    Hypergraph g;
    g.add_event({"A"}, {"B"}, "r", "d#0");      // 0
    g.add_event({"B"}, {"C"}, "r", "d#0");      // 1
    g.add_event({"C"}, {"D"}, "r", "d#0");      // 2
    g.add_event({"B"}, {"D"}, "r", "d#0");      // 3

    PathResult minimal = shortest_hyperpaths(g, {"A", "D", 1, 3});
    REQUIRE(minimal.paths.size() == 1);
    CHECK(minimal.paths[0].edges == std::vector<EdgeId>{0, 3});
    CHECK_FALSE(minimal.truncated);

    PathQuery q{"A", "D", 1, 3};
    q.allow_longer = true;
    PathResult longer = shortest_hyperpaths(g, q);
    REQUIRE(longer.paths.size() == 3);
    CHECK(longer.paths[0].edges == std::vector<EdgeId>{0, 3});
    CHECK(longer.paths[1].edges == std::vector<EdgeId>{0, 1, 2});
    CHECK(longer.paths[2].edges == std::vector<EdgeId>{0, 1, 3});
    CHECK(longer.minimal_length == 2);
    CHECK(longer.truncated); // [0,3,2] exists beyond K
}

TEST_CASE("every returned path satisfies the constraint literally") {
    testing::Rng rng(79);
    for (int round = 0; round < 30; ++round) {
        Hypergraph g = testing::random_hypergraph(rng, 5 + rng() % 35, 14, 2, 5);
        auto labels = g.node_labels();
        const auto& start = labels[rng() % labels.size()];
        const auto& end = labels[rng() % labels.size()];
        if (start == end) continue;
        for (std::uint64_t s : {std::uint64_t{1}, std::uint64_t{2}}) {
            PathResult r = shortest_hyperpaths(g, {start, end, s, 3});
            for (const auto& p : r.paths) {
                CHECK(p.length() == *r.minimal_length);
                CHECK(g.edge(p.edges.front()).contains(start));
                CHECK(g.edge(p.edges.back()).contains(end));
                for (const auto& shared : p.intersections)
                    CHECK(shared.size() >= s);
            }
        }
    }
}

TEST_CASE("path sets equal the exhaustive S-line-graph oracle") {
    testing::Rng rng(83);
    for (int round = 0; round < 40; ++round) {
        Hypergraph g = testing::random_hypergraph(rng, 5 + rng() % 35, 12, 2, 5);
        auto labels = g.node_labels();
        const auto& start = labels[rng() % labels.size()];
        const auto& end = labels[rng() % labels.size()];
        if (start == end) continue;
        for (std::uint64_t s : {std::uint64_t{1}, std::uint64_t{2}}) {
            for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{3}}) {
                PathResult r = shortest_hyperpaths(g, {start, end, s, k});
                std::vector<std::vector<EdgeId>> got;
                for (const auto& p : r.paths) got.push_back(p.edges);
                auto expected = testing::brute_shortest_hyperpaths(g, start, end, s, k);
                CHECK(got == expected);
            }
        }
    }
}

TEST_CASE("monotonicity in S: raising the constraint never shortens paths") {
    testing::Rng rng(89);
    for (int round = 0; round < 25; ++round) {
        Hypergraph g = testing::random_hypergraph(rng, 30, 12, 2, 5);
        auto labels = g.node_labels();
        const auto& start = labels[rng() % labels.size()];
        const auto& end = labels[rng() % labels.size()];
        if (start == end) continue;
        PathResult loose = shortest_hyperpaths(g, {start, end, 1, 1});
        PathResult tight = shortest_hyperpaths(g, {start, end, 2, 1});
        if (!tight.paths.empty()) {
            REQUIRE_FALSE(loose.paths.empty()); // reachable(S=2) within reachable(S=1)
            CHECK(*tight.minimal_length >= *loose.minimal_length);
        }
    }
}

TEST_CASE("repeated queries return byte-identical results") {
    Hypergraph g = composite_corpus();
    PathQuery q{"Cerium oxide", "PCL", 1, 3};
    std::string a = payload(paths_json(g, shortest_hyperpaths(g, q)));
    std::string b = payload(paths_json(g, shortest_hyperpaths(g, q)));
    CHECK(a == b);
}

TEST_CASE("induced path subgraph unions the edges of the returned paths") {
    Hypergraph g = composite_corpus();
    PathResult r = shortest_hyperpaths(g, {"Cerium oxide", "PCL", 1, 3});
    Hypergraph sub = induced_path_subgraph(g, r.paths);
    CHECK(sub.edge_count() == 4); // edge 0 shared by all three paths
    std::set<NodeLabel> nodes;
    for (const auto& e : sub.edges()) nodes.insert(e.nodes.begin(), e.nodes.end());
    CHECK(sub.node_count() == nodes.size());
    // full memberships retained: silk rides along on edge 3
    CHECK(sub.has_node("silk"));
    for (const auto& e : sub.edges()) CHECK_FALSE(sub.provenance_of(e.id).empty());

    CHECK(induced_path_subgraph(g, {}).empty());
}

TEST_CASE("statement reconstruction follows provenance direction") {
    Hypergraph g;
    g.add_event({"fescue grass"}, {"hydrogen production rate"}, "achieves", "d5#0");
    auto s = reconstruct_statements(g, std::vector<EdgeId>{0});
    REQUIRE(s.size() == 1);
    CHECK(s[0] == "fescue grass achieves hydrogen production rate.");
}

TEST_CASE("keyword matching picks the nearest node by cosine distance") {
    EmbeddingStore store;
    store.set("PCL", {1.0f, 0.0f});
    store.set("Cerium oxide", {0.0f, 1.0f});
    store.set("hydrogel", {0.7f, 0.7f});

    MapEmbeddingProvider provider;
    provider.set("pcl", {0.95f, 0.05f});
    provider.set("cerium oxide", {0.05f, 0.9f});
    provider.set("asteroid", {-1.0f, -1.0f});
    provider.set("PCL", {1.0f, 0.0f});

    auto matches = match_keywords(store, provider, {"pcl", "cerium oxide"}, 1.5);
    REQUIRE(matches.size() == 2);
    CHECK(matches[0].node == "PCL");
    CHECK(matches[0].matched);
    CHECK(matches[1].node == "Cerium oxide");
    CHECK(matches[1].matched);

    // identical keyword: distance 0
    auto exact = match_keywords(store, provider, {"PCL"}, 1.5);
    CHECK(exact[0].distance == Approx(0.0).margin(1e-7));

    // far keyword flagged unmatched under a tight threshold
    auto far = match_keywords(store, provider, {"asteroid"}, 0.1);
    CHECK_FALSE(far[0].matched);

    // provider failure aborts the query
    CHECK_THROWS_AS(match_keywords(store, provider, {"unknown keyword"}, 1.5),
                    ProviderError);
    CHECK_THROWS_AS(match_keywords(EmbeddingStore{}, provider, {"pcl"}, 1.5), DataError);
}
