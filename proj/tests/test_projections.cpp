#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "hyperkg/projections.hpp"
#include "support/generators.hpp"

using namespace hyperkg;

namespace {

// Sally, Bob, David, Ella as equal co-authors of one paper.
Hypergraph coauthor_edge() {
    Hypergraph g;
    g.add_event({"Sally", "Bob", "David"}, {"Ella"}, "is co-authors with", "doc#0");
    return g;
}

Hypergraph single_edge_of(std::size_t n) {
    Hypergraph g;
    std::vector<std::string> members;
    for (std::size_t i = 0; i < n; ++i)
        members.push_back("v" + std::to_string(100 + i)); // lexicographic = numeric
    std::vector<std::string> source{members[0]};
    std::vector<std::string> target(members.begin() + 1, members.end());
    g.add_event(source, target, "relates", "d#0");
    return g;
}

} // namespace

TEST_CASE("clique expansion replaces an edge by a complete graph") {
    PairwiseGraph ce = clique_expand(coauthor_edge());
    CHECK(ce.pair_count() == 6);
    CHECK(ce.has_pair("Sally", "Bob"));
    CHECK(ce.has_pair("David", "Ella"));
    for (const auto& v : ce.nodes()) CHECK(ce.degree(v) == 3);

    // size-2 edge maps to itself
    Hypergraph pair_graph;
    pair_graph.add_event({"A"}, {"B"}, "r", "d#0");
    PairwiseGraph tiny = clique_expand(pair_graph);
    CHECK(tiny.pair_count() == 1);
    CHECK(tiny.weight("A", "B") == 1);
}

TEST_CASE("clique weights count the hyperedges containing each pair") {
    Hypergraph g;
    g.add_event({"A"}, {"B", "C"}, "r", "d#0");
    g.add_event({"A"}, {"B"}, "r", "d#1");
    PairwiseGraph ce = clique_expand(g);
    CHECK(ce.weight("A", "B") == 2);
    CHECK(ce.weight("A", "C") == 1);
    CHECK(ce.weight("B", "C") == 1);
}

TEST_CASE("star expansion is bipartite with one pair per incidence") {
    Hypergraph g = coauthor_edge();
    PairwiseGraph se = star_expand(g);
    CHECK(se.pair_count() == 4);
    CHECK(se.node_count() == 5);
    std::string edge_node = "edge:0";
    CHECK(se.kind(edge_node) == PairNodeKind::edge_node);
    CHECK(se.kind("Sally") == PairNodeKind::entity);
    for (const auto& author : {"Sally", "Bob", "David", "Ella"})
        CHECK(se.has_pair(author, edge_node));

    CHECK(star_expand(Hypergraph{}).pair_count() == 0);
}

TEST_CASE("star expansion preserves total incidence") {
    testing::Rng rng(43);
    for (int round = 0; round < 10; ++round) {
        Hypergraph g = testing::random_hypergraph(rng, 50, 20);
        std::size_t memberships = 0;
        for (const auto& e : g.edges()) memberships += e.size();
        CHECK(star_expand(g).pair_count() == memberships);
    }
}

TEST_CASE("restricting star pairs to entities loses direct co-occurrence") {
    // two overlapping edges: the clique projection links A-B and B-C, but
    // every star pair touches an edge-node, so the restriction is empty
    Hypergraph g;
    g.add_event({"A"}, {"B"}, "r", "d#0");
    g.add_event({"B"}, {"C"}, "r", "d#0");
    PairwiseGraph ce = clique_expand(g);
    PairwiseGraph se = star_expand(g);
    std::size_t entity_pairs = 0;
    for (const auto& [pair, _] : se.pairs())
        if (se.kind(pair.first) == PairNodeKind::entity &&
            se.kind(pair.second) == PairNodeKind::entity)
            ++entity_pairs;
    CHECK(entity_pairs == 0);
    CHECK(ce.pair_count() == 2);
}

TEST_CASE("collapsed representation joins groups into atomic nodes") {
    Hypergraph g;
    g.add_event({"Sally", "Bob", "David", "Ella"}, {"Paper 1"}, "are equal co-authors of",
                "doc#0");
    PairwiseGraph col = collapse(g);
    CHECK(col.pair_count() == 1);
    CHECK(col.has_pair("Bob, David, Ella, Sally", "Paper 1"));
    CHECK(col.pair_label("Bob, David, Ella, Sally", "Paper 1") == "are equal co-authors of");
    // individual contributors are not nodes of the result
    CHECK_FALSE(col.has_node("Sally"));

    Hypergraph plain;
    plain.add_event({"A"}, {"B"}, "r", "d#0");
    PairwiseGraph simple = collapse(plain);
    CHECK(simple.has_pair("A", "B"));
}

TEST_CASE("identical groups coincide and accumulate weight") {
    Hypergraph g;
    g.add_event({"B", "A"}, {"C"}, "r", "d#0");
    g.add_event({"A", "B"}, {"C"}, "r", "d#1");
    PairwiseGraph col = collapse(g);
    CHECK(col.pair_count() == 1);
    CHECK(col.weight("A, B", "C") == 2);
}

TEST_CASE("cyclic implicit forms a ring with uniform degree 2") {
    PairwiseGraph cyc = cyclic_implicit(coauthor_edge());
    CHECK(cyc.pair_count() == 4);
    for (const auto& v : cyc.nodes()) CHECK(cyc.degree(v) == 2);

    PairwiseGraph triangle = cyclic_implicit(single_edge_of(3));
    CHECK(triangle.pair_count() == 3);

    // size-2 edge: one pair, not two parallel ones
    PairwiseGraph degenerate = cyclic_implicit(single_edge_of(2));
    CHECK(degenerate.pair_count() == 1);
    CHECK(degenerate.total_weight() == 1);
}

TEST_CASE("chain implicit links nodes in a simple path") {
    PairwiseGraph chain = chain_implicit(coauthor_edge());
    CHECK(chain.pair_count() == 3);
    // lexicographic order: Bob - David - Ella - Sally
    CHECK(chain.degree("Bob") == 1);
    CHECK(chain.degree("Sally") == 1);
    CHECK(chain.degree("David") == 2);
    CHECK(chain.degree("Ella") == 2);

    CHECK(chain_implicit(single_edge_of(2)).pair_count() == 1);
}

TEST_CASE("per-edge pair counts match the closed forms up to size 32") {
    for (std::size_t n = 2; n <= 32; ++n) {
        Hypergraph g = single_edge_of(n);
        CHECK(clique_expand(g).pair_count() == n * (n - 1) / 2);
        CHECK(star_expand(g).pair_count() == n);
        CHECK(cyclic_implicit(g).pair_count() == (n == 2 ? 1 : n));
        CHECK(chain_implicit(g).pair_count() == n - 1);
    }
}

TEST_CASE("projection totals hold on random hypergraphs") {
    testing::Rng rng(47);
    for (int round = 0; round < 25; ++round) {
        Hypergraph g = testing::random_hypergraph(rng, 30, 60, 2, 8);
        std::uint64_t clique_total = 0, chain_total = 0, cyclic_total = 0, star_total = 0;
        for (const auto& e : g.edges()) {
            std::uint64_t n = e.size();
            clique_total += n * (n - 1) / 2;
            chain_total += n - 1;
            cyclic_total += n == 2 ? 1 : n;
            star_total += n;
        }
        CHECK(clique_expand(g).total_weight() == clique_total);
        CHECK(chain_implicit(g).total_weight() == chain_total);
        CHECK(cyclic_implicit(g).total_weight() == cyclic_total);
        CHECK(star_expand(g).total_weight() == star_total);
    }
}

TEST_CASE("duplicated edges change weights but not the pair set") {
    testing::Rng rng(53);
    Hypergraph g = testing::random_hypergraph(rng, 20, 15);
    Hypergraph doubled = merge_into_global(g, g);
    PairwiseGraph once = clique_expand(g);
    PairwiseGraph twice = clique_expand(doubled);
    REQUIRE(once.pair_count() == twice.pair_count());
    for (const auto& [pair, w] : once.pairs())
        CHECK(twice.weight(pair.first, pair.second) == 2 * w);
}

TEST_CASE("cyclic and chain projections ignore edge insertion order") {
    std::vector<ExtractionEvent> events = {
        {{"C", "A"}, {"E", "B"}, "r", "d#0"},
        {{"D"}, {"B", "F"}, "r", "d#1"},
        {{"A"}, {"F"}, "r", "d#2"},
    };
    auto reversed = events;
    std::reverse(reversed.begin(), reversed.end());
    Hypergraph forward = build_document_hypergraph(events);
    Hypergraph backward = build_document_hypergraph(reversed);
    CHECK(cyclic_implicit(forward).edge_list_string() ==
          cyclic_implicit(backward).edge_list_string());
    CHECK(chain_implicit(forward).edge_list_string() ==
          chain_implicit(backward).edge_list_string());
}

TEST_CASE("pairwise distance is the shortest hop count") {
    // chain Sally - Bob - David - Ella built from pairwise edges
    Hypergraph g;
    g.add_event({"Sally"}, {"Bob"}, "r", "d#0");
    g.add_event({"Bob"}, {"David"}, "r", "d#0");
    g.add_event({"David"}, {"Ella"}, "r", "d#0");
    g.add_event({"X"}, {"Y"}, "r", "d#0"); // disconnected pair
    PairwiseGraph pg = clique_expand(g);

    CHECK(pairwise_distance(pg, "Sally", "Ella") == 3);
    CHECK(pairwise_distance(pg, "Sally", "Sally") == 0);
    CHECK(pairwise_distance(pg, "Sally", "X") == kUnreachable);
    CHECK_THROWS_AS(pairwise_distance(pg, "Sally", "nope"), NotFoundError);
}

TEST_CASE("h-hop neighborhood includes the seed and respects the radius") {
    Hypergraph g;
    g.add_event({"Sally"}, {"Bob"}, "r", "d#0");
    g.add_event({"Bob"}, {"David"}, "r", "d#0");
    g.add_event({"David"}, {"Ella"}, "r", "d#0");
    PairwiseGraph pg = clique_expand(g);

    CHECK(h_hop_neighborhood(pg, "Sally", 0) == std::set<std::string>{"Sally"});
    CHECK(h_hop_neighborhood(pg, "Sally", 2) ==
          std::set<std::string>{"Sally", "Bob", "David"});
    // h at least the diameter reaches the whole component
    CHECK(h_hop_neighborhood(pg, "Sally", 10).size() == 4);
}

TEST_CASE("entity path unions one shortest path per consecutive pair") {
    Hypergraph g;
    g.add_event({"A"}, {"B"}, "r", "d#0");
    g.add_event({"B"}, {"C"}, "r", "d#0");
    g.add_event({"C"}, {"D"}, "r", "d#0");
    PairwiseGraph pg = clique_expand(g);

    CHECK(entity_path(pg, {"A"}).empty());
    auto direct = entity_path(pg, {"A", "B"});
    CHECK(direct == std::set<NodePair>{{"A", "B"}});

    // repeated endpoints collapse into a set
    auto loop = entity_path(pg, {"A", "C", "A"});
    CHECK(loop == std::set<NodePair>{{"A", "B"}, {"B", "C"}});

    Hypergraph disconnected = g;
    disconnected.add_event({"X"}, {"Y"}, "r", "d#0");
    PairwiseGraph pg2 = clique_expand(disconnected);
    CHECK_THROWS_AS(entity_path(pg2, {"A", "X"}), DataError);
}

TEST_CASE("entity path tie-break picks the lexicographically smallest route") {
    // two shortest A -> D routes: via B or via C
    Hypergraph g;
    g.add_event({"A"}, {"B"}, "r", "d#0");
    g.add_event({"B"}, {"D"}, "r", "d#0");
    g.add_event({"A"}, {"C"}, "r", "d#0");
    g.add_event({"C"}, {"D"}, "r", "d#0");
    PairwiseGraph pg = clique_expand(g);
    auto edges = entity_path(pg, {"A", "D"});
    CHECK(edges == std::set<NodePair>{{"A", "B"}, {"B", "D"}});
}

TEST_CASE("edge list export is sorted with edge-node prefixes") {
    Hypergraph g;
    g.add_event({"b"}, {"a"}, "r", "d#0");
    PairwiseGraph se = star_expand(g);
    CHECK(se.edge_list_string() == "a\tedge:0\t1\nb\tedge:0\t1\n");
}
