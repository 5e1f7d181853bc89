// hyperkg: build, deduplicate, analyze and traverse scientific knowledge
// hypergraphs stored as JSON snapshots.
//
// Exit codes: 0 success, 1 usage error, 2 data/provider error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperkg/analysis.hpp"
#include "hyperkg/config.hpp"
#include "hyperkg/dedup.hpp"
#include "hyperkg/embedding.hpp"
#include "hyperkg/events.hpp"
#include "hyperkg/http_clients.hpp"
#include "hyperkg/hypergraph.hpp"
#include "hyperkg/projections.hpp"
#include "hyperkg/reports.hpp"
#include "hyperkg/service.hpp"
#include "hyperkg/snapshot.hpp"
#include "hyperkg/traverse.hpp"

namespace {

using namespace hyperkg;

Hypergraph load_graph(const EngineConfig& cfg) { return load_snapshot(cfg.snapshot_path); }

void print_payload(const ordered_json& j) { std::cout << payload(j) << "\n"; }

// Events grouped into documents by chunk-id prefix, in first-appearance
// order, mirroring the per-document construction loop.
std::vector<std::pair<std::string, std::vector<ExtractionEvent>>> group_by_document(
    const std::vector<ExtractionEvent>& events) {
    std::vector<std::pair<std::string, std::vector<ExtractionEvent>>> docs;
    std::map<std::string, std::size_t> position;
    for (const auto& ev : events) {
        std::string doc = parse_chunk_id(ev.chunk_id).document_id;
        auto it = position.find(doc);
        if (it == position.end()) {
            position[doc] = docs.size();
            docs.push_back({doc, {}});
            it = position.find(doc);
        }
        docs[it->second].second.push_back(ev);
    }
    return docs;
}

int run_ingest(const EngineConfig& cfg, const std::string& events_path, bool skip_bad) {
    std::ifstream in(events_path);
    if (!in) throw DataError("cannot open events file: " + events_path);
    ParseResult parsed = parse_events(in);
    for (const auto& err : parsed.errors)
        std::cerr << events_path << ":" << err.line << ": " << err.reason << "\n";
    if (!parsed.errors.empty() && !skip_bad)
        throw DataError(std::to_string(parsed.errors.size()) +
                        " invalid event line(s); rerun with --skip-bad to ignore");

    std::unique_ptr<EmbeddingProvider> provider;
    if (!cfg.embedding_provider.empty())
        provider = make_embedding_provider(cfg.embedding_provider);

    Hypergraph global;
    EmbeddingStore store;
    auto docs = group_by_document(parsed.events);
    std::size_t doc_index = 0;
    for (const auto& [doc_id, events] : docs) {
        ++doc_index;
        Hypergraph doc_graph = build_document_hypergraph(events);
        std::vector<NodeLabel> new_nodes = doc_graph.node_labels();
        global = merge_into_global(std::move(global), doc_graph);
        if (provider) {
            MergeOutcome out = incremental_dedup(global, store, *provider, new_nodes,
                                                 doc_index, cfg.similarity_threshold,
                                                 cfg.merge_frequency, cfg.max_class_size);
            global = std::move(out.graph);
            store = std::move(out.store);
        }
    }
    save_snapshot(global, cfg.snapshot_path);

    ordered_json j;
    j["documents"] = docs.size();
    j["events"] = parsed.events.size();
    j["rejected_lines"] = parsed.errors.size();
    j["nodes"] = global.node_count();
    j["edges"] = global.edge_count();
    j["snapshot"] = cfg.snapshot_path;
    print_payload(j);
    return 0;
}

int run_dedup(const EngineConfig& cfg, const std::string& audit_path) {
    if (cfg.embedding_provider.empty())
        throw ProviderError("dedup needs --embeddings (or HYPERKG_EMBEDDING_PROVIDER)");
    Hypergraph graph = load_graph(cfg);
    auto provider = make_embedding_provider(cfg.embedding_provider);

    EmbeddingStore store;
    embed_into_store(store, *provider, graph.node_labels());
    auto classes = similarity_components(store, graph.node_labels(),
                                         cfg.similarity_threshold, cfg.max_class_size);
    std::size_t merged_nodes = 0;
    if (!classes.empty()) {
        MergePlan plan = build_merge_plan(graph, classes);
        if (!audit_path.empty()) {
            std::ofstream audit(audit_path);
            if (!audit) throw DataError("cannot open audit log: " + audit_path);
            write_merge_audit(graph, plan, audit);
        }
        for (const auto& cls : plan.classes) merged_nodes += cls.members.size() - 1;
        MergeOutcome out = apply_merge(graph, store, plan, *provider);
        graph = std::move(out.graph);
    }
    save_snapshot(graph, cfg.snapshot_path);

    ordered_json j;
    j["classes"] = classes.size();
    j["merged_nodes"] = merged_nodes;
    j["nodes"] = graph.node_count();
    j["edges"] = graph.edge_count();
    print_payload(j);
    return 0;
}

int run_project(const EngineConfig& cfg, const std::string& kind,
                const std::string& out_path) {
    Hypergraph graph = load_graph(cfg);
    PairwiseGraph projected;
    if (kind == "clique")
        projected = clique_expand(graph);
    else if (kind == "star")
        projected = star_expand(graph);
    else if (kind == "collapsed")
        projected = collapse(graph);
    else if (kind == "cyclic")
        projected = cyclic_implicit(graph);
    else if (kind == "chain")
        projected = chain_implicit(graph);
    if (out_path.empty()) {
        projected.write_edge_list(std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw DataError("cannot open output file: " + out_path);
        projected.write_edge_list(out);
    }
    return 0;
}

int run_signatures(const EngineConfig& cfg, bool standardized, const std::string& out_path) {
    Hypergraph graph = load_graph(cfg);
    StructuralSignatures sig = structural_signatures(graph);
    for (std::size_t c = 0; c < 3; ++c)
        if (sig.zero_variance[c])
            std::cerr << "warning: zero-variance signature column " << c
                      << " standardized as all zeros\n";
    if (out_path.empty()) {
        std::cout << signatures_tsv(sig, standardized);
    } else {
        std::ofstream raw(out_path, std::ios::binary);
        if (!raw) throw DataError("cannot open output file: " + out_path);
        raw << signatures_tsv(sig, false);
        std::ofstream std_out(out_path + ".std", std::ios::binary);
        std_out << signatures_tsv(sig, true);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraph knowledge-store engine"};
    app.require_subcommand(1);

    EngineConfig cfg = hyperkg::config_from_env();
    app.add_option("--snapshot", cfg.snapshot_path, "snapshot file path")
        ->capture_default_str();
    app.add_option("--embeddings", cfg.embedding_provider,
                   "embedding provider: URL or TSV file");
    app.add_option("--theta", cfg.similarity_threshold, "merge similarity threshold")
        ->capture_default_str();
    app.add_option("--merge-every", cfg.merge_frequency, "merge frequency in documents")
        ->capture_default_str();
    app.add_option("--keyword-distance", cfg.keyword_distance_threshold,
                   "keyword match distance threshold")
        ->capture_default_str();
    app.add_option("--pair-budget", cfg.pair_budget,
                   "co-occurrence pair budget before sharding")
        ->capture_default_str();
    app.add_option("--max-class-size", cfg.max_class_size,
                   "abort merges above this class size (0 = unlimited)")
        ->capture_default_str();

    std::string events_path;
    bool skip_bad = false;
    auto* ingest = app.add_subcommand("ingest", "build a snapshot from JSONL events");
    ingest->add_option("events", events_path, "events file (JSONL)")->required();
    ingest->add_flag("--skip-bad", skip_bad, "skip invalid lines instead of aborting");

    std::string audit_path;
    auto* dedup = app.add_subcommand("dedup", "embedding-based node merge pass");
    dedup->add_option("--audit", audit_path, "merge-plan audit log (JSONL)");

    auto* stats = app.add_subcommand("stats", "summary statistics as JSON");

    std::size_t top_n = 20, cooccur_k = 3;
    auto* hubs = app.add_subcommand("hubs", "hub ego-network report");
    hubs->add_option("--top", top_n, "number of hubs")->capture_default_str();
    hubs->add_option("--cooccur-top", cooccur_k, "top co-occurring labels per hub")
        ->capture_default_str();

    std::uint64_t rc_k = 10;
    auto* richclub = app.add_subcommand("richclub", "rich-club coefficient");
    richclub->add_option("--k", rc_k, "degree threshold")->capture_default_str();

    std::uint64_t s_value = 1;
    auto* scomponents = app.add_subcommand("scomponents", "s-connected components");
    scomponents->add_option("--s", s_value, "minimum pairwise intersection")
        ->capture_default_str();

    std::string kind, out_path;
    auto* project = app.add_subcommand("project", "dyadic projection edge list");
    project->add_option("--kind", kind, "projection kind")
        ->required()
        ->check(CLI::IsMember({"clique", "star", "collapsed", "cyclic", "chain"}));
    project->add_option("--out", out_path, "output file (default stdout)");

    PathQuery query;
    auto* path = app.add_subcommand("path", "K equally-shortest constrained hyperpaths");
    path->add_option("--start", query.start, "start node label")->required();
    path->add_option("--end", query.end, "end node label")->required();
    path->add_option("--s", query.min_intersection, "minimum intersection size")
        ->capture_default_str();
    path->add_option("--k", query.max_paths, "maximum number of paths")
        ->capture_default_str();
    path->add_flag("--allow-longer", query.allow_longer,
                   "continue past the minimal depth until K paths accumulate");

    bool standardized = false;
    std::string sig_out;
    auto* signatures = app.add_subcommand("signatures", "structural signature TSV");
    signatures->add_flag("--standardized", standardized, "emit z-scored columns");
    signatures->add_option("--out", sig_out,
                           "write raw TSV here and the z-scored variant to <out>.std");

    int port = 8080;
    std::string host = "0.0.0.0";
    auto* serve = app.add_subcommand("serve", "JSON query service over HTTP");
    serve->add_option("--port", port, "listen port")->capture_default_str();
    serve->add_option("--host", host, "bind address")->capture_default_str();

    // global options (snapshot path, provider, thresholds) may follow the
    // subcommand on the command line
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.validate();
        if (ingest->parsed()) return run_ingest(cfg, events_path, skip_bad);
        if (dedup->parsed()) return run_dedup(cfg, audit_path);
        if (stats->parsed()) {
            print_payload(stats_json(summary_stats(load_graph(cfg), cfg.pair_budget)));
            return 0;
        }
        if (hubs->parsed()) {
            print_payload(hubs_json(hub_report(load_graph(cfg), top_n, cooccur_k)));
            return 0;
        }
        if (richclub->parsed()) {
            print_payload(richclub_json(rich_club(load_graph(cfg), rc_k)));
            return 0;
        }
        if (scomponents->parsed()) {
            print_payload(scomponents_json(s_components(load_graph(cfg), s_value)));
            return 0;
        }
        if (project->parsed()) return run_project(cfg, kind, out_path);
        if (path->parsed()) {
            Hypergraph graph = load_graph(cfg);
            print_payload(paths_json(graph, shortest_hyperpaths(graph, query)));
            return 0;
        }
        if (signatures->parsed()) return run_signatures(cfg, standardized, sig_out);
        if (serve->parsed()) {
            QueryService service(cfg);
            std::cerr << "serving snapshot " << cfg.snapshot_path << " on " << host << ":"
                      << port << "\n";
            if (!service.listen(host, port))
                throw DataError("failed to bind " + host + ":" + std::to_string(port));
            return 0;
        }
    } catch (const hyperkg::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 1;
}
