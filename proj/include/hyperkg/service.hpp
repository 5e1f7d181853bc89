#pragma once
// JSON-over-HTTP query service. Read-only except POST /reload, which swaps
// the snapshot atomically: in-flight requests keep serving the snapshot
// they started with via their shared_ptr.
//
// Endpoints:
//   GET  /stats
//   GET  /hubs?top=N[&k=K]
//   GET  /scomponents?s=S
//   POST /match   {"keywords": [..]}
//   POST /paths   {"start", "end", "s", "k"[, "allow_longer"]}
//   POST /reload  [{"path": "..."}]

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "hyperkg/analysis.hpp"
#include "hyperkg/config.hpp"
#include "hyperkg/embedding.hpp"
#include "hyperkg/errors.hpp"
#include "hyperkg/http_clients.hpp"
#include "hyperkg/hypergraph.hpp"
#include "hyperkg/reports.hpp"
#include "hyperkg/snapshot.hpp"
#include "hyperkg/traverse.hpp"

namespace hyperkg {

class QueryService {
public:
    QueryService(EngineConfig config, Hypergraph graph)
        : config_(std::move(config)),
          graph_(std::make_shared<const Hypergraph>(std::move(graph))) {}

    explicit QueryService(EngineConfig config)
        : QueryService(config, load_snapshot(config.snapshot_path)) {}

    std::shared_ptr<const Hypergraph> snapshot() const {
        std::lock_guard lock(mutex_);
        return graph_;
    }

    void reload(const std::string& path) {
        auto fresh = std::make_shared<const Hypergraph>(load_snapshot(path));
        std::lock_guard lock(mutex_);
        graph_ = std::move(fresh);
        store_.reset(); // node embeddings belong to the old snapshot
    }

    void attach(httplib::Server& server) {
        server.Get("/stats", [this](const httplib::Request&, httplib::Response& res) {
            handle(res, [&] {
                auto g = snapshot();
                return payload(stats_json(summary_stats(*g, config_.pair_budget)));
            });
        });

        server.Get("/hubs", [this](const httplib::Request& req, httplib::Response& res) {
            handle(res, [&] {
                std::size_t top = param_u64(req, "top", 20);
                std::size_t k = param_u64(req, "k", 3);
                auto g = snapshot();
                return payload(hubs_json(hub_report(*g, top, k)));
            });
        });

        server.Get("/scomponents",
                   [this](const httplib::Request& req, httplib::Response& res) {
                       handle(res, [&] {
                           if (!req.has_param("s"))
                               throw DataError("missing query parameter: s");
                           auto g = snapshot();
                           return payload(scomponents_json(
                               s_components(*g, param_u64(req, "s", 1))));
                       });
                   });

        server.Post("/match", [this](const httplib::Request& req, httplib::Response& res) {
            handle(res, [&] {
                auto body = parse_body(req);
                if (!body.contains("keywords") || !body.at("keywords").is_array())
                    throw DataError("body must carry a keywords array");
                std::vector<std::string> keywords;
                for (const auto& k : body.at("keywords")) {
                    if (!k.is_string()) throw DataError("keywords must be strings");
                    keywords.push_back(k.get<std::string>());
                }
                auto g = snapshot();
                auto [store, provider] = node_store(g);
                auto matches = match_keywords(*store, *provider, keywords,
                                              config_.keyword_distance_threshold);
                return payload(match_json(matches));
            });
        });

        server.Post("/paths", [this](const httplib::Request& req, httplib::Response& res) {
            handle(res, [&] {
                auto body = parse_body(req);
                PathQuery q;
                q.start = require_string(body, "start");
                q.end = require_string(body, "end");
                q.min_intersection = body.value("s", std::uint64_t{1});
                q.max_paths = body.value("k", std::uint64_t{1});
                q.allow_longer = body.value("allow_longer", false);
                auto g = snapshot();
                return payload(paths_json(*g, shortest_hyperpaths(*g, q)));
            });
        });

        server.Post("/reload", [this](const httplib::Request& req, httplib::Response& res) {
            handle(res, [&] {
                std::string path = config_.snapshot_path;
                if (!req.body.empty()) {
                    auto body = parse_body(req);
                    if (body.contains("path")) path = require_string(body, "path");
                }
                reload(path);
                auto g = snapshot();
                ordered_json j;
                j["reloaded"] = true;
                j["snapshot"] = path;
                j["nodes"] = g->node_count();
                j["edges"] = g->edge_count();
                return payload(j);
            });
        });
    }

    // Blocking listen used by the CLI.
    bool listen(const std::string& host, int port) {
        httplib::Server server;
        attach(server);
        return server.listen(host, port);
    }

    const EngineConfig& config() const { return config_; }

private:
    static nlohmann::json parse_body(const httplib::Request& req) {
        try {
            return nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::exception& ex) {
            throw DataError(std::string("malformed JSON body: ") + ex.what());
        }
    }

    static std::string require_string(const nlohmann::json& j, const char* key) {
        if (!j.contains(key) || !j.at(key).is_string())
            throw DataError(std::string("missing or non-string field: ") + key);
        return j.at(key).get<std::string>();
    }

    static std::uint64_t param_u64(const httplib::Request& req, const char* name,
                                   std::uint64_t fallback) {
        if (!req.has_param(name)) return fallback;
        try {
            return std::stoull(req.get_param_value(name));
        } catch (const std::exception&) {
            throw DataError(std::string("query parameter is not a number: ") + name);
        }
    }

    // Lazily embeds every node label of the current snapshot for /match.
    std::pair<std::shared_ptr<EmbeddingStore>, std::shared_ptr<EmbeddingProvider>>
    node_store(const std::shared_ptr<const Hypergraph>& g) {
        std::lock_guard lock(mutex_);
        if (!provider_) provider_ = make_embedding_provider(config_.embedding_provider);
        if (!store_) {
            auto store = std::make_shared<EmbeddingStore>();
            embed_into_store(*store, *provider_, g->node_labels());
            store_ = std::move(store);
        }
        return {store_, provider_};
    }

    template <class Fn>
    static void handle(httplib::Response& res, Fn&& fn) {
        try {
            res.set_content(fn(), "application/json");
        } catch (const NotFoundError& ex) {
            res.status = 404;
            res.set_content(error_body(ex.what()), "application/json");
        } catch (const ProviderError& ex) {
            res.status = 502;
            res.set_content(error_body(ex.what()), "application/json");
        } catch (const Error& ex) {
            res.status = 400;
            res.set_content(error_body(ex.what()), "application/json");
        } catch (const nlohmann::json::exception& ex) {
            res.status = 400;
            res.set_content(error_body(ex.what()), "application/json");
        }
    }

    static std::string error_body(const std::string& message) {
        ordered_json j;
        j["error"] = message;
        return j.dump(2);
    }

    EngineConfig config_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Hypergraph> graph_;
    std::shared_ptr<EmbeddingStore> store_;
    std::shared_ptr<EmbeddingProvider> provider_;
};

} // namespace hyperkg
