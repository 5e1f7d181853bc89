#pragma once
// Engine configuration. Every field can be overridden through an
// environment variable (HYPERKG_*); explicit CLI flags take precedence.

#include <cstdint>
#include <cstdlib>
#include <string>

#include "hyperkg/errors.hpp"

namespace hyperkg {

struct EngineConfig {
    double similarity_threshold = 0.95;      // theta
    std::uint64_t merge_frequency = 10;      // f, in documents
    double keyword_distance_threshold = 1.5; // cosine distance
    std::string embedding_provider;          // URL or TSV file path
    std::string snapshot_path = "snapshot.json";
    std::uint64_t pair_budget = 20'000'000;  // co-occurrence memory guard
    std::uint64_t max_class_size = 0;        // 0 = unlimited merge class size

    void validate() const {
        if (!(similarity_threshold > 0.0) || similarity_threshold > 1.0)
            throw DataError("similarity_threshold must be in (0, 1]");
        if (merge_frequency < 1) throw DataError("merge_frequency must be >= 1");
        if (!(keyword_distance_threshold >= 0.0))
            throw DataError("keyword_distance_threshold must be finite and >= 0");
    }
};

namespace detail {

inline const char* env(const char* name) { return std::getenv(name); }

inline void env_double(const char* name, double& out) {
    if (const char* v = env(name)) out = std::stod(v);
}

inline void env_u64(const char* name, std::uint64_t& out) {
    if (const char* v = env(name)) out = std::stoull(v);
}

inline void env_string(const char* name, std::string& out) {
    if (const char* v = env(name)) out = v;
}

} // namespace detail

inline EngineConfig config_from_env() {
    EngineConfig cfg;
    detail::env_double("HYPERKG_SIMILARITY_THRESHOLD", cfg.similarity_threshold);
    detail::env_u64("HYPERKG_MERGE_FREQUENCY", cfg.merge_frequency);
    detail::env_double("HYPERKG_KEYWORD_DISTANCE_THRESHOLD",
                       cfg.keyword_distance_threshold);
    detail::env_string("HYPERKG_EMBEDDING_PROVIDER", cfg.embedding_provider);
    detail::env_string("HYPERKG_SNAPSHOT_PATH", cfg.snapshot_path);
    detail::env_u64("HYPERKG_PAIR_BUDGET", cfg.pair_budget);
    detail::env_u64("HYPERKG_MAX_CLASS_SIZE", cfg.max_class_size);
    cfg.validate();
    return cfg;
}

} // namespace hyperkg
