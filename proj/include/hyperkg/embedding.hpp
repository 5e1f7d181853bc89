#pragma once
// Node-label embeddings: fixed-dimension float32 vectors keyed by label,
// cosine similarity with float64 accumulation, and the two provider
// backends (TSV file, HTTP endpoint).
//
// Provider contract: POST /embed {"inputs": [label, ...]} returning
// {"vectors": [[f, ...], ...], "dimension": n}; or a local file with one
// "label<TAB>v1,v2,..." line per label.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hyperkg/errors.hpp"
#include "hyperkg/hypergraph.hpp"

namespace hyperkg {

using Embedding = std::vector<float>;

inline double cosine_similarity(const Embedding& u, const Embedding& v) {
    if (u.size() != v.size())
        throw DataError("cosine: dimension mismatch");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += static_cast<double>(u[i]) * v[i];
        nu += static_cast<double>(u[i]) * u[i];
        nv += static_cast<double>(v[i]) * v[i];
    }
    if (nu == 0.0 || nv == 0.0)
        throw DataError("cosine: undefined similarity for zero vector");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

// Cosine distance in [0, 2].
inline double cosine_distance(const Embedding& u, const Embedding& v) {
    return 1.0 - cosine_similarity(u, v);
}

class EmbeddingStore {
public:
    EmbeddingStore() = default;

    explicit EmbeddingStore(std::size_t dimension) : dimension_(dimension) {}

    std::size_t dimension() const { return dimension_; }

    std::size_t size() const { return vectors_.size(); }

    bool contains(const NodeLabel& v) const { return vectors_.count(v) != 0; }

    void set(const NodeLabel& label, Embedding vec) {
        if (vec.empty()) throw DataError("embedding vector is empty");
        for (float x : vec)
            if (!std::isfinite(x)) throw DataError("embedding contains non-finite value");
        if (dimension_ == 0) dimension_ = vec.size();
        if (vec.size() != dimension_)
            throw DataError("embedding dimension mismatch: expected " +
                            std::to_string(dimension_) + ", got " +
                            std::to_string(vec.size()));
        vectors_[label] = std::move(vec);
    }

    void erase(const NodeLabel& label) { vectors_.erase(label); }

    const Embedding& get(const NodeLabel& label) const {
        auto it = vectors_.find(label);
        if (it == vectors_.end()) throw NotFoundError("no embedding for: " + label);
        return it->second;
    }

    const std::unordered_map<NodeLabel, Embedding>& vectors() const { return vectors_; }

    std::vector<NodeLabel> labels() const {
        std::vector<NodeLabel> out;
        out.reserve(vectors_.size());
        for (const auto& [v, _] : vectors_) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::size_t dimension_ = 0;
    std::unordered_map<NodeLabel, Embedding> vectors_;
};

struct EmbedResult {
    std::vector<Embedding> vectors; // parallel to the input labels
    std::size_t dimension = 0;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual EmbedResult embed(const std::vector<std::string>& inputs) = 0;
};

// Reads "label<TAB>v1,v2,..." lines once; unknown labels are a provider error.
class FileEmbeddingProvider : public EmbeddingProvider {
public:
    explicit FileEmbeddingProvider(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ProviderError("cannot open embedding file: " + path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim_copy(line).empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw ProviderError("embedding file line " + std::to_string(line_no) +
                                    ": missing TAB separator");
            std::string label = trim_copy(line.substr(0, tab));
            Embedding vec;
            std::stringstream values(line.substr(tab + 1));
            std::string tok;
            while (std::getline(values, tok, ',')) {
                try {
                    vec.push_back(std::stof(tok));
                } catch (const std::exception&) {
                    throw ProviderError("embedding file line " + std::to_string(line_no) +
                                        ": bad float '" + tok + "'");
                }
            }
            if (vec.empty())
                throw ProviderError("embedding file line " + std::to_string(line_no) +
                                    ": no values");
            if (dimension_ == 0) dimension_ = vec.size();
            if (vec.size() != dimension_)
                throw ProviderError("embedding file line " + std::to_string(line_no) +
                                    ": dimension mismatch");
            table_[label] = std::move(vec);
        }
        if (table_.empty()) throw ProviderError("embedding file is empty: " + path);
    }

    EmbedResult embed(const std::vector<std::string>& inputs) override {
        EmbedResult res;
        res.dimension = dimension_;
        res.vectors.reserve(inputs.size());
        for (const auto& label : inputs) {
            auto it = table_.find(trim_copy(label));
            if (it == table_.end())
                throw ProviderError("embedding file has no entry for: " + label);
            res.vectors.push_back(it->second);
        }
        return res;
    }

private:
    std::size_t dimension_ = 0;
    std::unordered_map<std::string, Embedding> table_;
};

// In-memory provider for tests and programmatic use.
class MapEmbeddingProvider : public EmbeddingProvider {
public:
    MapEmbeddingProvider() = default;

    explicit MapEmbeddingProvider(std::unordered_map<std::string, Embedding> table)
        : table_(std::move(table)) {}

    void set(const std::string& label, Embedding vec) { table_[label] = std::move(vec); }

    EmbedResult embed(const std::vector<std::string>& inputs) override {
        EmbedResult res;
        for (const auto& label : inputs) {
            auto it = table_.find(label);
            if (it == table_.end())
                throw ProviderError("no embedding for: " + label);
            if (res.dimension == 0) res.dimension = it->second.size();
            res.vectors.push_back(it->second);
        }
        return res;
    }

private:
    std::unordered_map<std::string, Embedding> table_;
};

// Embeds `labels` through the provider and stores the results.
inline void embed_into_store(EmbeddingStore& store, EmbeddingProvider& provider,
                             const std::vector<NodeLabel>& labels) {
    if (labels.empty()) return;
    EmbedResult res = provider.embed(labels);
    if (res.vectors.size() != labels.size())
        throw ProviderError("provider returned " + std::to_string(res.vectors.size()) +
                            " vectors for " + std::to_string(labels.size()) + " inputs");
    for (std::size_t i = 0; i < labels.size(); ++i)
        store.set(labels[i], std::move(res.vectors[i]));
}

} // namespace hyperkg
