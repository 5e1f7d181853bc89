#pragma once
// HTTP-backed providers: the embedding endpoint and the optional extractor
// pass-through. Any response outside the documented schema is a hard error.

#include <memory>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "hyperkg/embedding.hpp"
#include "hyperkg/errors.hpp"
#include "hyperkg/events.hpp"

namespace hyperkg {

// POST <base>/embed {"inputs": [...]} -> {"vectors": [[...], ...], "dimension": n}
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(const std::string& base_url) : base_url_(base_url) {}

    EmbedResult embed(const std::vector<std::string>& inputs) override {
        nlohmann::json body;
        body["inputs"] = inputs;
        httplib::Client client(base_url_);
        client.set_read_timeout(60, 0);
        auto res = client.Post("/embed", body.dump(), "application/json");
        if (!res)
            throw ProviderError("embedding endpoint unreachable: " + base_url_);
        if (res->status != 200)
            throw ProviderError("embedding endpoint returned status " +
                                std::to_string(res->status));
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& ex) {
            throw ProviderError(std::string("embedding response is not JSON: ") + ex.what());
        }
        if (!doc.is_object() || !doc.contains("vectors") || !doc.contains("dimension"))
            throw ProviderError("embedding response missing vectors/dimension");
        EmbedResult out;
        out.dimension = doc.at("dimension").get<std::size_t>();
        for (const auto& row : doc.at("vectors")) {
            Embedding vec;
            for (const auto& x : row) {
                if (!x.is_number())
                    throw ProviderError("embedding response contains a non-number");
                vec.push_back(x.get<float>());
            }
            if (vec.size() != out.dimension)
                throw ProviderError("embedding response vector does not match dimension");
            out.vectors.push_back(std::move(vec));
        }
        if (out.vectors.size() != inputs.size())
            throw ProviderError("embedding response count does not match inputs");
        return out;
    }

private:
    std::string base_url_;
};

// URLs select the HTTP backend; anything else is read as a TSV file.
inline std::unique_ptr<EmbeddingProvider> make_embedding_provider(const std::string& spec) {
    if (spec.empty()) throw ProviderError("no embedding provider configured");
    if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0)
        return std::make_unique<HttpEmbeddingProvider>(spec);
    return std::make_unique<FileEmbeddingProvider>(spec);
}

// Thin pass-through to an external extractor:
// POST <base>/extract {"chunk_id", "text"} -> {"events": [...]}.
class ExtractorClient {
public:
    explicit ExtractorClient(const std::string& base_url) : base_url_(base_url) {}

    std::vector<ExtractionEvent> extract(const std::string& chunk_id,
                                         const std::string& text) {
        nlohmann::json body;
        body["chunk_id"] = chunk_id;
        body["text"] = text;
        httplib::Client client(base_url_);
        client.set_read_timeout(300, 0);
        auto res = client.Post("/extract", body.dump(), "application/json");
        if (!res)
            throw ProviderError("extractor endpoint unreachable: " + base_url_);
        if (res->status != 200)
            throw ProviderError("extractor endpoint returned status " +
                                std::to_string(res->status));
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& ex) {
            throw ProviderError(std::string("extractor response is not JSON: ") + ex.what());
        }
        if (!doc.is_object() || !doc.contains("events") || !doc.at("events").is_array())
            throw ProviderError("extractor response missing events array");
        std::vector<ExtractionEvent> events;
        for (const auto& j : doc.at("events")) {
            try {
                events.push_back(detail::validate_event(j));
            } catch (const Error& ex) {
                throw ProviderError(std::string("extractor event violates schema: ") +
                                    ex.what());
            }
        }
        return events;
    }

private:
    std::string base_url_;
};

} // namespace hyperkg
