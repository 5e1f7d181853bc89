#pragma once
// Error taxonomy. The service maps these onto HTTP statuses
// (not_found -> 404, data/usage -> 400, provider -> 502).

#include <stdexcept>
#include <string>

namespace hyperkg {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A referenced node, edge or embedding does not exist.
class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& what) : Error(what) {}
};

// Input violates a documented contract (malformed event, degenerate edge,
// inconsistent snapshot, empty-graph statistic, ...).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

// An external provider (embedding or extractor endpoint) failed or returned
// something outside its schema. Never silently coerced.
class ProviderError : public Error {
public:
    explicit ProviderError(const std::string& what) : Error(what) {}
};

} // namespace hyperkg
