#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "swat/api.hpp"

namespace httplib {
class Server;
}

namespace swat {

/// A snapshot together with data derived from it once per load.
struct LoadedSnapshot {
    std::shared_ptr<const GraphSnapshot> graph;
    CorpusStats stats;
};

std::shared_ptr<const LoadedSnapshot> make_loaded(GraphSnapshot snapshot);

/// Parses, cleans, cross-validates and builds a corpus directory.
struct IngestResult {
    GraphSnapshot snapshot;
    AnomalyReport parse_anomalies;
    AnomalyReport derived;
};
IngestResult ingest_corpus(const std::filesystem::path& dir);

struct HttpRequest {
    std::string method;  // GET, POST, OPTIONS
    std::string path;
    std::multimap<std::string, std::string> params;
    std::string body;
};

struct HttpReply {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// HTTP/JSON front end over an atomically replaceable snapshot. Requests in
/// flight keep the snapshot they started with.
class Service {
public:
    explicit Service(std::shared_ptr<const LoadedSnapshot> snapshot);

    std::shared_ptr<const LoadedSnapshot> current() const;
    void replace(std::shared_ptr<const LoadedSnapshot> next);

    /// Transport-independent routing of one /api/ request.
    HttpReply dispatch(const HttpRequest& request);

    /// Registers the /api/ routes, CORS handling and (optionally) static UI
    /// files on a server.
    void mount(httplib::Server& server, const std::optional<std::filesystem::path>& ui_dir);

private:
    HttpReply reload(const api::Json& body);

    mutable std::mutex mutex_;
    std::shared_ptr<const LoadedSnapshot> snapshot_;
};

}  // namespace swat
