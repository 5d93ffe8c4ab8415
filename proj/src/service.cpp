#include "swat/service.hpp"

#include <httplib.h>

#include <charconv>

namespace swat {

std::shared_ptr<const LoadedSnapshot> make_loaded(GraphSnapshot snapshot) {
    auto loaded = std::make_shared<LoadedSnapshot>();
    loaded->graph = std::make_shared<const GraphSnapshot>(std::move(snapshot));
    loaded->stats = compute_stats(*loaded->graph);
    return loaded;
}

IngestResult ingest_corpus(const std::filesystem::path& dir) {
    auto parsed = parse_corpus(dir);
    auto enriched = cross_validate_history(std::move(parsed.records));
    return {build_snapshot(enriched.records), std::move(parsed.anomalies), std::move(enriched.anomalies)};
}

Service::Service(std::shared_ptr<const LoadedSnapshot> snapshot) : snapshot_(std::move(snapshot)) {}

std::shared_ptr<const LoadedSnapshot> Service::current() const {
    std::lock_guard lock(mutex_);
    return snapshot_;
}

void Service::replace(std::shared_ptr<const LoadedSnapshot> next) {
    std::lock_guard lock(mutex_);
    snapshot_.swap(next);
}

namespace {

using api::Json;

HttpReply json_reply(const Json& body, int status = 200) { return {status, body.dump(), "application/json"}; }

HttpReply error_reply(const api::ApiError& error) { return json_reply(api::error_body(error), error.http_status()); }

std::optional<std::string> param(const HttpRequest& req, const std::string& name) {
    auto it = req.params.find(name);
    if (it == req.params.end()) return std::nullopt;
    return it->second;
}

int int_param(const HttpRequest& req, const std::string& name, int fallback) {
    auto text = param(req, name);
    if (!text) return fallback;
    int value = 0;
    auto [end, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
    if (ec != std::errc{} || end != text->data() + text->size() || value < 1)
        throw InvalidParams("'" + name + "' must be a positive integer");
    return value;
}

bool bool_param(const HttpRequest& req, const std::string& name) {
    auto text = param(req, name);
    if (!text || *text == "false" || *text == "0") return false;
    if (*text == "true" || *text == "1" || text->empty()) return true;
    throw InvalidParams("'" + name + "' must be true or false");
}

Json parse_body(const std::string& body) {
    Json parsed = Json::parse(body, nullptr, false);
    if (parsed.is_discarded()) throw InvalidParams("request body is not valid JSON");
    return parsed;
}

}  // namespace

HttpReply Service::reload(const Json& body) {
    if (!body.is_object() || !body.contains("corpus_dir") || !body["corpus_dir"].is_string())
        throw InvalidParams("'corpus_dir' is required");
    auto result = ingest_corpus(body["corpus_dir"].get<std::string>());
    auto loaded = make_loaded(std::move(result.snapshot));
    Json out;
    out["reloaded"] = true;
    out["individuals"] = loaded->graph->individuals().size();
    out["areas"] = loaded->graph->areas().size();
    out["anomalies"] = result.parse_anomalies.entries.size();
    out["derived_edges"] = result.derived.entries.size();
    replace(std::move(loaded));
    return json_reply(out);
}

HttpReply Service::dispatch(const HttpRequest& req) {
    try {
        const auto loaded = current();
        const GraphSnapshot& snap = *loaded->graph;
        const std::string& path = req.path;

        if (req.method == "GET") {
            if (path == "/api/concepts/suggest") {
                auto q = param(req, "q");
                if (!q) throw InvalidParams("query parameter 'q' is required");
                return json_reply(api::suggest(snap, *q, int_param(req, "limit", 10)));
            }
            if (path == "/api/experts") {
                auto area = param(req, "area");
                if (!area) throw InvalidParams("query parameter 'area' is required");
                return json_reply(api::experts(snap, *area, int_param(req, "k", 20), bool_param(req, "expand")));
            }
            if (path == "/api/concepts/related") {
                auto area = param(req, "area");
                if (!area) throw InvalidParams("query parameter 'area' is required");
                return json_reply(api::related(snap, *area));
            }
            if (path == "/api/stats") return json_reply(api::stats(loaded->stats));
            static const std::string kPeople = "/api/individuals/";
            static const std::string kEgo = "/ego";
            if (path.starts_with(kPeople) && path.ends_with(kEgo) && path.size() > kPeople.size() + kEgo.size()) {
                std::string id = path.substr(kPeople.size(), path.size() - kPeople.size() - kEgo.size());
                return json_reply(api::ego(snap, id, int_param(req, "radius", 1)));
            }
        } else if (req.method == "POST") {
            if (path == "/api/teams/recommend")
                return json_reply(api::recommend(snap, api::parse_recommend_request(parse_body(req.body))));
            if (path == "/api/teams/score")
                return json_reply(api::score(snap, api::parse_score_request(parse_body(req.body))));
            if (path == "/api/admin/reload") return reload(parse_body(req.body));
        }
        return error_reply({api::ErrorCode::bad_request, "no endpoint " + req.method + " " + path});
    } catch (...) {
        return error_reply(api::classify_current());
    }
}

void Service::mount(httplib::Server& server, const std::optional<std::filesystem::path>& ui_dir) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

    auto adapt = [this](const httplib::Request& in, httplib::Response& out) {
        HttpRequest req{in.method, in.path, {}, in.body};
        for (const auto& [k, v] : in.params) req.params.emplace(k, v);
        auto reply = dispatch(req);
        out.status = reply.status;
        out.set_content(reply.body, reply.content_type);
    };
    server.Get(R"(/api/.*)", adapt);
    server.Post(R"(/api/.*)", adapt);
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& out) { out.status = 204; });

    if (ui_dir) server.set_mount_point("/", ui_dir->string());
}

}  // namespace swat
