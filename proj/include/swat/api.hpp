#pragma once

// JSON request/response shapes shared by the HTTP service and the CLI.
// Both front ends render through these functions, so the same inputs give
// byte-identical bodies.

#include <exception>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swat/ingestion.hpp"
#include "swat/team_formation.hpp"

namespace swat::api {

using Json = nlohmann::ordered_json;

enum class ErrorCode { unknown_area, unknown_individual, bad_request, candidate_explosion, internal };

std::string_view to_string(ErrorCode code);

struct ApiError {
    ErrorCode code = ErrorCode::internal;
    std::string message;

    int http_status() const;
};

/// Maps a library exception onto the closed error vocabulary.
ApiError classify(const std::exception& e);
/// Same, for the exception currently being handled.
ApiError classify_current();

/// {"error": {"code": ..., "message": ...}}
Json error_body(const ApiError& error);

struct RecommendRequest {
    std::vector<std::string> areas;
    int k = 20;
    MetricWeights weights;
    CompetenceMode mode = CompetenceMode::avg;
    std::size_t limit = 20;
};

struct ScoreRequest {
    std::vector<std::string> members;
    std::vector<std::string> areas;
    MetricWeights weights;
    CompetenceMode mode = CompetenceMode::avg;
};

/// Both parsers throw InvalidParams on a malformed body.
RecommendRequest parse_recommend_request(const Json& body);
ScoreRequest parse_score_request(const Json& body);
/// {"competence": w, ...}; absent keys count as 0.
MetricWeights parse_weights(const Json& weights);

Json weights_json(const MetricWeights& weights);

Json suggest(const GraphSnapshot& snapshot, std::string_view query, int limit);
Json experts(const GraphSnapshot& snapshot, std::string_view area, int k, bool expand);
Json related(const GraphSnapshot& snapshot, std::string_view area);
Json stats(const CorpusStats& stats);
Json ego(const GraphSnapshot& snapshot, std::string_view individual, int radius);
Json recommend(const GraphSnapshot& snapshot, const RecommendRequest& request,
               std::size_t cap = kDefaultCandidateCap);
/// ScoreCard plus the pairwise social distances between members.
Json score(const GraphSnapshot& snapshot, const ScoreRequest& request);

}  // namespace swat::api
