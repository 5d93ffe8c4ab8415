#include "swat/api.hpp"

#include <algorithm>
#include <array>

namespace swat::api {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::unknown_area: return "unknown_area";
        case ErrorCode::unknown_individual: return "unknown_individual";
        case ErrorCode::bad_request: return "bad_request";
        case ErrorCode::candidate_explosion: return "candidate_explosion";
        case ErrorCode::internal: return "internal";
    }
    return "internal";
}

int ApiError::http_status() const {
    switch (code) {
        case ErrorCode::unknown_area:
        case ErrorCode::unknown_individual: return 404;
        case ErrorCode::bad_request: return 400;
        case ErrorCode::candidate_explosion: return 422;
        case ErrorCode::internal: return 500;
    }
    return 500;
}

ApiError classify(const std::exception& e) {
    if (dynamic_cast<const UnknownArea*>(&e)) return {ErrorCode::unknown_area, e.what()};
    if (dynamic_cast<const UnknownIndividual*>(&e)) return {ErrorCode::unknown_individual, e.what()};
    if (dynamic_cast<const CandidateExplosion*>(&e)) return {ErrorCode::candidate_explosion, e.what()};
    if (dynamic_cast<const InvalidParams*>(&e) || dynamic_cast<const EmptyAssignment*>(&e) ||
        dynamic_cast<const IntegrityError*>(&e) || dynamic_cast<const IoError*>(&e) ||
        dynamic_cast<const FormatError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e))
        return {ErrorCode::bad_request, e.what()};
    return {ErrorCode::internal, e.what()};
}

ApiError classify_current() {
    try {
        throw;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        return {ErrorCode::internal, "unknown failure"};
    }
}

Json error_body(const ApiError& error) {
    Json body;
    body["error"]["code"] = std::string(to_string(error.code));
    body["error"]["message"] = error.message;
    return body;
}

namespace {

std::vector<std::string> string_array(const Json& body, const char* name) {
    auto it = body.find(name);
    if (it == body.end() || !it->is_array()) throw InvalidParams(std::string("'") + name + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw InvalidParams(std::string("'") + name + "' must hold strings");
        out.push_back(v.get<std::string>());
    }
    if (out.empty()) throw InvalidParams(std::string("'") + name + "' must not be empty");
    return out;
}

CompetenceMode mode_field(const Json& body) {
    auto it = body.find("mode");
    if (it == body.end() || it->is_null()) return CompetenceMode::avg;
    if (!it->is_string()) throw InvalidParams("'mode' must be \"avg\" or \"max\"");
    auto mode = parse_competence_mode(it->get<std::string>());
    if (!mode) throw InvalidParams("'mode' must be \"avg\" or \"max\"");
    return *mode;
}

MetricWeights weights_field(const Json& body) {
    auto it = body.find("weights");
    if (it == body.end() || it->is_null()) return MetricWeights{};
    return parse_weights(*it);
}

long long positive_int(const Json& body, const char* name, long long fallback) {
    auto it = body.find(name);
    if (it == body.end() || it->is_null()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 1)
        throw InvalidParams(std::string("'") + name + "' must be a positive integer");
    return it->get<long long>();
}

Json person(const GraphSnapshot& snap, Index i) {
    Json o;
    o["id"] = snap.individual(i).id;
    o["name"] = snap.individual(i).name;
    return o;
}

Json topic(const GraphSnapshot& snap, Index a) {
    Json o;
    o["id"] = snap.area(a).id;
    o["name"] = snap.area(a).name;
    return o;
}

Json raw_json(const MetricValues& raw) {
    Json o;
    o["competence"] = raw.competence;
    o["cohesiveness"] = raw.cohesiveness;
    o["user_repetition"] = raw.user_repetition;
    o["concept_repetition"] = raw.concept_repetition;
    return o;
}

Json normalized_json(const std::array<double, 4>& n) {
    Json o;
    o["competence"] = n[0];
    o["cohesiveness"] = n[1];
    o["user_repetition"] = n[2];
    o["concept_repetition"] = n[3];
    return o;
}

Json assignment_json(const GraphSnapshot& snap, const Assignment& assignment) {
    Json o = Json::object();
    for (const auto& [area, members] : assignment) {
        Json ids = Json::array();
        for (Index m : members) ids.push_back(snap.individual(m).id);
        o[snap.area(area).id] = std::move(ids);
    }
    return o;
}

}  // namespace

MetricWeights parse_weights(const Json& weights) {
    if (!weights.is_object()) throw InvalidParams("'weights' must be an object");
    static constexpr const char* kNames[] = {"competence", "cohesiveness", "user_repetition", "concept_repetition"};
    std::array<double, 4> w{};
    for (const auto& [key, value] : weights.items()) {
        auto it = std::find_if(std::begin(kNames), std::end(kNames), [&](const char* n) { return key == n; });
        if (it == std::end(kNames)) throw InvalidParams("unknown metric weight '" + key + "'");
        if (!value.is_number()) throw InvalidParams("metric weight '" + key + "' must be a number");
        w[static_cast<std::size_t>(it - std::begin(kNames))] = value.get<double>();
    }
    return MetricWeights(w[0], w[1], w[2], w[3]);
}

Json weights_json(const MetricWeights& weights) { return normalized_json(weights.values()); }

RecommendRequest parse_recommend_request(const Json& body) {
    if (!body.is_object()) throw InvalidParams("request body must be a JSON object");
    RecommendRequest req;
    req.areas = string_array(body, "areas");
    req.k = static_cast<int>(std::min<long long>(positive_int(body, "k", 20), 1'000'000));
    req.weights = weights_field(body);
    req.mode = mode_field(body);
    req.limit = static_cast<std::size_t>(positive_int(body, "limit", 20));
    return req;
}

ScoreRequest parse_score_request(const Json& body) {
    if (!body.is_object()) throw InvalidParams("request body must be a JSON object");
    ScoreRequest req;
    req.members = string_array(body, "members");
    req.areas = string_array(body, "areas");
    req.weights = weights_field(body);
    req.mode = mode_field(body);
    return req;
}

Json suggest(const GraphSnapshot& snapshot, std::string_view query, int limit) {
    Json out = Json::array();
    for (const auto& hit : swat::suggest(snapshot, query, limit)) {
        Json o;
        o["area"] = snapshot.area(hit.area).id;
        o["name"] = hit.name;
        o["score"] = hit.score;
        o["match_kind"] = std::string(to_string(hit.match_kind));
        out.push_back(std::move(o));
    }
    return out;
}

Json experts(const GraphSnapshot& snapshot, std::string_view area, int k, bool expand) {
    Json out = Json::array();
    for (const auto& hit : top_experts(snapshot, area, k, expand)) {
        Json o;
        o["individual"] = snapshot.individual(hit.individual).id;
        o["name"] = snapshot.individual(hit.individual).name;
        o["area"] = snapshot.area(hit.area).id;
        o["competence"] = hit.competence;
        if (hit.via_related) {
            o["via_related"]["area"] = snapshot.area(hit.via_related->area).id;
            o["via_related"]["weight"] = hit.via_related->weight;
        } else {
            o["via_related"] = nullptr;
        }
        o["score"] = hit.score();
        out.push_back(std::move(o));
    }
    return out;
}

Json related(const GraphSnapshot& snapshot, std::string_view area) {
    Json out = Json::array();
    for (const auto& r : swat::related(snapshot, area)) {
        Json o;
        o["area"] = snapshot.area(r.area).id;
        o["kind"] = std::string(to_string(r.kind));
        o["similarity"] = r.similarity;
        out.push_back(std::move(o));
    }
    return out;
}

Json stats(const CorpusStats& s) {
    Json o;
    o["individuals_count"] = s.individuals_count;
    o["concepts_count"] = s.concepts_count;
    o["teams_count"] = s.teams_count;
    o["avg_connections_per_individual"] = s.avg_connections_per_individual;
    o["avg_individuals_per_team"] = s.avg_individuals_per_team;
    o["max_individuals_per_team"] = s.max_individuals_per_team;
    o["organizations_count"] = s.organizations_count;
    o["countries_count"] = s.countries_count;
    o["authors_histogram"] = Json::object();
    for (const auto& [n, c] : s.authors_histogram) o["authors_histogram"][std::to_string(n)] = c;
    o["authors_cdf"] = Json::object();
    for (const auto& [n, f] : s.authors_cdf) o["authors_cdf"][std::to_string(n)] = f;
    o["yearly_single_author_pct"] = Json::object();
    for (const auto& [y, f] : s.yearly_single_author_pct) o["yearly_single_author_pct"][std::to_string(y)] = f;
    o["yearly_max_authors"] = Json::object();
    for (const auto& [y, n] : s.yearly_max_authors) o["yearly_max_authors"][std::to_string(y)] = n;
    return o;
}

Json ego(const GraphSnapshot& snapshot, std::string_view individual, int radius) {
    auto net = ego_network(snapshot, individual, radius);
    Json o;
    o["center"] = snapshot.individual(net.center).id;
    o["radius"] = radius;
    o["individuals"] = Json::array();
    for (Index i : net.individuals) o["individuals"].push_back(person(snapshot, i));
    o["social"] = Json::array();
    for (const auto& e : net.social) {
        Json s;
        s["src"] = snapshot.individual(e.src).id;
        s["dst"] = snapshot.individual(e.dst).id;
        s["dimension"] = snapshot.dimensions()[e.dimension];
        s["strength"] = e.strength;
        o["social"].push_back(std::move(s));
    }
    o["competence"] = Json::array();
    for (const auto& c : net.competence) {
        Json s;
        s["individual"] = snapshot.individual(c.individual).id;
        s["area"] = snapshot.area(c.area).id;
        s["weight"] = c.weight;
        s["derived"] = c.derived;
        o["competence"].push_back(std::move(s));
    }
    return o;
}

Json recommend(const GraphSnapshot& snapshot, const RecommendRequest& request, std::size_t cap) {
    std::vector<Index> areas;
    for (const auto& id : request.areas) areas.push_back(snapshot.area_index(id));
    auto enumeration = enumerate_candidates(snapshot, areas, request.k, cap);
    const std::size_t distinct = enumeration.candidates.size();
    auto ranked = rank_candidates(snapshot, std::move(enumeration.candidates), areas, request.weights, request.mode,
                                  request.limit);

    Json o;
    o["areas"] = Json::array();
    for (Index a : areas) o["areas"].push_back(topic(snapshot, a));
    o["k"] = request.k;
    o["mode"] = std::string(to_string(request.mode));
    o["limit"] = request.limit;
    o["weights"] = weights_json(request.weights);
    o["combinations"] = enumeration.combinations;
    o["candidates"] = distinct;
    o["teams"] = Json::array();
    std::size_t rank = 0;
    for (const auto& c : ranked) {
        Json t;
        t["rank"] = ++rank;
        t["members"] = Json::array();
        for (Index m : c.members) t["members"].push_back(person(snapshot, m));
        t["assignment"] = assignment_json(snapshot, c.assignment);
        t["raw"] = raw_json(c.scorecard.raw);
        t["normalized"] = normalized_json(c.scorecard.normalized);
        t["total"] = c.scorecard.total;
        o["teams"].push_back(std::move(t));
    }
    return o;
}

Json score(const GraphSnapshot& snapshot, const ScoreRequest& request) {
    auto scored = score_team(snapshot, request.members, request.areas, request.weights, request.mode);
    Json o;
    o["members"] = Json::array();
    for (Index m : scored.members) o["members"].push_back(person(snapshot, m));
    o["areas"] = Json::array();
    for (const auto& [area, _] : scored.assignment) o["areas"].push_back(topic(snapshot, area));
    o["mode"] = std::string(to_string(request.mode));
    o["weights"] = weights_json(request.weights);
    o["assignment"] = assignment_json(snapshot, scored.assignment);
    o["raw"] = raw_json(scored.scorecard.raw);
    o["normalized"] = normalized_json(scored.scorecard.normalized);
    o["total"] = scored.scorecard.total;

    const DistanceTable table(snapshot, scored.members);
    o["distances"] = Json::array();
    for (std::size_t i = 0; i < scored.members.size(); ++i) {
        for (std::size_t j = i + 1; j < scored.members.size(); ++j) {
            Json d;
            d["a"] = snapshot.individual(scored.members[i]).id;
            d["b"] = snapshot.individual(scored.members[j]).id;
            auto hops = table.distance(scored.members[i], scored.members[j]);
            d["distance"] = hops ? Json(*hops) : Json(nullptr);
            o["distances"].push_back(std::move(d));
        }
    }
    return o;
}

}  // namespace swat::api
