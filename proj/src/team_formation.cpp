#include "swat/team_formation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

namespace swat {

MetricWeights::MetricWeights(double competence, double cohesiveness, double user_repetition,
                             double concept_repetition)
    : w_{competence, cohesiveness, user_repetition, concept_repetition} {
    double sum = 0.0;
    for (double w : w_) {
        if (!std::isfinite(w) || w < 0.0) throw InvalidParams("metric weights must be finite and >= 0");
        sum += w;
    }
    if (sum <= 0.0) throw InvalidParams("at least one metric weight must be > 0");
    for (double& w : w_) w /= sum;
}

double weighted_total(const std::array<double, 4>& normalized, const MetricWeights& weights) {
    double total = 0.0;
    for (std::size_t m = 0; m < 4; ++m) total += weights.values()[m] * normalized[m];
    return total;
}

namespace {

struct TeamHash {
    std::size_t operator()(const Team& t) const noexcept {
        std::size_t h = t.size();
        for (Index x : t) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

void insert_sorted(std::vector<Index>& v, Index x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace

Enumeration enumerate_candidates(const GraphSnapshot& snapshot, std::span<const Index> required, int k,
                                 std::size_t cap) {
    if (required.empty()) throw InvalidParams("at least one expertise area is required");
    if (k < 1) throw InvalidParams("k must be >= 1");
    for (std::size_t i = 0; i < required.size(); ++i) {
        if (required[i] >= snapshot.areas().size()) throw UnknownArea("#" + std::to_string(required[i]));
        for (std::size_t j = 0; j < i; ++j) {
            if (required[i] == required[j])
                throw InvalidParams("expertise area '" + snapshot.area(required[i]).id + "' requested twice");
        }
    }

    Enumeration out;
    double product = 1.0;
    for (Index area : required) {
        out.slates.push_back(top_experts(snapshot, area, k, false));
        product *= static_cast<double>(out.slates.back().size());
    }
    if (product > static_cast<double>(cap)) throw CandidateExplosion(product, cap);
    out.combinations = static_cast<std::size_t>(product);
    if (out.combinations == 0) return out;

    const std::size_t q = required.size();
    std::unordered_map<Team, Assignment, TeamHash> merged;
    std::vector<std::size_t> pick(q, 0);
    Team members;
    members.reserve(q);
    for (std::size_t combo = 0; combo < out.combinations; ++combo) {
        members.clear();
        for (std::size_t a = 0; a < q; ++a) members.push_back(out.slates[a][pick[a]].individual);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.size() >= 2) {
            auto& assignment = merged[members];
            for (std::size_t a = 0; a < q; ++a) insert_sorted(assignment[required[a]], out.slates[a][pick[a]].individual);
        }
        // Odometer step, last area fastest.
        for (std::size_t a = q; a-- > 0;) {
            if (++pick[a] < out.slates[a].size()) break;
            pick[a] = 0;
        }
    }

    out.candidates.reserve(merged.size());
    for (auto& [team, assignment] : merged) {
        CandidateTeam c;
        c.members = team;
        c.assignment = std::move(assignment);
        out.candidates.push_back(std::move(c));
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const CandidateTeam& x, const CandidateTeam& y) { return x.members < y.members; });
    return out;
}

Enumeration enumerate_candidates(const GraphSnapshot& snapshot, std::span<const std::string> required, int k,
                                 std::size_t cap) {
    std::vector<Index> areas;
    for (const auto& id : required) areas.push_back(snapshot.area_index(id));
    return enumerate_candidates(snapshot, areas, k, cap);
}

std::vector<CandidateTeam> rank_candidates(const GraphSnapshot& snapshot, std::vector<CandidateTeam> candidates,
                                           std::span<const Index> required, const MetricWeights& weights,
                                           CompetenceMode mode, std::size_t limit, unsigned threads) {
    if (candidates.empty()) return candidates;
    const Team required_sorted = make_team({required.begin(), required.end()});

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    Team everyone;
    for (const auto& c : candidates) everyone.insert(everyone.end(), c.members.begin(), c.members.end());
    const DistanceTable distances(snapshot, make_team(std::move(everyone)), kDefaultHorizon, threads);

    auto score_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& c = candidates[i];
            auto& raw = c.scorecard.raw;
            raw.competence = competence_score(snapshot, c.assignment, mode);
            raw.cohesiveness = social_cohesiveness(distances, c.members);
            raw.user_repetition = team_user_repetition(snapshot, c.members);
            raw.concept_repetition = team_concept_repetition(snapshot, c.members, required_sorted);
        }
    };

    const std::size_t n = candidates.size();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, (n + 255) / 256));
    if (threads <= 1) {
        score_range(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t begin = t * chunk;
            std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(score_range, begin, end);
        }
    }

    std::size_t tur_max = 0;
    for (const auto& c : candidates) tur_max = std::max(tur_max, c.scorecard.raw.user_repetition);
    for (auto& c : candidates) {
        auto& card = c.scorecard;
        card.weights = weights;
        card.normalized = {card.raw.competence, card.raw.cohesiveness,
                           tur_max == 0 ? 0.0
                                        : static_cast<double>(card.raw.user_repetition) / static_cast<double>(tur_max),
                           card.raw.concept_repetition};
        card.total = weighted_total(card.normalized, weights);
    }

    std::sort(candidates.begin(), candidates.end(), [](const CandidateTeam& x, const CandidateTeam& y) {
        if (x.scorecard.total != y.scorecard.total) return x.scorecard.total > y.scorecard.total;
        return x.members < y.members;
    });
    if (candidates.size() > limit) candidates.resize(limit);
    return candidates;
}

ScoredTeam score_team(const GraphSnapshot& snapshot, std::span<const std::string> members,
                      std::span<const std::string> required, const MetricWeights& weights, CompetenceMode mode) {
    if (members.empty()) throw InvalidParams("a team needs at least one member");
    if (required.empty()) throw InvalidParams("at least one expertise area is required");

    std::vector<Index> people;
    for (const auto& id : members) people.push_back(snapshot.individual_index(id));
    std::vector<Index> areas;
    for (const auto& id : required) areas.push_back(snapshot.area_index(id));

    ScoredTeam out;
    out.members = make_team(std::move(people));
    const Team required_sorted = make_team(std::move(areas));
    for (Index area : required_sorted) {
        auto& covering = out.assignment[area];
        for (Index m : out.members) {
            if (snapshot.competence(m, area) > 0.0) covering.push_back(m);
        }
    }

    auto& card = out.scorecard;
    card.raw.competence = competence_score(snapshot, out.assignment, mode);
    card.raw.cohesiveness = social_cohesiveness(snapshot, out.members);
    card.raw.user_repetition = team_user_repetition(snapshot, out.members);
    card.raw.concept_repetition = team_concept_repetition(snapshot, out.members, required_sorted);
    const double n = static_cast<double>(card.raw.user_repetition);
    card.normalized = {card.raw.competence, card.raw.cohesiveness, n / (n + 1.0), card.raw.concept_repetition};
    card.weights = weights;
    card.total = weighted_total(card.normalized, weights);
    return out;
}

}  // namespace swat
