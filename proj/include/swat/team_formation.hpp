#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "swat/concept_index.hpp"
#include "swat/metrics.hpp"

namespace swat {

inline constexpr std::size_t kDefaultCandidateCap = 200'000;

/// User preference over the four metrics, stored normalized to sum 1.
class MetricWeights {
public:
    /// Uniform weights.
    MetricWeights() : MetricWeights(1.0, 1.0, 1.0, 1.0) {}
    /// Throws InvalidParams on a negative or non-finite weight, or when all
    /// four are zero.
    MetricWeights(double competence, double cohesiveness, double user_repetition, double concept_repetition);

    double competence() const { return w_[0]; }
    double cohesiveness() const { return w_[1]; }
    double user_repetition() const { return w_[2]; }
    double concept_repetition() const { return w_[3]; }
    const std::array<double, 4>& values() const { return w_; }

    bool operator==(const MetricWeights&) const = default;

private:
    std::array<double, 4> w_{};
};

struct ScoreCard {
    MetricValues raw;
    /// competence, cohesiveness, user repetition, concept repetition; each in [0,1].
    std::array<double, 4> normalized{};
    double total = 0.0;
    MetricWeights weights;
};

struct CandidateTeam {
    Team members;
    Assignment assignment;
    ScoreCard scorecard;
};

struct Enumeration {
    std::vector<CandidateTeam> candidates;
    /// Cartesian-product size before singleton discard and dedup.
    std::size_t combinations = 0;
    /// Slate per required area, in request order.
    std::vector<std::vector<ExpertHit>> slates;
};

/// One expert per required area from each area's top-k slate (no
/// expansion). Member sets with fewer than two people are dropped; equal
/// member sets are merged with assignments unioned. Output is ordered by
/// member ids. Throws UnknownArea, InvalidParams (empty request, k < 1,
/// repeated area) or CandidateExplosion when the product exceeds `cap`.
Enumeration enumerate_candidates(const GraphSnapshot& snapshot, std::span<const Index> required, int k,
                                 std::size_t cap = kDefaultCandidateCap);
Enumeration enumerate_candidates(const GraphSnapshot& snapshot, std::span<const std::string> required, int k,
                                 std::size_t cap = kDefaultCandidateCap);

/// Total of a scorecard: weighted sum of the normalized metrics.
double weighted_total(const std::array<double, 4>& normalized, const MetricWeights& weights);

/// Scores every candidate, normalizes user repetition by the slate maximum,
/// then sorts by total descending (ties by member ids) and keeps `limit`.
/// `threads` = 0 picks the hardware concurrency; results do not depend on it.
std::vector<CandidateTeam> rank_candidates(const GraphSnapshot& snapshot, std::vector<CandidateTeam> candidates,
                                           std::span<const Index> required, const MetricWeights& weights,
                                           CompetenceMode mode, std::size_t limit, unsigned threads = 0);

struct ScoredTeam {
    Team members;
    Assignment assignment;
    ScoreCard scorecard;
};

/// What-if scoring of an arbitrary member list. Each required area is
/// assigned every member with a competence edge to it (possibly nobody).
/// User repetition is normalized as n/(n+1).
ScoredTeam score_team(const GraphSnapshot& snapshot, std::span<const std::string> members,
                      std::span<const std::string> required, const MetricWeights& weights, CompetenceMode mode);

}  // namespace swat
