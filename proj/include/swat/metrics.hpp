#pragma once

// The four team-quality metrics. All functions are pure over a snapshot.
// A team is a sorted, duplicate-free list of individual indices.

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "swat/model.hpp"

namespace swat {

using Team = std::vector<Index>;

/// Required area -> members covering it.
using Assignment = std::map<Index, std::vector<Index>>;

enum class CompetenceMode { avg, max };

std::string_view to_string(CompetenceMode mode);
std::optional<CompetenceMode> parse_competence_mode(std::string_view text);

struct MetricValues {
    double competence = 0.0;
    double cohesiveness = 0.0;
    std::size_t user_repetition = 0;
    double concept_repetition = 0.0;

    bool operator==(const MetricValues&) const = default;
};

/// Per area, the best competence among its assigned members (0 for a
/// missing edge or an empty member set); then the mean (avg) or the maximum
/// (max) over areas. Throws EmptyAssignment when no area is assigned.
double competence_score(const GraphSnapshot& snapshot, const Assignment& assignment, CompetenceMode mode);

/// Pairwise hop distances among a fixed set of individuals, computed up
/// front so scoring many overlapping teams does one BFS per individual.
class DistanceTable {
public:
    /// `threads` > 1 runs the per-individual searches concurrently; the
    /// table is the same either way.
    DistanceTable(const GraphSnapshot& snapshot, std::span<const Index> individuals, int horizon = kDefaultHorizon,
                  unsigned threads = 1);

    /// Hop distance, nullopt when unreachable within the horizon. Both
    /// individuals must be part of the table.
    std::optional<int> distance(Index a, Index b) const;
    bool contains(Index a) const;

private:
    std::vector<Index> members_;  // sorted
    std::vector<int> dist_;       // row-major, -1 = unreachable
    std::size_t slot(Index a) const;
};

/// Mean inverse pairwise hop distance over all unordered member pairs
/// (unreachable pairs contribute 0). A one-member team scores 0.
double social_cohesiveness(const GraphSnapshot& snapshot, std::span<const Index> team,
                           int horizon = kDefaultHorizon);
double social_cohesiveness(const DistanceTable& distances, std::span<const Index> team);

/// Number of history teams whose member set is a subset of `team`.
std::size_t team_user_repetition(const GraphSnapshot& snapshot, std::span<const Index> team);

/// Mean Jaccard similarity between `required` and the area sets of history
/// teams sharing at least one member with `team`; 0 when there are none.
/// Both spans must be sorted.
double team_concept_repetition(const GraphSnapshot& snapshot, std::span<const Index> team,
                               std::span<const Index> required);

/// Sorted, duplicate-free copy.
Team make_team(std::vector<Index> members);

}  // namespace swat
