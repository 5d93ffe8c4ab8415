#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swat/model.hpp"

namespace swat {

enum class MatchKind { exact, name_prefix, token_prefix, alias };

std::string_view to_string(MatchKind kind);

struct SuggestionHit {
    Index area = 0;
    std::string name;
    double score = 0.0;
    MatchKind match_kind = MatchKind::token_prefix;
};

/// Autocomplete over area names and aliases, case-insensitive.
///
/// Scoring per area: 3 if the query equals the name or an alias, plus 2 if
/// the name starts with the query, plus 1 for every token position (in the
/// name or any alias) from which the text starts with the query. Results are
/// ordered by score descending, then name, then id. An empty query yields no
/// hits. Throws InvalidParams when limit < 1.
std::vector<SuggestionHit> suggest(const GraphSnapshot& snapshot, std::string_view query, int limit);

struct RelatedHit {
    Index area = 0;
    RelationKind kind = RelationKind::similar;
    double similarity = 1.0;
};

/// Outgoing relations of an area, similarity descending. Throws UnknownArea.
std::vector<RelatedHit> related(const GraphSnapshot& snapshot, std::string_view area);

struct ViaRelated {
    Index area = 0;
    double weight = 0.0;  // competence x similarity
};

struct ExpertHit {
    Index individual = 0;
    Index area = 0;  // the queried area
    double competence = 0.0;  // raw weight on the area it was found through
    std::optional<ViaRelated> via_related;

    /// Weight used for ranking.
    double score() const { return via_related ? via_related->weight : competence; }
};

/// Best k holders of `area` ordered by weight descending, then individual id.
/// With `expand`, holders of related areas compete with a weight discounted by
/// the relation similarity; each individual appears once with its best weight.
std::vector<ExpertHit> top_experts(const GraphSnapshot& snapshot, Index area, int k, bool expand);
std::vector<ExpertHit> top_experts(const GraphSnapshot& snapshot, std::string_view area, int k, bool expand);

}  // namespace swat
