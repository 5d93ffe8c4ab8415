#pragma once

// The three-graph model: a competence graph (individual -> expertise area,
// weighted), a social multigraph (directed, one edge per dimension and
// ordered pair), and a history hypergraph (past teams -> areas they worked
// on). A GraphSnapshot is built once and never mutated afterwards.
//
// Individuals and areas are stored sorted by id, so index order and id
// order agree. Every "ties by id" rule downstream relies on that.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swat/records.hpp"

namespace swat {

using Index = std::uint32_t;
using DimensionMask = std::uint64_t;

inline constexpr int kDefaultHorizon = 6;
inline constexpr DimensionMask kAllDimensions = ~DimensionMask{0};
inline constexpr std::size_t kMaxDimensions = 64;

struct CompetenceEdge {
    Index individual = 0;
    Index area = 0;
    double weight = 0.0;
    bool derived = false;
};

struct SocialEdge {
    Index src = 0;
    Index dst = 0;
    std::uint16_t dimension = 0;
    double strength = 0.0;
};

struct Publication {
    Id id;
    std::vector<Index> authors;  // order as published
    std::vector<Index> areas;    // sorted
    int year = 0;
    std::optional<std::string> venue;
};

struct HistoryTeam {
    std::vector<Index> members;  // sorted
    std::vector<Index> areas;    // sorted
    int year = 0;
    Index source_publication = 0;
};

struct RelatedArea {
    Index area = 0;
    RelationKind kind = RelationKind::similar;
    double similarity = 1.0;
};

/// Competence holder of one area, as stored in the per-area expert list.
struct Holder {
    Index individual = 0;
    double weight = 0.0;
};

/// One undirected neighbor in the union social graph. `dimensions` has bit d
/// set when an edge of dimension d exists in either direction.
struct Neighbor {
    Index individual = 0;
    DimensionMask dimensions = 0;
};

class GraphSnapshot {
public:
    GraphSnapshot() = default;

    std::span<const Individual> individuals() const { return individuals_; }
    std::span<const ExpertiseArea> areas() const { return areas_; }
    std::span<const std::string> dimensions() const { return dimensions_; }
    /// Sorted by (individual, area).
    std::span<const CompetenceEdge> competence_edges() const { return competence_; }
    std::span<const SocialEdge> social_edges() const { return social_; }
    std::span<const Publication> publications() const { return publications_; }
    std::span<const HistoryTeam> history_teams() const { return history_; }
    std::size_t relation_count() const { return relations_.size(); }
    std::chrono::system_clock::time_point build_timestamp() const { return built_at_; }

    const Individual& individual(Index i) const { return individuals_[i]; }
    const ExpertiseArea& area(Index a) const { return areas_[a]; }

    std::optional<Index> find_individual(std::string_view id) const;
    std::optional<Index> find_area(std::string_view id) const;
    std::optional<std::uint16_t> find_dimension(std::string_view name) const;

    /// Throwing lookups: UnknownIndividual / UnknownArea.
    Index individual_index(std::string_view id) const;
    Index area_index(std::string_view id) const;

    /// Competence weight of (individual, area), 0 when there is no edge.
    double competence(Index individual, Index area) const;
    std::span<const CompetenceEdge> competences_of(Index individual) const;
    /// Holders of an area ordered by weight descending, then individual.
    std::span<const Holder> holders_of(Index area) const;
    std::span<const Neighbor> neighbors(Index individual) const;
    /// Indices into history_teams() of the teams the individual belongs to.
    std::span<const Index> teams_of(Index individual) const;
    /// Relations whose `from` is the area, similarity descending then id.
    std::span<const RelatedArea> relations_from(Index area) const;

private:
    friend GraphSnapshot build_snapshot(const CorpusRecords& records,
                                        std::optional<std::chrono::system_clock::time_point> built_at);

    std::vector<Individual> individuals_;
    std::vector<ExpertiseArea> areas_;
    std::vector<std::string> dimensions_;
    std::vector<CompetenceEdge> competence_;
    std::vector<SocialEdge> social_;
    std::vector<Publication> publications_;
    std::vector<HistoryTeam> history_;

    std::vector<std::size_t> competence_offsets_;
    std::vector<std::size_t> holder_offsets_;
    std::vector<Holder> holders_;
    std::vector<std::size_t> neighbor_offsets_;
    std::vector<Neighbor> neighbors_;
    std::vector<std::size_t> team_offsets_;
    std::vector<Index> team_refs_;
    std::vector<std::size_t> relation_offsets_;
    std::vector<RelatedArea> relations_;

    std::chrono::system_clock::time_point built_at_{};
};

/// Validates every record and indexes the three graphs. History teams are
/// derived from publications with at least two authors and one area; other
/// publications are kept for statistics only. Throws IntegrityError naming
/// the offending record. `built_at` defaults to now.
GraphSnapshot build_snapshot(const CorpusRecords& records,
                             std::optional<std::chrono::system_clock::time_point> built_at = std::nullopt);

/// Inverse of build_snapshot up to locators: the records a snapshot was
/// built from, in canonical order.
CorpusRecords to_records(const GraphSnapshot& snapshot);

/// Bitmask selecting the named dimensions. Unknown names select nothing.
DimensionMask dimension_mask(const GraphSnapshot& snapshot, std::span<const std::string> names);

/// Hop count on the undirected union of the selected dimensions, or nullopt
/// when j is farther than `horizon` hops (or disconnected).
std::optional<int> social_distance(const GraphSnapshot& snapshot, Index i, Index j,
                                   DimensionMask dims = kAllDimensions, int horizon = kDefaultHorizon);

/// Distances from `source` to each of `targets`, one BFS with early exit.
std::vector<std::optional<int>> social_distances_from(const GraphSnapshot& snapshot, Index source,
                                                      std::span<const Index> targets,
                                                      DimensionMask dims = kAllDimensions,
                                                      int horizon = kDefaultHorizon);

/// Id-level entry point. `dims` restricts the dimensions considered; an
/// absent filter means all of them.
std::optional<int> shortest_social_distance(const GraphSnapshot& snapshot, std::string_view i,
                                            std::string_view j,
                                            const std::optional<std::vector<std::string>>& dims = std::nullopt,
                                            int horizon = kDefaultHorizon);

struct EgoNetwork {
    Index center = 0;
    std::vector<Index> individuals;  // sorted
    std::vector<SocialEdge> social;
    std::vector<CompetenceEdge> competence;
};

EgoNetwork ego_network(const GraphSnapshot& snapshot, std::string_view individual, int radius);

}  // namespace swat
