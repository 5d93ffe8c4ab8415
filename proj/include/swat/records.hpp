#pragma once

// Plain record types shared by ingestion (which produces them) and the graph
// model (which validates and indexes them). Ids are opaque strings.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swat/errors.hpp"

namespace swat {

using Id = std::string;

struct Individual {
    Id id;
    std::string name;
    std::vector<std::string> affiliations;
    std::optional<std::string> country;
    std::map<std::string, std::string> profile;

    bool operator==(const Individual&) const = default;
};

struct ExpertiseArea {
    Id id;
    std::string name;
    std::vector<std::string> aliases;

    bool operator==(const ExpertiseArea&) const = default;
};

enum class RelationKind { subsumes, similar, synonym };

std::string_view to_string(RelationKind kind);
std::optional<RelationKind> parse_relation_kind(std::string_view text);

struct AreaRelation {
    Id from;
    Id to;
    RelationKind kind = RelationKind::similar;
    double similarity = 1.0;

    bool operator==(const AreaRelation&) const = default;
};

struct CompetenceRecord {
    Id individual;
    Id area;
    double weight = 0.0;
    bool derived = false;

    bool operator==(const CompetenceRecord&) const = default;
};

struct SocialRecord {
    Id src;
    Id dst;
    std::string dimension;
    double strength = 0.0;

    bool operator==(const SocialRecord&) const = default;
};

struct PublicationRecord {
    Id id;
    std::vector<Id> authors;
    std::vector<Id> areas;
    int year = 0;
    std::optional<std::string> venue;

    bool operator==(const PublicationRecord&) const = default;
};

/// A record together with where it came from.
template <typename T>
struct Located {
    T value;
    Locator where;

    bool operator==(const Located&) const = default;
};

struct CorpusRecords {
    std::vector<Located<Individual>> individuals;
    std::vector<Located<ExpertiseArea>> areas;
    std::vector<Located<AreaRelation>> relations;
    std::vector<Located<CompetenceRecord>> competence;
    std::vector<Located<SocialRecord>> social;
    std::vector<Located<PublicationRecord>> publications;

    bool operator==(const CorpusRecords&) const = default;
};

}  // namespace swat
