#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "swat/model.hpp"

namespace swat {

enum class AnomalyAction { clamped, dropped, derived_edge_added };

std::string_view to_string(AnomalyAction action);

struct Anomaly {
    Locator where;
    std::string rule;
    AnomalyAction action = AnomalyAction::dropped;
};

struct AnomalyReport {
    std::vector<Anomaly> entries;

    std::size_t count(AnomalyAction action) const;
    /// Clamped + dropped; derived edges are enrichment, not damage.
    std::size_t cleaning_count() const { return count(AnomalyAction::clamped) + count(AnomalyAction::dropped); }
    void append(const AnomalyReport& other);
};

struct ParsedCorpus {
    CorpusRecords records;
    AnomalyReport anomalies;
};

/// Lower and upper bound used when clamping out-of-range labels.
inline constexpr double kClampLow = 0.001;
inline constexpr double kClampHigh = 0.999;

/// File names inside a corpus directory.
namespace corpus_files {
inline constexpr const char* individuals = "individuals.jsonl";
inline constexpr const char* areas = "areas.jsonl";
inline constexpr const char* relations = "relations.jsonl";
inline constexpr const char* competence = "competence.jsonl";
inline constexpr const char* social = "social.jsonl";
inline constexpr const char* publications = "publications.jsonl";
}  // namespace corpus_files

/// Reads a corpus directory. individuals.jsonl and areas.jsonl must exist;
/// the other four files are optional and default to empty. Malformed lines are
/// dropped and out-of-range labels clamped, each with one anomaly entry.
/// Throws IoError (missing/unreadable file) or FormatError (a file that is
/// not line-delimited UTF-8 text).
ParsedCorpus parse_corpus(const std::filesystem::path& dir);

/// Writes records back as a corpus directory (created if missing). The
/// output is deterministic: same records, same bytes.
void write_corpus(const CorpusRecords& records, const std::filesystem::path& dir);

struct CrossValidated {
    CorpusRecords records;
    AnomalyReport anomalies;
};

/// Adds a derived competence edge with weight n/(n+2) for every
/// (individual, area) pair seen in n >= 1 multi-author publications but
/// missing from the competence records. Existing edges are left alone.
CrossValidated cross_validate_history(CorpusRecords records);

/// Weight of a derived competence edge supported by n publications.
double derived_weight(std::size_t n);

struct SyntheticParams {
    std::int64_t individuals = 0;
    std::int64_t areas = 0;
    std::int64_t publications = 0;
    std::int64_t dimensions = 1;
};

/// Seeded synthetic corpus. Throws InvalidParams when any count is < 1.
CorpusRecords generate_synthetic(const SyntheticParams& params, std::uint64_t seed);

struct CorpusStats {
    std::size_t individuals_count = 0;
    std::size_t concepts_count = 0;
    std::size_t teams_count = 0;
    double avg_connections_per_individual = 0.0;
    double avg_individuals_per_team = 0.0;
    std::size_t max_individuals_per_team = 0;
    std::size_t organizations_count = 0;
    std::size_t countries_count = 0;
    std::map<std::size_t, std::size_t> authors_histogram;
    std::map<std::size_t, double> authors_cdf;
    std::map<int, double> yearly_single_author_pct;
    std::map<int, std::size_t> yearly_max_authors;

    bool operator==(const CorpusStats&) const = default;
};

/// Corpus statistics. Team figures are over history teams; the author
/// histogram, CDF and yearly series are over all publications.
CorpusStats compute_stats(const GraphSnapshot& snapshot);

}  // namespace swat
