#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "swat/team_formation.hpp"

namespace swat {

enum class BenchPhase { expert_query, metric_competence, metric_cohesiveness, metric_tur, metric_tcr, end_to_end };

std::string_view to_string(BenchPhase phase);
std::optional<BenchPhase> parse_bench_phase(std::string_view text);

struct BenchRow {
    BenchPhase phase = BenchPhase::expert_query;
    std::size_t areas_count = 0;
    int k = 0;
    /// Team combinations created and measured for this q (product of slate sizes).
    std::size_t candidates_scored = 0;
    /// Median over reps, milliseconds.
    double elapsed_ms = 0.0;
    int reps = 0;

    bool operator==(const BenchRow&) const = default;
};

struct BenchConfig {
    std::size_t areas_min = 2;
    std::size_t areas_max = 4;
    int k = 20;
    int reps = 5;
    std::size_t cap = 1'000'000;
};

/// The q areas with the most competence holders (ties by id). Throws
/// InsufficientAreas when fewer than q areas have any holder.
std::vector<Index> most_populated_areas(const GraphSnapshot& snapshot, std::size_t q);

/// Times expert retrieval, each metric over the full candidate set, and
/// end-to-end recommendation for every q in [areas_min, areas_max].
/// Six rows per q. Throws InvalidParams on a bad configuration.
std::vector<BenchRow> run_bench(const GraphSnapshot& snapshot, const BenchConfig& config);

/// CSV with header `phase,areas_count,k,candidates_scored,elapsed_ms,reps`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
/// Throws FormatError on a bad header or row.
std::vector<BenchRow> read_bench_csv(std::istream& in);

double median(std::vector<double> values);

}  // namespace swat
