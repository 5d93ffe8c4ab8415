#include "swat/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>

namespace swat {

std::string_view to_string(BenchPhase phase) {
    switch (phase) {
        case BenchPhase::expert_query: return "expert_query";
        case BenchPhase::metric_competence: return "metric_competence";
        case BenchPhase::metric_cohesiveness: return "metric_cohesiveness";
        case BenchPhase::metric_tur: return "metric_tur";
        case BenchPhase::metric_tcr: return "metric_tcr";
        case BenchPhase::end_to_end: return "end_to_end";
    }
    return "expert_query";
}

std::optional<BenchPhase> parse_bench_phase(std::string_view text) {
    for (auto p : {BenchPhase::expert_query, BenchPhase::metric_competence, BenchPhase::metric_cohesiveness,
                   BenchPhase::metric_tur, BenchPhase::metric_tcr, BenchPhase::end_to_end}) {
        if (to_string(p) == text) return p;
    }
    return std::nullopt;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<Index> most_populated_areas(const GraphSnapshot& snapshot, std::size_t q) {
    std::vector<std::pair<std::size_t, Index>> sizes;
    for (std::size_t a = 0; a < snapshot.areas().size(); ++a) {
        auto n = snapshot.holders_of(static_cast<Index>(a)).size();
        if (n > 0) sizes.push_back({n, static_cast<Index>(a)});
    }
    if (sizes.size() < q)
        throw InsufficientAreas("snapshot has " + std::to_string(sizes.size()) + " populated areas, " +
                                std::to_string(q) + " needed");
    std::sort(sizes.begin(), sizes.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    std::vector<Index> out;
    for (std::size_t i = 0; i < q; ++i) out.push_back(sizes[i].second);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_ms(Fn&& fn) {
    auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Keeps results observable so the timed work is not optimized away.
volatile double g_sink = 0.0;

}  // namespace

std::vector<BenchRow> run_bench(const GraphSnapshot& snapshot, const BenchConfig& config) {
    if (config.areas_min < 2) throw InvalidParams("areas-min must be >= 2");
    if (config.areas_max < config.areas_min) throw InvalidParams("areas-max must be >= areas-min");
    if (config.k < 1) throw InvalidParams("k must be >= 1");
    if (config.reps < 1) throw InvalidParams("reps must be >= 1");

    const auto all_areas = most_populated_areas(snapshot, config.areas_max);
    const MetricWeights weights;
    std::vector<BenchRow> rows;

    for (std::size_t q = config.areas_min; q <= config.areas_max; ++q) {
        const std::vector<Index> areas(all_areas.begin(), all_areas.begin() + static_cast<std::ptrdiff_t>(q));
        const Team required = make_team(areas);
        const auto enumeration = enumerate_candidates(snapshot, areas, config.k, config.cap);
        const auto& candidates = enumeration.candidates;
        auto row = [&](BenchPhase phase, std::vector<double> samples) {
            rows.push_back({phase, q, config.k, enumeration.combinations, median(std::move(samples)), config.reps});
        };

        std::vector<double> samples;
        for (int r = 0; r < config.reps; ++r) {
            for (Index a : areas) {
                samples.push_back(time_ms([&] { g_sink = g_sink + top_experts(snapshot, a, config.k, false).size(); }));
            }
        }
        row(BenchPhase::expert_query, std::move(samples));

        samples.clear();
        for (int r = 0; r < config.reps; ++r) {
            samples.push_back(time_ms([&] {
                double s = 0;
                for (const auto& c : candidates) s += competence_score(snapshot, c.assignment, CompetenceMode::avg);
                g_sink = s;
            }));
        }
        row(BenchPhase::metric_competence, std::move(samples));

        samples.clear();
        for (int r = 0; r < config.reps; ++r) {
            samples.push_back(time_ms([&] {
                Team everyone;
                for (const auto& c : candidates) everyone.insert(everyone.end(), c.members.begin(), c.members.end());
                const DistanceTable table(snapshot, make_team(std::move(everyone)));
                double s = 0;
                for (const auto& c : candidates) s += social_cohesiveness(table, c.members);
                g_sink = s;
            }));
        }
        row(BenchPhase::metric_cohesiveness, std::move(samples));

        samples.clear();
        for (int r = 0; r < config.reps; ++r) {
            samples.push_back(time_ms([&] {
                std::size_t s = 0;
                for (const auto& c : candidates) s += team_user_repetition(snapshot, c.members);
                g_sink = static_cast<double>(s);
            }));
        }
        row(BenchPhase::metric_tur, std::move(samples));

        samples.clear();
        for (int r = 0; r < config.reps; ++r) {
            samples.push_back(time_ms([&] {
                double s = 0;
                for (const auto& c : candidates) s += team_concept_repetition(snapshot, c.members, required);
                g_sink = s;
            }));
        }
        row(BenchPhase::metric_tcr, std::move(samples));

        samples.clear();
        for (int r = 0; r < config.reps; ++r) {
            samples.push_back(time_ms([&] {
                auto e = enumerate_candidates(snapshot, areas, config.k, config.cap);
                auto ranked = rank_candidates(snapshot, std::move(e.candidates), areas, weights, CompetenceMode::avg, 20);
                g_sink = static_cast<double>(ranked.size());
            }));
        }
        row(BenchPhase::end_to_end, std::move(samples));
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "phase,areas_count,k,candidates_scored,elapsed_ms,reps\n";
    for (const auto& r : rows) {
        char ms[64];
        std::snprintf(ms, sizeof ms, "%.6f", r.elapsed_ms);
        out << to_string(r.phase) << ',' << r.areas_count << ',' << r.k << ',' << r.candidates_scored << ',' << ms
            << ',' << r.reps << '\n';
    }
}

std::vector<BenchRow> read_bench_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "phase,areas_count,k,candidates_scored,elapsed_ms,reps")
        throw FormatError("bench CSV header missing or wrong");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 6) throw FormatError("bench CSV row has " + std::to_string(cells.size()) + " cells");
        auto phase = parse_bench_phase(cells[0]);
        if (!phase) throw FormatError("unknown bench phase '" + cells[0] + "'");
        BenchRow r;
        r.phase = *phase;
        try {
            r.areas_count = std::stoul(cells[1]);
            r.k = std::stoi(cells[2]);
            r.candidates_scored = std::stoul(cells[3]);
            r.elapsed_ms = std::stod(cells[4]);
            r.reps = std::stoi(cells[5]);
        } catch (const std::exception&) {
            throw FormatError("bad number in bench CSV row: " + line);
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace swat
