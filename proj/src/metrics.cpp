#include "swat/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

namespace swat {

std::string_view to_string(CompetenceMode mode) { return mode == CompetenceMode::max ? "max" : "avg"; }

std::optional<CompetenceMode> parse_competence_mode(std::string_view text) {
    if (text == "avg") return CompetenceMode::avg;
    if (text == "max") return CompetenceMode::max;
    return std::nullopt;
}

Team make_team(std::vector<Index> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

double competence_score(const GraphSnapshot& snapshot, const Assignment& assignment, CompetenceMode mode) {
    if (assignment.empty()) throw EmptyAssignment();
    double sum = 0.0;
    double best = 0.0;
    for (const auto& [area, members] : assignment) {
        double v = 0.0;
        for (Index m : members) v = std::max(v, snapshot.competence(m, area));
        sum += v;
        best = std::max(best, v);
    }
    return mode == CompetenceMode::max ? best : sum / static_cast<double>(assignment.size());
}

DistanceTable::DistanceTable(const GraphSnapshot& snapshot, std::span<const Index> individuals, int horizon,
                             unsigned threads)
    : members_(make_team({individuals.begin(), individuals.end()})) {
    const std::size_t n = members_.size();
    dist_.assign(n * n, -1);
    for (std::size_t r = 0; r < n; ++r) dist_[r * n + r] = 0;

    // Row r searches from member r towards the members after it; distance is
    // symmetric, so each pair is written by exactly one row.
    auto fill_row = [&](std::size_t r) {
        std::span<const Index> rest(members_.data() + r + 1, n - r - 1);
        if (rest.empty()) return;
        auto found = social_distances_from(snapshot, members_[r], rest, kAllDimensions, horizon);
        for (std::size_t c = 0; c < rest.size(); ++c) {
            int d = found[c] ? *found[c] : -1;
            dist_[r * n + (r + 1 + c)] = d;
            dist_[(r + 1 + c) * n + r] = d;
        }
    };

    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (threads <= 1) {
        for (std::size_t r = 0; r < n; ++r) fill_row(r);
        return;
    }
    std::atomic<std::size_t> next_row{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t r = next_row++; r < n; r = next_row++) fill_row(r);
        });
    }
}

bool DistanceTable::contains(Index a) const { return std::binary_search(members_.begin(), members_.end(), a); }

std::size_t DistanceTable::slot(Index a) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), a);
    if (it == members_.end() || *it != a) throw InvalidParams("individual not in distance table");
    return static_cast<std::size_t>(it - members_.begin());
}

std::optional<int> DistanceTable::distance(Index a, Index b) const {
    int d = dist_[slot(a) * members_.size() + slot(b)];
    if (d < 0) return std::nullopt;
    return d;
}

double social_cohesiveness(const DistanceTable& distances, std::span<const Index> team) {
    const std::size_t n = team.size();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (auto d = distances.distance(team[i], team[j]); d && *d > 0) sum += 1.0 / *d;
        }
    }
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double social_cohesiveness(const GraphSnapshot& snapshot, std::span<const Index> team, int horizon) {
    if (team.empty()) throw InvalidParams("team must have at least one member");
    for (Index m : team) {
        if (m >= snapshot.individuals().size()) throw UnknownIndividual("#" + std::to_string(m));
    }
    DistanceTable table(snapshot, team, horizon);
    return social_cohesiveness(table, team);
}

std::size_t team_user_repetition(const GraphSnapshot& snapshot, std::span<const Index> team) {
    const auto history = snapshot.history_teams();
    std::size_t count = 0;
    // Each history team is visited once: through its smallest member.
    for (Index m : team) {
        for (Index t : snapshot.teams_of(m)) {
            const auto& members = history[t].members;
            if (members.front() != m) continue;
            if (std::includes(team.begin(), team.end(), members.begin(), members.end())) ++count;
        }
    }
    return count;
}

double team_concept_repetition(const GraphSnapshot& snapshot, std::span<const Index> team,
                               std::span<const Index> required) {
    const auto history = snapshot.history_teams();
    std::vector<Index> relevant;
    for (Index m : team) {
        auto mine = snapshot.teams_of(m);
        relevant.insert(relevant.end(), mine.begin(), mine.end());
    }
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
    if (relevant.empty()) return 0.0;

    double sum = 0.0;
    for (Index t : relevant) {
        const auto& areas = history[t].areas;
        std::size_t common = 0;
        auto a = required.begin();
        auto b = areas.begin();
        while (a != required.end() && b != areas.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                ++common;
                ++a;
                ++b;
            }
        }
        const std::size_t unioned = required.size() + areas.size() - common;
        sum += unioned == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(unioned);
    }
    return sum / static_cast<double>(relevant.size());
}

}  // namespace swat
