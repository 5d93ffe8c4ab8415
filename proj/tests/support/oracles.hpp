#pragma once

// Brute-force reference implementations. They work straight from the raw
// records with string ids, use dense matrices and std::set, and share no
// code with the library beyond the record types.

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swat/records.hpp"

namespace swat::oracle {

using Ids = std::set<std::string>;

/// All-pairs hop distances on the undirected union of every social record,
/// via Floyd-Warshall. Missing entries are unreachable.
class Distances {
public:
    explicit Distances(const CorpusRecords& rec, std::optional<std::set<std::string>> dims = std::nullopt) {
        for (const auto& p : rec.individuals) slot_.emplace(p.value.id, slot_.size());
        const std::size_t n = slot_.size();
        d_.assign(n * n, kInf);
        for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0;
        for (const auto& s : rec.social) {
            if (dims && !dims->count(s.value.dimension)) continue;
            const auto a = slot_.at(s.value.src);
            const auto b = slot_.at(s.value.dst);
            d_[a * n + b] = d_[b * n + a] = 1;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (d_[i * n + k] + d_[k * n + j] < d_[i * n + j]) d_[i * n + j] = d_[i * n + k] + d_[k * n + j];
        n_ = n;
    }

    std::optional<int> operator()(const std::string& a, const std::string& b, int horizon = 6) const {
        const long v = d_[slot_.at(a) * n_ + slot_.at(b)];
        if (v >= kInf || v > horizon) return std::nullopt;
        return static_cast<int>(v);
    }

private:
    static constexpr long kInf = std::numeric_limits<int>::max();
    std::map<std::string, std::size_t> slot_;
    std::vector<long> d_;
    std::size_t n_ = 0;
};

struct PastTeam {
    Ids members;
    Ids areas;
};

/// History teams in publication order: at least two authors and one area.
inline std::vector<PastTeam> history(const CorpusRecords& rec) {
    std::vector<PastTeam> out;
    for (const auto& p : rec.publications) {
        Ids members(p.value.authors.begin(), p.value.authors.end());
        Ids areas(p.value.areas.begin(), p.value.areas.end());
        if (members.size() >= 2 && !areas.empty()) out.push_back({members, areas});
    }
    return out;
}

inline double weight(const CorpusRecords& rec, const std::string& who, const std::string& what) {
    for (const auto& c : rec.competence)
        if (c.value.individual == who && c.value.area == what) return c.value.weight;
    return 0.0;
}

inline double competence(const CorpusRecords& rec, const std::map<std::string, Ids>& assignment, bool max_mode) {
    double sum = 0.0;
    double best = 0.0;
    for (const auto& [area, members] : assignment) {
        double v = 0.0;
        for (const auto& m : members) v = std::max(v, weight(rec, m, area));
        sum += v;
        best = std::max(best, v);
    }
    return max_mode ? best : sum / static_cast<double>(assignment.size());
}

inline double cohesiveness(const Distances& dist, const Ids& team, int horizon = 6) {
    if (team.size() < 2) return 0.0;
    const std::vector<std::string> v(team.begin(), team.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (auto d = dist(v[i], v[j], horizon)) sum += 1.0 / *d;
    const double n = static_cast<double>(v.size());
    return 2.0 * sum / (n * (n - 1.0));
}

inline std::size_t user_repetition(const std::vector<PastTeam>& past, const Ids& team) {
    std::size_t n = 0;
    for (const auto& t : past)
        if (std::includes(team.begin(), team.end(), t.members.begin(), t.members.end())) ++n;
    return n;
}

inline double jaccard(const Ids& a, const Ids& b) {
    Ids u = a;
    u.insert(b.begin(), b.end());
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    return u.empty() ? 0.0 : static_cast<double>(inter) / static_cast<double>(u.size());
}

inline double concept_repetition(const std::vector<PastTeam>& past, const Ids& team, const Ids& required) {
    double sum = 0.0;
    std::size_t relevant = 0;
    for (const auto& t : past) {
        bool shares = false;
        for (const auto& m : t.members) shares = shares || team.count(m);
        if (!shares) continue;
        sum += jaccard(required, t.areas);
        ++relevant;
    }
    return relevant == 0 ? 0.0 : sum / static_cast<double>(relevant);
}

/// Top-k holders of `area`, by weight descending then id.
inline std::vector<std::string> slate(const CorpusRecords& rec, const std::string& area, int k) {
    std::vector<std::pair<double, std::string>> holders;
    for (const auto& c : rec.competence)
        if (c.value.area == area) holders.emplace_back(-c.value.weight, c.value.individual);
    std::sort(holders.begin(), holders.end());
    std::vector<std::string> out;
    for (const auto& h : holders) {
        if (static_cast<int>(out.size()) == k) break;
        out.push_back(h.second);
    }
    return out;
}

struct RankedTeam {
    std::vector<std::string> members;
    std::map<std::string, Ids> assignment;
    std::array<double, 4> normalized{};
    double total = 0.0;
};

/// Exhaustive enumeration and rescoring of every team formed by one slate
/// member per area, ordered by total descending then member ids.
inline std::vector<RankedTeam> rank(const CorpusRecords& rec, const std::vector<std::string>& required, int k,
                                    std::array<double, 4> weights, bool max_mode, std::size_t limit) {
    double wsum = weights[0] + weights[1] + weights[2] + weights[3];
    for (auto& w : weights) w /= wsum;

    std::vector<std::vector<std::string>> slates;
    for (const auto& a : required) slates.push_back(slate(rec, a, k));

    std::map<Ids, std::map<std::string, Ids>> merged;
    std::vector<std::string> pick(required.size());
    auto recurse = [&](auto& self, std::size_t depth) -> void {
        if (depth == required.size()) {
            Ids team(pick.begin(), pick.end());
            if (team.size() < 2) return;
            auto& assignment = merged[team];
            for (std::size_t i = 0; i < required.size(); ++i) assignment[required[i]].insert(pick[i]);
            return;
        }
        for (const auto& who : slates[depth]) {
            pick[depth] = who;
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);

    const Distances dist(rec);
    const auto past = history(rec);
    const Ids req(required.begin(), required.end());

    std::vector<RankedTeam> out;
    std::vector<std::size_t> tur;
    for (const auto& [team, assignment] : merged) {
        RankedTeam r;
        r.members.assign(team.begin(), team.end());
        r.assignment = assignment;
        r.normalized[0] = competence(rec, assignment, max_mode);
        r.normalized[1] = cohesiveness(dist, team);
        r.normalized[3] = concept_repetition(past, team, req);
        tur.push_back(user_repetition(past, team));
        out.push_back(std::move(r));
    }
    const std::size_t tur_max = tur.empty() ? 0 : *std::max_element(tur.begin(), tur.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& r = out[i];
        r.normalized[2] = tur_max == 0 ? 0.0 : static_cast<double>(tur[i]) / static_cast<double>(tur_max);
        r.total = 0.0;
        for (std::size_t m = 0; m < 4; ++m) r.total += weights[m] * r.normalized[m];
    }
    std::sort(out.begin(), out.end(), [](const RankedTeam& a, const RankedTeam& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.members < b.members;
    });
    if (out.size() > limit) out.resize(limit);
    return out;
}

struct Stats {
    std::size_t individuals = 0, concepts = 0, teams = 0, max_team = 0, orgs = 0, countries = 0;
    double avg_connections = 0.0, avg_team = 0.0;
    std::map<std::size_t, std::size_t> histogram;
    std::map<std::size_t, double> cdf;
    std::map<int, double> single_pct;
    std::map<int, std::size_t> yearly_max;
};

inline Stats stats(const CorpusRecords& rec) {
    Stats s;
    s.individuals = rec.individuals.size();
    s.concepts = rec.areas.size();

    std::map<std::string, Ids> neighbors;
    for (const auto& e : rec.social) {
        neighbors[e.value.src].insert(e.value.dst);
        neighbors[e.value.dst].insert(e.value.src);
    }
    std::size_t degree = 0;
    for (const auto& [who, ns] : neighbors) degree += ns.size();
    if (s.individuals) s.avg_connections = static_cast<double>(degree) / static_cast<double>(s.individuals);

    Ids orgs, countries;
    for (const auto& p : rec.individuals) {
        orgs.insert(p.value.affiliations.begin(), p.value.affiliations.end());
        if (p.value.country && !p.value.country->empty()) countries.insert(*p.value.country);
    }
    s.orgs = orgs.size();
    s.countries = countries.size();

    const auto past = history(rec);
    s.teams = past.size();
    std::size_t members = 0;
    for (const auto& t : past) {
        members += t.members.size();
        s.max_team = std::max(s.max_team, t.members.size());
    }
    if (s.teams) s.avg_team = static_cast<double>(members) / static_cast<double>(s.teams);

    const std::size_t total = rec.publications.size();
    std::map<int, std::size_t> per_year, single_per_year;
    for (const auto& p : rec.publications) {
        const std::size_t n = Ids(p.value.authors.begin(), p.value.authors.end()).size();
        ++s.histogram[n];
        ++per_year[p.value.year];
        if (n == 1) ++single_per_year[p.value.year];
        s.yearly_max[p.value.year] = std::max(s.yearly_max[p.value.year], n);
    }
    for (const auto& [n, count] : s.histogram) {
        std::size_t at_most = 0;
        for (const auto& [m, c] : s.histogram)
            if (m <= n) at_most += c;
        s.cdf[n] = static_cast<double>(at_most) / static_cast<double>(total);
    }
    for (const auto& [year, count] : per_year)
        s.single_pct[year] = static_cast<double>(single_per_year[year]) / static_cast<double>(count);
    return s;
}

}  // namespace swat::oracle
