#include "swat/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

namespace swat {

std::string_view to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::subsumes: return "subsumes";
        case RelationKind::similar: return "similar";
        case RelationKind::synonym: return "synonym";
    }
    return "similar";
}

std::optional<RelationKind> parse_relation_kind(std::string_view text) {
    if (text == "subsumes") return RelationKind::subsumes;
    if (text == "similar") return RelationKind::similar;
    if (text == "synonym") return RelationKind::synonym;
    return std::nullopt;
}

namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

template <typename T, typename Proj>
std::optional<Index> find_sorted(const std::vector<T>& items, std::string_view id, Proj proj) {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [&](const T& item, std::string_view key) { return proj(item) < key; });
    if (it == items.end() || proj(*it) != id) return std::nullopt;
    return static_cast<Index>(it - items.begin());
}

// Builds CSR offsets for `count` buckets from a key extractor over sorted data.
template <typename T, typename Key>
std::vector<std::size_t> csr_offsets(const std::vector<T>& sorted, std::size_t count, Key key) {
    std::vector<std::size_t> offsets(count + 1, 0);
    for (const auto& item : sorted) ++offsets[key(item) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    return offsets;
}

template <typename T>
std::span<const T> slice(const std::vector<T>& data, const std::vector<std::size_t>& offsets, std::size_t i) {
    if (i + 1 >= offsets.size()) return {};
    return std::span<const T>(data).subspan(offsets[i], offsets[i + 1] - offsets[i]);
}

}  // namespace

std::optional<Index> GraphSnapshot::find_individual(std::string_view id) const {
    return find_sorted(individuals_, id, [](const Individual& x) -> std::string_view { return x.id; });
}

std::optional<Index> GraphSnapshot::find_area(std::string_view id) const {
    return find_sorted(areas_, id, [](const ExpertiseArea& x) -> std::string_view { return x.id; });
}

std::optional<std::uint16_t> GraphSnapshot::find_dimension(std::string_view name) const {
    auto idx = find_sorted(dimensions_, name, [](const std::string& x) -> std::string_view { return x; });
    if (!idx) return std::nullopt;
    return static_cast<std::uint16_t>(*idx);
}

Index GraphSnapshot::individual_index(std::string_view id) const {
    if (auto i = find_individual(id)) return *i;
    throw UnknownIndividual(std::string(id));
}

Index GraphSnapshot::area_index(std::string_view id) const {
    if (auto a = find_area(id)) return *a;
    throw UnknownArea(std::string(id));
}

double GraphSnapshot::competence(Index individual, Index area) const {
    auto edges = competences_of(individual);
    auto it = std::lower_bound(edges.begin(), edges.end(), area,
                               [](const CompetenceEdge& e, Index a) { return e.area < a; });
    if (it == edges.end() || it->area != area) return 0.0;
    return it->weight;
}

std::span<const CompetenceEdge> GraphSnapshot::competences_of(Index individual) const {
    return slice(competence_, competence_offsets_, individual);
}

std::span<const Holder> GraphSnapshot::holders_of(Index area) const {
    return slice(holders_, holder_offsets_, area);
}

std::span<const Neighbor> GraphSnapshot::neighbors(Index individual) const {
    return slice(neighbors_, neighbor_offsets_, individual);
}

std::span<const Index> GraphSnapshot::teams_of(Index individual) const {
    return slice(team_refs_, team_offsets_, individual);
}

std::span<const RelatedArea> GraphSnapshot::relations_from(Index area) const {
    return slice(relations_, relation_offsets_, area);
}

GraphSnapshot build_snapshot(const CorpusRecords& records,
                             std::optional<std::chrono::system_clock::time_point> built_at) {
    GraphSnapshot snap;

    // Individuals and areas, sorted by id.
    {
        std::vector<const Located<Individual>*> order;
        order.reserve(records.individuals.size());
        for (const auto& r : records.individuals) {
            if (r.value.id.empty()) throw IntegrityError(r.where, "individual id is empty");
            if (r.value.name.empty()) throw IntegrityError(r.where, "individual '" + r.value.id + "' has no name");
            order.push_back(&r);
        }
        std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->value.id < b->value.id; });
        for (std::size_t k = 1; k < order.size(); ++k) {
            if (order[k]->value.id == order[k - 1]->value.id)
                throw IntegrityError(order[k]->where, "duplicate individual id '" + order[k]->value.id + "'");
        }
        snap.individuals_.reserve(order.size());
        for (auto* r : order) snap.individuals_.push_back(r->value);
    }
    {
        std::vector<const Located<ExpertiseArea>*> order;
        for (const auto& r : records.areas) {
            if (r.value.id.empty()) throw IntegrityError(r.where, "area id is empty");
            if (r.value.name.empty()) throw IntegrityError(r.where, "area '" + r.value.id + "' has no name");
            std::set<std::string_view> seen;
            for (const auto& alias : r.value.aliases) {
                if (!seen.insert(alias).second)
                    throw IntegrityError(r.where, "area '" + r.value.id + "' repeats alias '" + alias + "'");
            }
            order.push_back(&r);
        }
        std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->value.id < b->value.id; });
        for (std::size_t k = 1; k < order.size(); ++k) {
            if (order[k]->value.id == order[k - 1]->value.id)
                throw IntegrityError(order[k]->where, "duplicate area id '" + order[k]->value.id + "'");
        }
        for (auto* r : order) snap.areas_.push_back(r->value);
    }

    const std::size_t n_people = snap.individuals_.size();
    const std::size_t n_areas = snap.areas_.size();

    auto person = [&](const Id& id, const Locator& where) {
        auto i = snap.find_individual(id);
        if (!i) throw IntegrityError(where, "dangling individual reference '" + id + "'");
        return *i;
    };
    auto topic = [&](const Id& id, const Locator& where) {
        auto a = snap.find_area(id);
        if (!a) throw IntegrityError(where, "dangling area reference '" + id + "'");
        return *a;
    };

    // Competence graph.
    {
        std::vector<std::pair<CompetenceEdge, const Locator*>> edges;
        edges.reserve(records.competence.size());
        for (const auto& r : records.competence) {
            const auto& c = r.value;
            if (!in_open_unit(c.weight))
                throw IntegrityError(r.where, "competence weight " + std::to_string(c.weight) + " outside (0,1)");
            edges.push_back({{person(c.individual, r.where), topic(c.area, r.where), c.weight, c.derived}, &r.where});
        }
        std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
            return std::tie(a.first.individual, a.first.area) < std::tie(b.first.individual, b.first.area);
        });
        for (std::size_t k = 1; k < edges.size(); ++k) {
            if (edges[k].first.individual == edges[k - 1].first.individual &&
                edges[k].first.area == edges[k - 1].first.area)
                throw IntegrityError(*edges[k].second, "duplicate competence edge");
        }
        snap.competence_.reserve(edges.size());
        for (const auto& e : edges) snap.competence_.push_back(e.first);
        snap.competence_offsets_ =
            csr_offsets(snap.competence_, n_people, [](const CompetenceEdge& e) { return e.individual; });

        snap.holders_.reserve(snap.competence_.size());
        std::vector<std::pair<Index, Holder>> by_area;
        by_area.reserve(snap.competence_.size());
        for (const auto& e : snap.competence_) by_area.push_back({e.area, {e.individual, e.weight}});
        std::sort(by_area.begin(), by_area.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            if (a.second.weight != b.second.weight) return a.second.weight > b.second.weight;
            return a.second.individual < b.second.individual;
        });
        for (const auto& [a, h] : by_area) snap.holders_.push_back(h);
        snap.holder_offsets_ = csr_offsets(by_area, n_areas, [](const auto& p) { return p.first; });
    }

    // Social multigraph.
    {
        std::set<std::string> names;
        for (const auto& r : records.social) {
            if (r.value.dimension.empty()) throw IntegrityError(r.where, "social edge without dimension");
            names.insert(r.value.dimension);
        }
        if (names.size() > kMaxDimensions)
            throw IntegrityError(Locator{"social", 0}, "more than 64 social dimensions");
        snap.dimensions_.assign(names.begin(), names.end());

        std::vector<std::pair<SocialEdge, const Locator*>> edges;
        edges.reserve(records.social.size());
        for (const auto& r : records.social) {
            const auto& s = r.value;
            Index src = person(s.src, r.where);
            Index dst = person(s.dst, r.where);
            if (src == dst) throw IntegrityError(r.where, "social self-loop on '" + s.src + "'");
            if (!in_open_unit(s.strength))
                throw IntegrityError(r.where, "social strength " + std::to_string(s.strength) + " outside (0,1)");
            edges.push_back({{src, dst, *snap.find_dimension(s.dimension), s.strength}, &r.where});
        }
        std::vector<std::size_t> order(edges.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = edges[a].first;
            const auto& y = edges[b].first;
            return std::tie(x.src, x.dst, x.dimension, a) < std::tie(y.src, y.dst, y.dimension, b);
        });
        for (std::size_t k = 1; k < order.size(); ++k) {
            const auto& x = edges[order[k]].first;
            const auto& y = edges[order[k - 1]].first;
            if (x.src == y.src && x.dst == y.dst && x.dimension == y.dimension)
                throw IntegrityError(*edges[order[k]].second, "duplicate social edge for dimension '" +
                                                                  snap.dimensions_[x.dimension] + "'");
        }
        snap.social_.reserve(edges.size());
        for (std::size_t k : order) snap.social_.push_back(edges[k].first);

        std::vector<std::pair<Index, Neighbor>> half;
        half.reserve(2 * snap.social_.size());
        for (const auto& e : snap.social_) {
            DimensionMask bit = DimensionMask{1} << e.dimension;
            half.push_back({e.src, {e.dst, bit}});
            half.push_back({e.dst, {e.src, bit}});
        }
        std::sort(half.begin(), half.end(), [](const auto& a, const auto& b) {
            return std::tie(a.first, a.second.individual) < std::tie(b.first, b.second.individual);
        });
        std::vector<std::pair<Index, Neighbor>> merged;
        merged.reserve(half.size());
        for (const auto& h : half) {
            if (!merged.empty() && merged.back().first == h.first &&
                merged.back().second.individual == h.second.individual) {
                merged.back().second.dimensions |= h.second.dimensions;
            } else {
                merged.push_back(h);
            }
        }
        snap.neighbors_.reserve(merged.size());
        for (const auto& [_, nb] : merged) snap.neighbors_.push_back(nb);
        snap.neighbor_offsets_ = csr_offsets(merged, n_people, [](const auto& p) { return p.first; });
    }

    // Area relations.
    {
        std::vector<std::pair<Index, RelatedArea>> rel;
        std::set<std::tuple<Index, Index, RelationKind>> seen;
        for (const auto& r : records.relations) {
            const auto& x = r.value;
            Index from = topic(x.from, r.where);
            Index to = topic(x.to, r.where);
            if (from == to) throw IntegrityError(r.where, "relation from an area to itself");
            if (!(x.similarity > 0.0 && x.similarity <= 1.0))
                throw IntegrityError(r.where, "relation similarity outside (0,1]");
            if (x.kind == RelationKind::synonym && x.similarity != 1.0)
                throw IntegrityError(r.where, "synonym relation requires similarity 1");
            if (!seen.insert({from, to, x.kind}).second) throw IntegrityError(r.where, "duplicate relation");
            rel.push_back({from, {to, x.kind, x.similarity}});
        }
        std::sort(rel.begin(), rel.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            if (a.second.similarity != b.second.similarity) return a.second.similarity > b.second.similarity;
            if (a.second.area != b.second.area) return a.second.area < b.second.area;
            return a.second.kind < b.second.kind;
        });
        for (const auto& [_, ra] : rel) snap.relations_.push_back(ra);
        snap.relation_offsets_ = csr_offsets(rel, n_areas, [](const auto& p) { return p.first; });
    }

    // Publications and the history hypergraph.
    {
        std::vector<std::string_view> ids;
        snap.publications_.reserve(records.publications.size());
        for (const auto& r : records.publications) {
            const auto& p = r.value;
            if (p.id.empty()) throw IntegrityError(r.where, "publication id is empty");
            if (p.authors.empty()) throw IntegrityError(r.where, "publication '" + p.id + "' has no authors");
            Publication pub;
            pub.id = p.id;
            pub.year = p.year;
            pub.venue = p.venue;
            std::unordered_set<Index> seen;
            for (const auto& a : p.authors) {
                Index i = person(a, r.where);
                if (!seen.insert(i).second)
                    throw IntegrityError(r.where, "publication '" + p.id + "' lists author '" + a + "' twice");
                pub.authors.push_back(i);
            }
            for (const auto& a : p.areas) pub.areas.push_back(topic(a, r.where));
            std::sort(pub.areas.begin(), pub.areas.end());
            if (std::adjacent_find(pub.areas.begin(), pub.areas.end()) != pub.areas.end())
                throw IntegrityError(r.where, "publication '" + p.id + "' repeats an area");
            snap.publications_.push_back(std::move(pub));
        }
        std::vector<std::pair<std::string_view, std::size_t>> by_id;
        for (std::size_t k = 0; k < snap.publications_.size(); ++k) by_id.push_back({snap.publications_[k].id, k});
        std::sort(by_id.begin(), by_id.end());
        for (std::size_t k = 1; k < by_id.size(); ++k) {
            if (by_id[k].first == by_id[k - 1].first)
                throw IntegrityError(records.publications[by_id[k].second].where,
                                     "duplicate publication id '" + std::string(by_id[k].first) + "'");
        }

        for (std::size_t k = 0; k < snap.publications_.size(); ++k) {
            const auto& pub = snap.publications_[k];
            if (pub.authors.size() < 2 || pub.areas.empty()) continue;
            HistoryTeam team;
            team.members = pub.authors;
            std::sort(team.members.begin(), team.members.end());
            team.areas = pub.areas;
            team.year = pub.year;
            team.source_publication = static_cast<Index>(k);
            snap.history_.push_back(std::move(team));
        }

        std::vector<std::pair<Index, Index>> refs;
        for (std::size_t t = 0; t < snap.history_.size(); ++t) {
            for (Index m : snap.history_[t].members) refs.push_back({m, static_cast<Index>(t)});
        }
        std::sort(refs.begin(), refs.end());
        snap.team_refs_.reserve(refs.size());
        for (const auto& [_, t] : refs) snap.team_refs_.push_back(t);
        snap.team_offsets_ = csr_offsets(refs, n_people, [](const auto& p) { return p.first; });
    }

    snap.built_at_ = built_at.value_or(std::chrono::system_clock::now());
    return snap;
}

CorpusRecords to_records(const GraphSnapshot& snap) {
    CorpusRecords out;
    std::size_t line = 0;
    for (const auto& i : snap.individuals()) out.individuals.push_back({i, {"individuals", ++line}});
    line = 0;
    for (const auto& a : snap.areas()) out.areas.push_back({a, {"areas", ++line}});
    line = 0;
    for (std::size_t a = 0; a < snap.areas().size(); ++a) {
        for (const auto& r : snap.relations_from(static_cast<Index>(a))) {
            out.relations.push_back(
                {{snap.area(static_cast<Index>(a)).id, snap.area(r.area).id, r.kind, r.similarity}, {"relations", ++line}});
        }
    }
    line = 0;
    for (const auto& c : snap.competence_edges()) {
        out.competence.push_back(
            {{snap.individual(c.individual).id, snap.area(c.area).id, c.weight, c.derived}, {"competence", ++line}});
    }
    line = 0;
    for (const auto& s : snap.social_edges()) {
        out.social.push_back({{snap.individual(s.src).id, snap.individual(s.dst).id,
                               snap.dimensions()[s.dimension], s.strength},
                              {"social", ++line}});
    }
    line = 0;
    for (const auto& p : snap.publications()) {
        PublicationRecord rec;
        rec.id = p.id;
        for (Index a : p.authors) rec.authors.push_back(snap.individual(a).id);
        for (Index a : p.areas) rec.areas.push_back(snap.area(a).id);
        rec.year = p.year;
        rec.venue = p.venue;
        out.publications.push_back({std::move(rec), {"publications", ++line}});
    }
    return out;
}

DimensionMask dimension_mask(const GraphSnapshot& snapshot, std::span<const std::string> names) {
    DimensionMask mask = 0;
    for (const auto& n : names) {
        if (auto d = snapshot.find_dimension(n)) mask |= DimensionMask{1} << *d;
    }
    return mask;
}

std::vector<std::optional<int>> social_distances_from(const GraphSnapshot& snapshot, Index source,
                                                      std::span<const Index> targets, DimensionMask dims,
                                                      int horizon) {
    if (horizon < 1) throw InvalidParams("horizon must be >= 1");
    const std::size_t n = snapshot.individuals().size();
    std::vector<std::optional<int>> out(targets.size());

    std::vector<int> dist(n, -1);
    dist[source] = 0;
    std::size_t remaining = 0;
    std::vector<char> wanted(n, 0);
    for (Index t : targets) {
        if (!wanted[t]) {
            wanted[t] = 1;
            ++remaining;
        }
    }
    if (wanted[source]) --remaining;

    std::vector<Index> frontier{source};
    std::vector<Index> next;
    for (int depth = 1; depth <= horizon && remaining > 0 && !frontier.empty(); ++depth) {
        next.clear();
        for (std::size_t f = 0; f < frontier.size() && remaining > 0; ++f) {
            for (const auto& nb : snapshot.neighbors(frontier[f])) {
                if ((nb.dimensions & dims) == 0 || dist[nb.individual] >= 0) continue;
                dist[nb.individual] = depth;
                next.push_back(nb.individual);
                if (wanted[nb.individual] && --remaining == 0) break;
            }
        }
        frontier.swap(next);
    }

    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (dist[targets[k]] >= 0) out[k] = dist[targets[k]];
    }
    return out;
}

std::optional<int> social_distance(const GraphSnapshot& snapshot, Index i, Index j, DimensionMask dims,
                                   int horizon) {
    const Index target[] = {j};
    return social_distances_from(snapshot, i, target, dims, horizon)[0];
}

std::optional<int> shortest_social_distance(const GraphSnapshot& snapshot, std::string_view i, std::string_view j,
                                            const std::optional<std::vector<std::string>>& dims, int horizon) {
    Index a = snapshot.individual_index(i);
    Index b = snapshot.individual_index(j);
    DimensionMask mask = dims ? dimension_mask(snapshot, *dims) : kAllDimensions;
    return social_distance(snapshot, a, b, mask, horizon);
}

EgoNetwork ego_network(const GraphSnapshot& snapshot, std::string_view individual, int radius) {
    Index center = snapshot.individual_index(individual);
    if (radius < 1) throw InvalidParams("radius must be >= 1");

    const std::size_t n = snapshot.individuals().size();
    std::vector<char> inside(n, 0);
    inside[center] = 1;
    EgoNetwork ego;
    ego.center = center;
    ego.individuals.push_back(center);

    std::vector<Index> frontier{center};
    std::vector<Index> next;
    for (int depth = 1; depth <= radius && !frontier.empty(); ++depth) {
        next.clear();
        for (Index u : frontier) {
            for (const auto& nb : snapshot.neighbors(u)) {
                if (inside[nb.individual]) continue;
                inside[nb.individual] = 1;
                ego.individuals.push_back(nb.individual);
                next.push_back(nb.individual);
            }
        }
        frontier.swap(next);
    }
    std::sort(ego.individuals.begin(), ego.individuals.end());

    for (Index i : ego.individuals) {
        for (const auto& c : snapshot.competences_of(i)) ego.competence.push_back(c);
    }
    for (const auto& e : snapshot.social_edges()) {
        if (inside[e.src] && inside[e.dst]) ego.social.push_back(e);
    }
    return ego;
}

}  // namespace swat
