#include "swat/concept_index.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace swat {

std::string_view to_string(MatchKind kind) {
    switch (kind) {
        case MatchKind::exact: return "exact";
        case MatchKind::name_prefix: return "name-prefix";
        case MatchKind::token_prefix: return "token-prefix";
        case MatchKind::alias: return "alias";
    }
    return "token-prefix";
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Number of token starts in `text` from which `text` begins with `query`.
int token_prefix_matches(std::string_view text, std::string_view query) {
    int n = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        bool token_start = is_word_char(text[i]) && (i == 0 || !is_word_char(text[i - 1]));
        if (token_start && text.substr(i).starts_with(query)) ++n;
    }
    return n;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<SuggestionHit> suggest(const GraphSnapshot& snapshot, std::string_view query, int limit) {
    if (limit < 1) throw InvalidParams("limit must be >= 1");
    const std::string q = lower(trim(query));
    if (q.empty()) return {};

    std::vector<SuggestionHit> hits;
    const auto areas = snapshot.areas();
    for (std::size_t a = 0; a < areas.size(); ++a) {
        const auto& area = areas[a];
        const std::string name = lower(area.name);
        bool exact = name == q;
        const bool name_prefix = name.starts_with(q);
        const int name_tokens = token_prefix_matches(name, q);
        int alias_tokens = 0;
        for (const auto& alias : area.aliases) {
            const std::string al = lower(alias);
            exact = exact || al == q;
            alias_tokens += token_prefix_matches(al, q);
        }
        const double score = 3.0 * exact + 2.0 * name_prefix + name_tokens + alias_tokens;
        if (score <= 0.0) continue;

        MatchKind kind = exact && name == q ? MatchKind::exact
                         : name_prefix      ? MatchKind::name_prefix
                         : name_tokens > 0  ? MatchKind::token_prefix
                         : exact            ? MatchKind::exact
                                            : MatchKind::alias;
        hits.push_back({static_cast<Index>(a), area.name, score, kind});
    }
    std::sort(hits.begin(), hits.end(), [](const SuggestionHit& x, const SuggestionHit& y) {
        if (x.score != y.score) return x.score > y.score;
        if (x.name != y.name) return x.name < y.name;
        return x.area < y.area;
    });
    if (hits.size() > static_cast<std::size_t>(limit)) hits.resize(static_cast<std::size_t>(limit));
    return hits;
}

std::vector<RelatedHit> related(const GraphSnapshot& snapshot, std::string_view area) {
    Index a = snapshot.area_index(area);
    std::vector<RelatedHit> out;
    for (const auto& r : snapshot.relations_from(a)) out.push_back({r.area, r.kind, r.similarity});
    return out;
}

std::vector<ExpertHit> top_experts(const GraphSnapshot& snapshot, Index area, int k, bool expand) {
    if (k < 1) throw InvalidParams("k must be >= 1");
    const auto limit = static_cast<std::size_t>(k);
    const auto direct = snapshot.holders_of(area);

    auto ranks_before = [](const ExpertHit& x, const ExpertHit& y) {
        if (x.score() != y.score()) return x.score() > y.score();
        return x.individual < y.individual;
    };

    if (!expand || snapshot.relations_from(area).empty()) {
        std::vector<ExpertHit> out;
        out.reserve(std::min(limit, direct.size()));
        for (std::size_t i = 0; i < direct.size() && i < limit; ++i) {
            out.push_back({direct[i].individual, area, direct[i].weight, std::nullopt});
        }
        return out;
    }

    // Best hit per individual across the area and its relations.
    std::unordered_map<Index, ExpertHit> best;
    for (const auto& h : direct) best.emplace(h.individual, ExpertHit{h.individual, area, h.weight, std::nullopt});
    for (const auto& rel : snapshot.relations_from(area)) {
        for (const auto& h : snapshot.holders_of(rel.area)) {
            ExpertHit hit{h.individual, area, h.weight, ViaRelated{rel.area, h.weight * rel.similarity}};
            auto [it, fresh] = best.try_emplace(h.individual, hit);
            if (!fresh && hit.score() > it->second.score()) it->second = hit;
        }
    }
    std::vector<ExpertHit> out;
    out.reserve(best.size());
    for (auto& [_, hit] : best) out.push_back(hit);
    const std::size_t keep = std::min(limit, out.size());
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), ranks_before);
    out.resize(keep);
    return out;
}

std::vector<ExpertHit> top_experts(const GraphSnapshot& snapshot, std::string_view area, int k, bool expand) {
    return top_experts(snapshot, snapshot.area_index(area), k, expand);
}

}  // namespace swat
