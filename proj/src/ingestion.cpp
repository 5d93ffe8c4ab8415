#include "swat/ingestion.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace swat {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(AnomalyAction action) {
    switch (action) {
        case AnomalyAction::clamped: return "clamped";
        case AnomalyAction::dropped: return "dropped";
        case AnomalyAction::derived_edge_added: return "derived-edge-added";
    }
    return "dropped";
}

std::size_t AnomalyReport::count(AnomalyAction action) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const Anomaly& a) { return a.action == action; }));
}

void AnomalyReport::append(const AnomalyReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

namespace {

// Thrown by the field readers; turns into a "dropped" anomaly for the line.
struct Malformed {
    std::string rule;
};

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        if (c == 0) return false;
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
        }
        i += len;
    }
    return true;
}

const json& field(const json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw Malformed{std::string("missing-field:") + name};
    return *it;
}

std::string string_field(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (!v.is_string()) throw Malformed{std::string("bad-type:") + name};
    auto s = v.get<std::string>();
    if (s.empty()) throw Malformed{std::string("empty-field:") + name};
    return s;
}

std::optional<std::string> optional_string(const json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw Malformed{std::string("bad-type:") + name};
    return it->get<std::string>();
}

std::vector<std::string> string_list(const json& obj, const char* name, bool required) {
    auto it = obj.find(name);
    if (it == obj.end()) {
        if (required) throw Malformed{std::string("missing-field:") + name};
        return {};
    }
    if (!it->is_array()) throw Malformed{std::string("bad-type:") + name};
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string() || v.get_ref<const std::string&>().empty())
            throw Malformed{std::string("bad-type:") + name};
        out.push_back(v.get<std::string>());
    }
    return out;
}

double number_field(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (!v.is_number()) throw Malformed{std::string("bad-type:") + name};
    return v.get<double>();
}

struct LineReader {
    std::string file;
    AnomalyReport* report;

    template <typename Fn>
    void read(const fs::path& path, bool required, Fn&& on_record) {
        if (!fs::exists(path)) {
            if (required) throw IoError("missing corpus file " + path.string());
            return;
        }
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path.string());
        std::string line;
        std::size_t lineno = 0;
        bool first_content = true;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            Locator where{file, lineno};
            if (!valid_utf8(line)) {
                if (first_content) throw FormatError(path.string() + " is not UTF-8 text");
                report->entries.push_back({where, "invalid-utf8", AnomalyAction::dropped});
                continue;
            }
            first_content = false;
            json obj = json::parse(line, nullptr, false);
            if (obj.is_discarded()) {
                report->entries.push_back({where, "malformed-json", AnomalyAction::dropped});
                continue;
            }
            if (!obj.is_object()) {
                report->entries.push_back({where, "not-an-object", AnomalyAction::dropped});
                continue;
            }
            try {
                on_record(obj, where);
            } catch (const Malformed& m) {
                report->entries.push_back({where, m.rule, AnomalyAction::dropped});
            } catch (const json::exception&) {
                report->entries.push_back({where, "malformed-record", AnomalyAction::dropped});
            }
        }
        if (in.bad()) throw IoError("read failure on " + path.string());
    }
};

// Clamps a label that should lie in (0,1); returns true when it changed.
bool clamp_label(double& x) {
    if (x > 0.0 && x < 1.0) return false;
    x = x <= 0.0 ? kClampLow : kClampHigh;
    return true;
}

// Removes repeated entries in place, keeping first occurrences.
bool dedup_keep_order(std::vector<std::string>& items) {
    std::unordered_set<std::string> seen;
    std::vector<std::string> out;
    for (auto& s : items) {
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    bool changed = out.size() != items.size();
    items = std::move(out);
    return changed;
}

}  // namespace

ParsedCorpus parse_corpus(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("corpus directory not found: " + dir.string());
    ParsedCorpus out;
    auto& rec = out.records;
    auto* report = &out.anomalies;

    LineReader{corpus_files::individuals, report}.read(
        dir / corpus_files::individuals, true, [&](const json& o, const Locator& where) {
            Individual i;
            i.id = string_field(o, "id");
            i.name = string_field(o, "name");
            i.affiliations = string_list(o, "affiliations", false);
            i.country = optional_string(o, "country");
            if (auto it = o.find("profile"); it != o.end() && !it->is_null()) {
                if (!it->is_object()) throw Malformed{"bad-type:profile"};
                for (const auto& [k, v] : it->items()) {
                    if (!v.is_string()) throw Malformed{"bad-type:profile"};
                    i.profile.emplace(k, v.get<std::string>());
                }
            }
            rec.individuals.push_back({std::move(i), where});
        });

    LineReader{corpus_files::areas, report}.read(dir / corpus_files::areas, true, [&](const json& o,
                                                                                      const Locator& where) {
        ExpertiseArea a;
        a.id = string_field(o, "id");
        a.name = string_field(o, "name");
        a.aliases = string_list(o, "aliases", false);
        if (dedup_keep_order(a.aliases)) report->entries.push_back({where, "duplicate-alias", AnomalyAction::dropped});
        rec.areas.push_back({std::move(a), where});
    });

    LineReader{corpus_files::relations, report}.read(
        dir / corpus_files::relations, false, [&](const json& o, const Locator& where) {
            AreaRelation r;
            r.from = string_field(o, "from");
            r.to = string_field(o, "to");
            auto kind = parse_relation_kind(string_field(o, "kind"));
            if (!kind) throw Malformed{"unknown-relation-kind"};
            r.kind = *kind;
            if (r.from == r.to) throw Malformed{"self-relation"};
            r.similarity = number_field(o, "similarity");
            if (r.kind == RelationKind::synonym && r.similarity != 1.0) {
                r.similarity = 1.0;
                report->entries.push_back({where, "synonym-similarity", AnomalyAction::clamped});
            } else if (!(r.similarity > 0.0 && r.similarity <= 1.0)) {
                r.similarity = r.similarity <= 0.0 ? kClampLow : 1.0;
                report->entries.push_back({where, "similarity-range", AnomalyAction::clamped});
            }
            rec.relations.push_back({std::move(r), where});
        });

    LineReader{corpus_files::competence, report}.read(
        dir / corpus_files::competence, false, [&](const json& o, const Locator& where) {
            CompetenceRecord c;
            c.individual = string_field(o, "individual");
            c.area = string_field(o, "area");
            c.weight = number_field(o, "weight");
            if (auto it = o.find("derived"); it != o.end()) {
                if (!it->is_boolean()) throw Malformed{"bad-type:derived"};
                c.derived = it->get<bool>();
            }
            if (clamp_label(c.weight)) report->entries.push_back({where, "weight-range", AnomalyAction::clamped});
            rec.competence.push_back({std::move(c), where});
        });

    LineReader{corpus_files::social, report}.read(dir / corpus_files::social, false, [&](const json& o,
                                                                                         const Locator& where) {
        SocialRecord s;
        s.src = string_field(o, "src");
        s.dst = string_field(o, "dst");
        s.dimension = string_field(o, "dimension");
        if (s.src == s.dst) throw Malformed{"self-loop"};
        s.strength = number_field(o, "strength");
        if (clamp_label(s.strength)) report->entries.push_back({where, "strength-range", AnomalyAction::clamped});
        rec.social.push_back({std::move(s), where});
    });

    LineReader{corpus_files::publications, report}.read(
        dir / corpus_files::publications, false, [&](const json& o, const Locator& where) {
            PublicationRecord p;
            p.id = string_field(o, "id");
            p.authors = string_list(o, "authors", true);
            if (p.authors.empty()) throw Malformed{"no-authors"};
            p.areas = string_list(o, "areas", false);
            const auto& year = field(o, "year");
            if (!year.is_number_integer()) throw Malformed{"bad-type:year"};
            p.year = year.get<int>();
            p.venue = optional_string(o, "venue");
            if (dedup_keep_order(p.authors))
                report->entries.push_back({where, "duplicate-author", AnomalyAction::dropped});
            if (dedup_keep_order(p.areas)) report->entries.push_back({where, "duplicate-area", AnomalyAction::dropped});
            rec.publications.push_back({std::move(p), where});
        });

    return out;
}

namespace {

template <typename T, typename Encode>
void write_lines(const fs::path& path, const std::vector<Located<T>>& items, Encode encode) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& item : items) {
        out << encode(item.value).dump() << '\n';
    }
    if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

void write_corpus(const CorpusRecords& records, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    write_lines(dir / corpus_files::individuals, records.individuals, [](const Individual& i) {
        ordered_json o;
        o["id"] = i.id;
        o["name"] = i.name;
        o["affiliations"] = i.affiliations;
        if (i.country) o["country"] = *i.country;
        o["profile"] = ordered_json::object();
        for (const auto& [k, v] : i.profile) o["profile"][k] = v;
        return o;
    });
    write_lines(dir / corpus_files::areas, records.areas, [](const ExpertiseArea& a) {
        ordered_json o;
        o["id"] = a.id;
        o["name"] = a.name;
        o["aliases"] = a.aliases;
        return o;
    });
    write_lines(dir / corpus_files::relations, records.relations, [](const AreaRelation& r) {
        ordered_json o;
        o["from"] = r.from;
        o["to"] = r.to;
        o["kind"] = std::string(to_string(r.kind));
        o["similarity"] = r.similarity;
        return o;
    });
    write_lines(dir / corpus_files::competence, records.competence, [](const CompetenceRecord& c) {
        ordered_json o;
        o["individual"] = c.individual;
        o["area"] = c.area;
        o["weight"] = c.weight;
        if (c.derived) o["derived"] = true;
        return o;
    });
    write_lines(dir / corpus_files::social, records.social, [](const SocialRecord& s) {
        ordered_json o;
        o["src"] = s.src;
        o["dst"] = s.dst;
        o["dimension"] = s.dimension;
        o["strength"] = s.strength;
        return o;
    });
    write_lines(dir / corpus_files::publications, records.publications, [](const PublicationRecord& p) {
        ordered_json o;
        o["id"] = p.id;
        o["authors"] = p.authors;
        o["areas"] = p.areas;
        o["year"] = p.year;
        if (p.venue) o["venue"] = *p.venue;
        return o;
    });
}

double derived_weight(std::size_t n) {
    const double x = static_cast<double>(n);
    return x / (x + 2.0);
}

CrossValidated cross_validate_history(CorpusRecords records) {
    struct PairHash {
        std::size_t operator()(const std::pair<std::string, std::string>& p) const {
            std::size_t h = std::hash<std::string>{}(p.first);
            return h ^ (std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
        }
    };
    using Key = std::pair<std::string, std::string>;

    std::unordered_set<Key, PairHash> existing;
    existing.reserve(records.competence.size());
    for (const auto& c : records.competence) existing.insert({c.value.individual, c.value.area});

    struct Evidence {
        std::size_t publications = 0;
        const Locator* first = nullptr;
    };
    std::unordered_map<Key, Evidence, PairHash> evidence;
    std::vector<Key> order;

    for (const auto& p : records.publications) {
        std::set<std::string_view> authors(p.value.authors.begin(), p.value.authors.end());
        if (authors.size() < 2) continue;
        std::set<std::string_view> areas(p.value.areas.begin(), p.value.areas.end());
        for (const auto& author : p.value.authors) {
            for (auto area : areas) {
                Key key{author, std::string(area)};
                if (existing.contains(key)) continue;
                auto [it, fresh] = evidence.try_emplace(key);
                if (fresh) {
                    it->second.first = &p.where;
                    order.push_back(key);
                }
                ++it->second.publications;
            }
        }
    }

    CrossValidated out;
    std::vector<Located<CompetenceRecord>> added;
    added.reserve(order.size());
    for (const auto& key : order) {
        const auto& ev = evidence.at(key);
        added.push_back({{key.first, key.second, derived_weight(ev.publications), true}, *ev.first});
        out.anomalies.entries.push_back({*ev.first, "missing-competence-edge", AnomalyAction::derived_edge_added});
    }
    records.competence.insert(records.competence.end(), std::make_move_iterator(added.begin()),
                              std::make_move_iterator(added.end()));
    out.records = std::move(records);
    return out;
}

CorpusStats compute_stats(const GraphSnapshot& snapshot) {
    CorpusStats s;
    const auto people = snapshot.individuals();
    s.individuals_count = people.size();
    s.concepts_count = snapshot.areas().size();
    s.teams_count = snapshot.history_teams().size();

    if (!people.empty()) {
        std::size_t degree_sum = 0;
        for (std::size_t i = 0; i < people.size(); ++i) degree_sum += snapshot.neighbors(static_cast<Index>(i)).size();
        s.avg_connections_per_individual = static_cast<double>(degree_sum) / static_cast<double>(people.size());
    }

    std::set<std::string_view> orgs;
    std::set<std::string_view> countries;
    for (const auto& p : people) {
        for (const auto& a : p.affiliations) orgs.insert(a);
        if (p.country && !p.country->empty()) countries.insert(*p.country);
    }
    s.organizations_count = orgs.size();
    s.countries_count = countries.size();

    std::size_t member_sum = 0;
    for (const auto& t : snapshot.history_teams()) {
        member_sum += t.members.size();
        s.max_individuals_per_team = std::max(s.max_individuals_per_team, t.members.size());
    }
    if (s.teams_count > 0)
        s.avg_individuals_per_team = static_cast<double>(member_sum) / static_cast<double>(s.teams_count);

    std::map<int, std::pair<std::size_t, std::size_t>> yearly;  // year -> (single, total)
    for (const auto& p : snapshot.publications()) {
        const std::size_t n = p.authors.size();
        ++s.authors_histogram[n];
        auto& y = yearly[p.year];
        y.first += n == 1 ? 1 : 0;
        ++y.second;
        auto& mx = s.yearly_max_authors[p.year];
        mx = std::max(mx, n);
    }
    const auto total = static_cast<double>(snapshot.publications().size());
    std::size_t running = 0;
    for (const auto& [n, count] : s.authors_histogram) {
        running += count;
        s.authors_cdf[n] = static_cast<double>(running) / total;
    }
    for (const auto& [year, counts] : yearly) {
        s.yearly_single_author_pct[year] = static_cast<double>(counts.first) / static_cast<double>(counts.second);
    }
    return s;
}

}  // namespace swat
