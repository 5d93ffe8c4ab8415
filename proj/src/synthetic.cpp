// Seeded synthetic corpora. Only raw engine output of std::mt19937_64 is
// used (its sequence is fixed by the standard); the distributions below are
// written out so output does not depend on the standard library vendor.

#include "swat/ingestion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace swat {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    double between(double lo, double hi) { return lo + (hi - lo) * unit(); }

    template <typename C>
    const auto& pick(const C& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937_64 engine_;
};

double round_to(double x, double scale) { return std::round(x * scale) / scale; }

std::string padded(const char* prefix, std::int64_t value, int width) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    return prefix + digits;
}

int width_for(std::int64_t count) {
    int w = 1;
    for (std::int64_t x = count; x >= 10; x /= 10) ++w;
    return std::max(w, 4);
}

constexpr std::array kFirstNames = {
    "Ada",   "Alan",  "Anita", "Arjun", "Beatriz", "Bruno", "Chen",   "Chiara", "Daniel", "Dana",  "Elena",
    "Emre",  "Fatima", "Felix", "Grace", "Hiro",   "Ines",  "Ivan",   "Jana",   "Jonas",  "Kai",   "Karin",
    "Lars",  "Leila", "Lucia", "Marco", "Maya",    "Nadia", "Noah",   "Olga",   "Omar",   "Priya", "Quentin",
    "Rosa",  "Sami",  "Sofia", "Tariq", "Thea",    "Uma",   "Viktor", "Wei",    "Xenia",  "Yusuf", "Zoe"};

constexpr std::array kLastNames = {
    "Abe",      "Baptiste", "Carvalho", "Datta",    "Eriksen", "Fontaine", "Garcia",   "Horvath", "Ibrahim",
    "Jansen",   "Kowalski", "Lindqvist", "Moreau",  "Nakamura", "Okafor",  "Petrov",   "Quiroga", "Rossi",
    "Schmidt",  "Tanaka",   "Ueda",     "Varga",    "Weber",   "Xu",       "Yilmaz",   "Zhang",   "Bianchi",
    "Castillo", "Dubois",   "Engel",    "Fischer",  "Gupta",   "Hansen",   "Ishikawa", "Jovanovic", "Kim",
    "Laurent",  "Mendes",   "Novak",    "Ortiz",    "Park",    "Reyes",    "Singh",    "Tran",     "Wong"};

constexpr std::array kPlaces = {"Aalborg", "Bologna", "Cordoba", "Delft",  "Espoo",   "Fribourg", "Granada",
                                "Haifa",   "Innsbruck", "Jena",  "Kyoto",  "Leuven",  "Malmo",    "Nantes",
                                "Oulu",    "Porto",   "Quebec",  "Rennes", "Sendai",  "Tartu",    "Utrecht",
                                "Valencia", "Waterloo", "Xiamen", "York",  "Zurich"};

constexpr std::array kOrgForms = {"University of {}", "{} Institute of Technology", "{} Research Center",
                                  "{} Polytechnic"};

constexpr std::array kCountries = {"Argentina", "Australia", "Austria", "Brazil",  "Canada",      "China",
                                   "Denmark",   "Finland",   "France",  "Germany", "India",       "Israel",
                                   "Italy",     "Japan",     "Korea",   "Mexico",  "Netherlands", "Norway",
                                   "Portugal",  "Singapore", "Spain",   "Sweden",  "Switzerland", "Turkey",
                                   "United Kingdom", "United States"};

// Seed catalog: realistic concept names the generator uses first.
constexpr std::array kSeedAreas = {"Data Mining",
                                   "Cloud Computing",
                                   "Cryptography",
                                   "Database",
                                   "Social Network Analysis",
                                   "Online Social Network",
                                   "Social Psychology",
                                   "Communication Technologies And Social Change",
                                   "Social Cognition",
                                   "Machine Learning",
                                   "Information Retrieval",
                                   "Distributed Systems",
                                   "Computer Vision",
                                   "Natural Language Processing",
                                   "Peer To Peer Systems",
                                   "Graph Theory",
                                   "Query Optimization",
                                   "Recommender Systems",
                                   "Network Security",
                                   "Semantic Web"};

constexpr std::array kModifiers = {"Applied", "Adaptive", "Distributed", "Parallel", "Probabilistic", "Secure",
                                   "Mobile",  "Scalable", "Statistical", "Quantum",  "Interactive",   "Temporal",
                                   "Spatial", "Robust",   "Social",      "Federated"};

constexpr std::array kSubjects = {"Algorithms",  "Databases",  "Networks",     "Learning",    "Optimization",
                                  "Computing",   "Systems",    "Visualization", "Retrieval",  "Storage",
                                  "Inference",   "Analytics",  "Sensing",      "Verification", "Scheduling",
                                  "Simulation",  "Crowdsourcing", "Privacy",   "Compilers",   "Graphics"};

constexpr std::array kVenues = {"VLDB", "SIGMOD", "ICDE", "KDD", "WWW", "CIKM", "ICDM", "SDM", "EDBT", "SOCINFO"};

std::string acronym(const std::string& name) {
    std::string out;
    bool start = true;
    for (char c : name) {
        if (c == ' ') {
            start = true;
        } else if (start) {
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            start = false;
        }
    }
    return out;
}

std::vector<std::string> area_names(std::int64_t count, Rng& rng) {
    std::vector<std::string> names;
    std::set<std::string> used;
    for (const char* s : kSeedAreas) {
        if (static_cast<std::int64_t>(names.size()) == count) return names;
        names.emplace_back(s);
        used.insert(s);
    }
    std::int64_t attempts = 0;
    while (static_cast<std::int64_t>(names.size()) < count) {
        std::string name;
        if (attempts < 8 * count) {
            name = std::string(rng.pick(kModifiers)) + " " + rng.pick(kSubjects);
            if (rng.chance(0.4)) name += std::string(" And ") + rng.pick(kSubjects);
            ++attempts;
        } else {
            name = std::string(rng.pick(kModifiers)) + " " + rng.pick(kSubjects) + " " +
                   std::to_string(names.size() + 1);
        }
        if (used.insert(name).second) names.push_back(std::move(name));
    }
    return names;
}

// Cumulative Zipf-like weights 1/(r+1)^0.8 over `n` ranks.
std::vector<double> zipf_cdf(std::size_t n) {
    std::vector<double> cdf(n);
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        total += 1.0 / std::pow(static_cast<double>(r + 1), 0.8);
        cdf[r] = total;
    }
    for (auto& c : cdf) c /= total;
    return cdf;
}

std::size_t sample_cdf(const std::vector<double>& cdf, Rng& rng) {
    double u = rng.unit();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

// Author count in [1, max_authors], truncated geometric with success p.
std::size_t author_count(Rng& rng, std::size_t max_authors) {
    constexpr double p = 0.35;
    double total = 1.0 - std::pow(1.0 - p, static_cast<double>(max_authors));
    double u = rng.unit() * total;
    double acc = 0.0;
    double q = 1.0;
    for (std::size_t n = 1; n <= max_authors; ++n) {
        acc += p * q;
        if (u < acc) return n;
        q *= 1.0 - p;
    }
    return max_authors;
}

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) {
    if (a > b) std::swap(a, b);
    return (a << 32) | b;
}

}  // namespace

CorpusRecords generate_synthetic(const SyntheticParams& params, std::uint64_t seed) {
    if (params.individuals < 1 || params.areas < 1 || params.publications < 1 || params.dimensions < 1)
        throw InvalidParams("synthetic corpus counts must all be >= 1");
    if (params.dimensions > static_cast<std::int64_t>(kMaxDimensions))
        throw InvalidParams("at most 64 social dimensions are supported");
    if (params.individuals > 0xFFFFFFFFLL) throw InvalidParams("too many individuals");

    Rng rng(seed);
    CorpusRecords out;
    const auto n_people = static_cast<std::size_t>(params.individuals);
    const auto n_areas = static_cast<std::size_t>(params.areas);
    const int person_width = width_for(params.individuals);
    const int area_width = width_for(params.areas);
    const int pub_width = width_for(params.publications);

    // Organizations.
    std::vector<std::string> orgs;
    {
        std::size_t n_orgs = std::max<std::size_t>(1, n_people / 40);
        std::set<std::string> used;
        for (std::size_t k = 0; k < n_orgs; ++k) {
            std::string form = rng.pick(kOrgForms);
            std::string place = rng.pick(kPlaces);
            std::string name = form.replace(form.find("{}"), 2, place);
            if (!used.insert(name).second) name += " " + std::to_string(k + 1);
            used.insert(name);
            orgs.push_back(name);
        }
    }
    std::vector<std::string> org_country(orgs.size());
    for (auto& c : org_country) c = rng.pick(kCountries);

    // Areas.
    auto names = area_names(params.areas, rng);
    for (std::size_t a = 0; a < n_areas; ++a) {
        ExpertiseArea area;
        area.id = padded("a", static_cast<std::int64_t>(a + 1), area_width);
        area.name = names[a];
        auto acr = acronym(area.name);
        if (acr.size() >= 2 && acr != area.name && rng.chance(0.5)) area.aliases.push_back(acr);
        out.areas.push_back({std::move(area), {corpus_files::areas, a + 1}});
    }

    // Relations between areas.
    {
        std::set<std::tuple<std::size_t, std::size_t, RelationKind>> seen;
        std::size_t line = 0;
        if (n_areas >= 2) {
            for (std::size_t a = 0; a < n_areas; ++a) {
                if (!rng.chance(0.35)) continue;
                std::size_t b = rng.below(n_areas - 1);
                if (b >= a) ++b;
                double roll = rng.unit();
                RelationKind kind = roll < 0.7 ? RelationKind::similar
                                    : roll < 0.95 ? RelationKind::subsumes
                                                  : RelationKind::synonym;
                double sim = kind == RelationKind::synonym ? 1.0 : round_to(rng.between(0.4, 0.95), 100.0);
                if (!seen.insert({a, b, kind}).second) continue;
                out.relations.push_back({{out.areas[a].value.id, out.areas[b].value.id, kind, sim},
                                         {corpus_files::relations, ++line}});
            }
        }
    }

    // Individuals, each with one to three home areas drawn by popularity.
    const auto area_cdf = zipf_cdf(n_areas);
    std::vector<std::vector<std::size_t>> home(n_people);
    std::vector<std::size_t> person_org(n_people);
    std::vector<std::vector<std::size_t>> by_primary(n_areas);
    std::vector<std::vector<std::size_t>> by_org(orgs.size());
    for (std::size_t i = 0; i < n_people; ++i) {
        Individual person;
        person.id = padded("p", static_cast<std::int64_t>(i + 1), person_width);
        person.name = std::string(rng.pick(kFirstNames)) + " " + rng.pick(kLastNames);
        person_org[i] = rng.below(orgs.size());
        person.affiliations.push_back(orgs[person_org[i]]);
        if (rng.chance(0.9)) person.country = org_country[person_org[i]];
        if (rng.chance(0.3)) person.profile["homepage"] = "https://example.org/~" + person.id;
        out.individuals.push_back({std::move(person), {corpus_files::individuals, i + 1}});

        std::size_t wanted = 1 + rng.below(3);
        for (std::size_t k = 0; k < wanted * 3 && home[i].size() < std::min(wanted, n_areas); ++k) {
            std::size_t a = sample_cdf(area_cdf, rng);
            if (std::find(home[i].begin(), home[i].end(), a) == home[i].end()) home[i].push_back(a);
        }
        by_primary[home[i].front()].push_back(i);
        by_org[person_org[i]].push_back(i);
    }

    // Competence on home areas.
    {
        std::size_t line = 0;
        for (std::size_t i = 0; i < n_people; ++i) {
            for (std::size_t a : home[i]) {
                double w = round_to(rng.between(0.05, 0.95), 1000.0);
                out.competence.push_back({{out.individuals[i].value.id, out.areas[a].value.id, w, false},
                                          {corpus_files::competence, ++line}});
            }
        }
    }

    // Publications; coauthors mostly come from the first author's community.
    std::unordered_map<std::uint64_t, std::uint32_t> coauthored;
    std::vector<std::uint64_t> coauthor_order;
    const std::size_t max_authors = std::min<std::size_t>(8, n_people);
    for (std::int64_t k = 0; k < params.publications; ++k) {
        PublicationRecord pub;
        pub.id = padded("pub", k + 1, pub_width);
        std::size_t first = rng.below(n_people);
        std::size_t n_auth = author_count(rng, max_authors);
        std::vector<std::size_t> authors{first};
        const auto& community = by_primary[home[first].front()];
        for (std::size_t guard = 0; authors.size() < n_auth && guard < 64 * n_auth; ++guard) {
            std::size_t cand = (community.size() > 1 && rng.chance(0.7)) ? rng.pick(community) : rng.below(n_people);
            if (std::find(authors.begin(), authors.end(), cand) == authors.end()) authors.push_back(cand);
        }
        for (std::size_t cand = 0; authors.size() < n_auth && cand < n_people; ++cand) {
            if (std::find(authors.begin(), authors.end(), cand) == authors.end()) authors.push_back(cand);
        }
        for (std::size_t a : authors) pub.authors.push_back(out.individuals[a].value.id);

        if (!rng.chance(0.05)) {
            std::vector<std::size_t> areas{rng.pick(home[first])};
            if (rng.chance(0.3)) {
                std::size_t other = rng.pick(home[authors[rng.below(authors.size())]]);
                if (other != areas.front()) areas.push_back(other);
            }
            for (std::size_t a : areas) pub.areas.push_back(out.areas[a].value.id);
        }
        pub.year = 1990 + static_cast<int>(rng.below(23));
        if (rng.chance(0.8)) pub.venue = rng.pick(kVenues);

        for (std::size_t x = 0; x < authors.size(); ++x) {
            for (std::size_t y = x + 1; y < authors.size(); ++y) {
                auto key = pair_key(authors[x], authors[y]);
                auto [it, fresh] = coauthored.try_emplace(key, 0);
                if (fresh) coauthor_order.push_back(key);
                ++it->second;
            }
        }
        out.publications.push_back({std::move(pub), {corpus_files::publications, static_cast<std::size_t>(k + 1)}});
    }

    // Social graph: coauthor edges mirror the publications; further
    // dimensions add colleague and friendship style ties.
    std::size_t social_line = 0;
    for (auto key : coauthor_order) {
        std::size_t a = key >> 32;
        std::size_t b = key & 0xFFFFFFFFULL;
        double n = coauthored[key];
        double strength = std::min(kClampHigh, round_to(n / (n + 1.0), 10000.0));
        out.social.push_back({{out.individuals[a].value.id, out.individuals[b].value.id, "coauthor", strength},
                              {corpus_files::social, ++social_line}});
    }
    for (std::int64_t d = 1; d < params.dimensions; ++d) {
        std::string dim = d == 1 ? "colleague" : d == 2 ? "friend" : "relation" + std::to_string(d + 1);
        std::unordered_set<std::uint64_t> seen;
        for (std::size_t i = 0; i < n_people; ++i) {
            std::size_t j = 0;
            if (d == 1) {
                const auto& mates = by_org[person_org[i]];
                if (mates.size() < 2) continue;
                j = rng.pick(mates);
            } else {
                if (n_people < 2 || !rng.chance(0.5)) continue;
                j = rng.below(n_people);
            }
            if (j == i || !seen.insert(pair_key(i, j)).second) continue;
            double strength = round_to(rng.between(0.1, 0.9), 1000.0);
            out.social.push_back({{out.individuals[i].value.id, out.individuals[j].value.id, dim, strength},
                                  {corpus_files::social, ++social_line}});
        }
    }
    return out;
}

}  // namespace swat
