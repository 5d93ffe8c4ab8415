#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "support/toy_corpus.hpp"
#include "swat/errors.hpp"
#include "swat/ingestion.hpp"

using namespace swat;
using swat::testing::TempDir;
using swat::testing::ToyCorpus;

namespace {

template <typename T>
std::vector<T> values(const std::vector<Located<T>>& items) {
    std::vector<T> out;
    for (const auto& i : items) out.push_back(i.value);
    return out;
}

bool same_values(const CorpusRecords& a, const CorpusRecords& b) {
    return values(a.individuals) == values(b.individuals) && values(a.areas) == values(b.areas) &&
           values(a.relations) == values(b.relations) && values(a.competence) == values(b.competence) &&
           values(a.social) == values(b.social) && values(a.publications) == values(b.publications);
}

void minimal_corpus(const TempDir& dir) {
    dir.write("individuals.jsonl",
              R"({"id":"A","name":"Ada","affiliations":["Uni"],"country":"IT","profile":{}})"
              "\n"
              R"({"id":"B","name":"Bob","affiliations":[]})"
              "\n");
    dir.write("areas.jsonl", R"({"id":"x","name":"Data Mining","aliases":["DM"]})"
                             "\n");
}

}  // namespace

TEST_CASE("well-formed five-line fixture parses without anomalies") {
    TempDir dir;
    minimal_corpus(dir);
    dir.write("competence.jsonl", R"({"individual":"A","area":"x","weight":0.7})"
                                  "\n");
    dir.write("social.jsonl", R"({"src":"A","dst":"B","dimension":"coauthor","strength":0.5})"
                              "\n");
    auto parsed = parse_corpus(dir.path());
    const auto& r = parsed.records;
    CHECK(r.individuals.size() + r.areas.size() + r.competence.size() + r.social.size() == 5);
    CHECK(parsed.anomalies.entries.empty());
    CHECK(r.individuals[0].value.country == std::optional<std::string>("IT"));
    CHECK(r.areas[0].value.aliases == std::vector<std::string>{"DM"});
    CHECK(r.competence[0].where == Locator{"competence.jsonl", 1});
}

TEST_CASE("out-of-range weight is clamped") {
    TempDir dir;
    minimal_corpus(dir);
    dir.write("competence.jsonl", R"({"individual":"A","area":"x","weight":1.5})"
                                  "\n"
                                  R"({"individual":"B","area":"x","weight":-3})"
                                  "\n");
    auto parsed = parse_corpus(dir.path());
    REQUIRE(parsed.records.competence.size() == 2);
    CHECK(parsed.records.competence[0].value.weight == kClampHigh);
    CHECK(parsed.records.competence[1].value.weight == kClampLow);
    CHECK(parsed.anomalies.count(AnomalyAction::clamped) == 2);
    CHECK(to_string(parsed.anomalies.entries[0].action) == "clamped");
}

TEST_CASE("self-loop social record is dropped") {
    TempDir dir;
    minimal_corpus(dir);
    dir.write("social.jsonl", R"({"src":"A","dst":"A","dimension":"coauthor","strength":0.5})"
                              "\n");
    auto parsed = parse_corpus(dir.path());
    CHECK(parsed.records.social.empty());
    REQUIRE(parsed.anomalies.entries.size() == 1);
    CHECK(parsed.anomalies.entries[0].action == AnomalyAction::dropped);
    CHECK(parsed.anomalies.entries[0].where == Locator{"social.jsonl", 1});
}

TEST_CASE("malformed lines are dropped and parsing continues") {
    TempDir dir;
    minimal_corpus(dir);
    dir.write("publications.jsonl", "not json\n"
                                    R"({"id":"p1","authors":["A","B"],"areas":["x"],"year":"1999"})"
                                    "\n"
                                    R"({"id":"p2","authors":["A","B","A"],"areas":["x"],"year":2001})"
                                    "\n"
                                    "[1,2]\n");
    auto parsed = parse_corpus(dir.path());
    REQUIRE(parsed.records.publications.size() == 1);
    CHECK(parsed.records.publications[0].value.authors == std::vector<std::string>{"A", "B"});
    CHECK(parsed.anomalies.count(AnomalyAction::dropped) == 4);
}

TEST_CASE("missing required files and directories are I/O errors") {
    TempDir dir;
    CHECK_THROWS_AS(parse_corpus(dir.path()), IoError);
    CHECK_THROWS_AS(parse_corpus(dir / "missing"), IoError);
}

TEST_CASE("binary garbage is a format error") {
    TempDir dir;
    minimal_corpus(dir);
    dir.write("social.jsonl", std::string("\xff\xfe\x00\x01garbage\n", 12));
    CHECK_THROWS_AS(parse_corpus(dir.path()), FormatError);
}

TEST_CASE("derived edge examples") {
    SUBCASE("one publication gives 1/3") {
        ToyCorpus t;
        t.people({"A", "B"}).area("x").competence("B", "x", 0.5).publication("p1", {"A", "B"}, {"x"});
        auto cv = cross_validate_history(t.rec);
        REQUIRE(cv.records.competence.size() == 2);
        const auto& added = cv.records.competence.back().value;
        CHECK(added.individual == "A");
        CHECK(added.derived);
        CHECK(added.weight == doctest::Approx(1.0 / 3.0));
        CHECK(cv.anomalies.count(AnomalyAction::derived_edge_added) == 1);
    }
    SUBCASE("existing edge is untouched") {
        ToyCorpus t;
        t.people({"A", "B"}).area("x").competence("A", "x", 0.8).competence("B", "x", 0.5);
        t.publication("p1", {"A", "B"}, {"x"});
        auto cv = cross_validate_history(t.rec);
        CHECK(cv.records.competence.size() == 2);
        CHECK(cv.records.competence[0].value.weight == 0.8);
        CHECK(cv.anomalies.entries.empty());
    }
    SUBCASE("four publications give 4/6") {
        ToyCorpus t;
        t.people({"A", "B"}).area("x").competence("B", "x", 0.5);
        for (int i = 0; i < 4; ++i) t.publication("p" + std::to_string(i), {"A", "B"}, {"x"});
        auto cv = cross_validate_history(t.rec);
        CHECK(cv.records.competence.back().value.weight == doctest::Approx(4.0 / 6.0));
    }
    SUBCASE("single-author publications are not evidence") {
        ToyCorpus t;
        t.people({"A"}).area("x").publication("p1", {"A"}, {"x"});
        CHECK(cross_validate_history(t.rec).anomalies.entries.empty());
    }
}

TEST_CASE("derived weight bounds and monotonicity") {
    double previous = 0.0;
    for (std::size_t n = 1; n < 5000; ++n) {
        const double w = derived_weight(n);
        CHECK(w >= 1.0 / 3.0);
        CHECK(w < 1.0);
        CHECK(w >= previous);
        previous = w;
    }
}

TEST_CASE("cross validation is idempotent and yields buildable records") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 100; ++round) {
        auto rec = swat::testing::random_corpus(rng);
        auto once = cross_validate_history(rec);
        auto twice = cross_validate_history(once.records);
        CHECK(twice.anomalies.entries.empty());
        CHECK(twice.records == once.records);
        CHECK_NOTHROW(build_snapshot(once.records));
    }
}

TEST_CASE("write then parse is the identity on valid records") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 25; ++round) {
        auto rec = swat::testing::random_corpus(rng);
        rec.individuals[0].value.country = "NZ";
        rec.individuals[0].value.affiliations = {"Org \"quoted\"", "Üniversität"};
        rec.individuals[0].value.profile = {{"homepage", "https://example.org"}};
        rec.areas[0].value.aliases = {"alias one", "A1"};
        if (!rec.publications.empty()) rec.publications[0].value.venue = "Venue";
        if (rec.areas.size() > 1) rec.relations.push_back({{"a0", "a1", RelationKind::subsumes, 0.25}, {}});
        rec.competence.push_back({{rec.individuals[0].value.id, "a0", 0.123456789, true}, {}});
        // Keep the records valid: drop an existing (p, a0) edge if present.
        std::erase_if(rec.competence, [&](const auto& c) {
            return c.value.individual == rec.individuals[0].value.id && c.value.area == "a0" && !c.value.derived;
        });

        TempDir dir;
        write_corpus(rec, dir.path());
        auto parsed = parse_corpus(dir.path());
        CHECK(parsed.anomalies.entries.empty());
        CHECK(same_values(parsed.records, rec));

        TempDir again;
        write_corpus(parsed.records, again.path());
        for (const char* f : {corpus_files::individuals, corpus_files::areas, corpus_files::relations,
                              corpus_files::competence, corpus_files::social, corpus_files::publications})
            CHECK(swat::testing::slurp(dir / f) == swat::testing::slurp(again / f));
    }
}

TEST_CASE("synthetic corpora") {
    SUBCASE("same seed gives byte-identical files") {
        TempDir a, b;
        SyntheticParams p{50, 8, 120, 3};
        write_corpus(generate_synthetic(p, 99), a.path());
        write_corpus(generate_synthetic(p, 99), b.path());
        for (const auto& entry : std::filesystem::directory_iterator(a.path()))
            CHECK(swat::testing::slurp(entry.path()) ==
                  swat::testing::slurp(b.path() / entry.path().filename()));
    }
    SUBCASE("different seeds differ") {
        SyntheticParams p{50, 8, 120, 1};
        CHECK_FALSE(generate_synthetic(p, 1) == generate_synthetic(p, 2));
    }
    SUBCASE("requested counts parse back exactly with zero anomalies") {
        TempDir dir;
        write_corpus(generate_synthetic({10, 5, 20, 1}, 4), dir.path());
        auto parsed = parse_corpus(dir.path());
        CHECK(parsed.records.individuals.size() == 10);
        CHECK(parsed.records.areas.size() == 5);
        CHECK(parsed.records.publications.size() == 20);
        CHECK(parsed.anomalies.entries.empty());
        CHECK_NOTHROW(build_snapshot(cross_validate_history(parsed.records).records));
    }
    SUBCASE("invalid counts") {
        CHECK_THROWS_AS(generate_synthetic({0, 5, 20, 1}, 1), InvalidParams);
        CHECK_THROWS_AS(generate_synthetic({5, 0, 20, 1}, 1), InvalidParams);
        CHECK_THROWS_AS(generate_synthetic({5, 5, 0, 1}, 1), InvalidParams);
        CHECK_THROWS_AS(generate_synthetic({5, 5, 5, 0}, 1), InvalidParams);
    }
    SUBCASE("multi-author publications dominate and coauthors are linked") {
        auto rec = generate_synthetic({300, 20, 900, 2}, 12);
        std::size_t multi = 0;
        for (const auto& p : rec.publications) multi += p.value.authors.size() >= 2;
        CHECK(multi * 2 > rec.publications.size());
        std::set<std::pair<std::string, std::string>> coauthor;
        for (const auto& s : rec.social)
            if (s.value.dimension == "coauthor") coauthor.insert({s.value.src, s.value.dst});
        for (const auto& p : rec.publications)
            for (const auto& a : p.value.authors)
                for (const auto& b : p.value.authors)
                    if (a != b) CHECK(coauthor.count({a, b}) + coauthor.count({b, a}) == 1);
    }
}

TEST_CASE("stats examples") {
    SUBCASE("team sizes 2, 3, 4") {
        ToyCorpus t;
        t.people({"A", "B", "C", "D"}).area("x");
        t.publication("p1", {"A", "B"}, {"x"}).publication("p2", {"A", "B", "C"}, {"x"});
        t.publication("p3", {"A", "B", "C", "D"}, {"x"});
        auto s = compute_stats(t.build());
        CHECK(s.avg_individuals_per_team == doctest::Approx(3.0));
        CHECK(s.max_individuals_per_team == 4);
        CHECK(s.teams_count == 3);
    }
    SUBCASE("empty snapshot") {
        auto s = compute_stats(ToyCorpus{}.build());
        CHECK(s == CorpusStats{});
    }
    SUBCASE("single-author share and CDF") {
        ToyCorpus t;
        t.people({"A", "B", "C", "D"}).area("x");
        t.publication("p1", {"A"}, {"x"}).publication("p2", {"A", "B"}, {"x"});
        t.publication("p3", {"A", "B", "C"}, {"x"}).publication("p4", {"A", "B", "C", "D"}, {"x"});
        auto s = compute_stats(t.build());
        CHECK(s.yearly_single_author_pct.at(2000) == doctest::Approx(0.25));
        CHECK(s.authors_cdf.at(1) == doctest::Approx(0.25));
        CHECK(s.authors_cdf.at(4) == 1.0);
        CHECK(s.yearly_max_authors.at(2000) == 4);
    }
    SUBCASE("connections count distinct undirected neighbors across dimensions") {
        ToyCorpus t;
        t.people({"A", "B", "C"}).social("A", "B", "coauthor").social("B", "A", "friend").social("B", "C");
        auto s = compute_stats(t.build());
        CHECK(s.avg_connections_per_individual == doctest::Approx(4.0 / 3.0));
    }
}

TEST_CASE("stats equal a brute-force recount") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 40; ++round) {
        std::uniform_int_distribution<int> pubs(10, 1000);
        const int n = pubs(rng);
        auto rec = generate_synthetic({std::max(5, n / 3), 12, n, 2}, rng());
        for (std::size_t i = 0; i < rec.individuals.size(); i += 7) rec.individuals[i].value.country = "C" + std::to_string(i % 5);
        auto got = compute_stats(build_snapshot(rec));
        auto want = oracle::stats(rec);
        CHECK(got.individuals_count == want.individuals);
        CHECK(got.concepts_count == want.concepts);
        CHECK(got.teams_count == want.teams);
        CHECK(got.max_individuals_per_team == want.max_team);
        CHECK(got.organizations_count == want.orgs);
        CHECK(got.countries_count == want.countries);
        CHECK(std::abs(got.avg_connections_per_individual - want.avg_connections) < 1e-9);
        CHECK(std::abs(got.avg_individuals_per_team - want.avg_team) < 1e-9);
        CHECK(got.authors_histogram == want.histogram);
        CHECK(got.yearly_max_authors == want.yearly_max);
        REQUIRE(got.authors_cdf.size() == want.cdf.size());
        double last = 0.0;
        for (const auto& [k, v] : got.authors_cdf) {
            CHECK(std::abs(v - want.cdf.at(k)) < 1e-9);
            CHECK(v >= last);
            last = v;
        }
        CHECK(last == 1.0);
        REQUIRE(got.yearly_single_author_pct.size() == want.single_pct.size());
        for (const auto& [y, v] : got.yearly_single_author_pct) CHECK(std::abs(v - want.single_pct.at(y)) < 1e-9);
    }
}
