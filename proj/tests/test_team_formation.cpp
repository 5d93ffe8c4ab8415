#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "support/toy_corpus.hpp"
#include "swat/errors.hpp"
#include "swat/team_formation.hpp"

using namespace swat;
using swat::testing::ToyCorpus;

namespace {

std::vector<std::string> member_ids(const GraphSnapshot& snap, const Team& team) {
    std::vector<std::string> out;
    for (Index m : team) out.push_back(snap.individual(m).id);
    return out;
}

std::vector<Index> area_indices(const GraphSnapshot& snap, const std::vector<std::string>& ids) {
    std::vector<Index> out;
    for (const auto& id : ids) out.push_back(snap.area_index(id));
    return out;
}

// Disjoint full slates: area aJ has exactly k holders of its own.
GraphSnapshot disjoint_slates(int q, int k) {
    ToyCorpus t;
    for (int a = 0; a < q; ++a) {
        t.area("a" + std::to_string(a));
        for (int e = 0; e < k; ++e) {
            const std::string id = "p" + std::to_string(a) + "_" + std::to_string(e);
            t.person(id).competence(id, "a" + std::to_string(a), 0.01 + 0.03 * e);
        }
    }
    return t.build();
}

}  // namespace

TEST_CASE("metric weights normalize and validate") {
    MetricWeights uniform;
    for (double w : uniform.values()) CHECK(w == 0.25);
    MetricWeights w(2, 0, 1, 1);
    CHECK(w.competence() == 0.5);
    CHECK(w.cohesiveness() == 0.0);
    CHECK_THROWS_AS(MetricWeights(-1, 1, 1, 1), InvalidParams);
    CHECK_THROWS_AS(MetricWeights(0, 0, 0, 0), InvalidParams);
    CHECK_THROWS_AS(MetricWeights(std::nan(""), 1, 1, 1), InvalidParams);
    CHECK(MetricWeights(1, 2, 3, 4) == MetricWeights(10, 20, 30, 40));
}

TEST_CASE("enumeration examples") {
    SUBCASE("disjoint 2x2 slates give four candidates") {
        ToyCorpus t;
        t.people({"A", "B", "C", "D"}).area("x").area("y");
        t.competence("A", "x", 0.9).competence("B", "x", 0.5).competence("C", "y", 0.9).competence("D", "y", 0.4);
        auto snap = t.build();
        auto e = enumerate_candidates(snap, std::vector<std::string>{"x", "y"}, 2);
        CHECK(e.combinations == 4);
        CHECK(e.candidates.size() == 4);
    }
    SUBCASE("one shared expert gives no candidates") {
        ToyCorpus t;
        t.people({"A"}).area("x").area("y").competence("A", "x", 0.9).competence("A", "y", 0.9);
        auto e = enumerate_candidates(t.build(), std::vector<std::string>{"x", "y"}, 2);
        CHECK(e.combinations == 1);
        CHECK(e.candidates.empty());
    }
    SUBCASE("overlapping slates drop the singleton") {
        ToyCorpus t;
        t.people({"A", "B", "C"}).area("x").area("y");
        t.competence("A", "x", 0.9).competence("B", "x", 0.5).competence("A", "y", 0.9).competence("C", "y", 0.4);
        auto snap = t.build();
        auto e = enumerate_candidates(snap, std::vector<std::string>{"x", "y"}, 2);
        CHECK(e.combinations == 4);
        REQUIRE(e.candidates.size() == 3);
        CHECK(member_ids(snap, e.candidates[0].members) == std::vector<std::string>{"A", "B"});
        CHECK(member_ids(snap, e.candidates[1].members) == std::vector<std::string>{"A", "C"});
        CHECK(member_ids(snap, e.candidates[2].members) == std::vector<std::string>{"B", "C"});
    }
    SUBCASE("duplicate member sets merge their assignments") {
        ToyCorpus t;
        t.people({"A", "B"}).area("x").area("y");
        t.competence("A", "x", 0.9).competence("B", "x", 0.5).competence("A", "y", 0.9).competence("B", "y", 0.4);
        auto snap = t.build();
        auto e = enumerate_candidates(snap, std::vector<std::string>{"x", "y"}, 2);
        REQUIRE(e.candidates.size() == 1);
        const auto& assignment = e.candidates[0].assignment;
        CHECK(assignment.at(snap.area_index("x")).size() == 2);
        CHECK(assignment.at(snap.area_index("y")).size() == 2);
    }
}

TEST_CASE("enumeration errors") {
    auto snap = disjoint_slates(3, 10);
    CHECK_THROWS_AS(enumerate_candidates(snap, std::vector<std::string>{"a0", "nope"}, 2), UnknownArea);
    CHECK_THROWS_AS(enumerate_candidates(snap, std::vector<std::string>{}, 2), InvalidParams);
    CHECK_THROWS_AS(enumerate_candidates(snap, std::vector<std::string>{"a0", "a1"}, 0), InvalidParams);
    CHECK_THROWS_AS(enumerate_candidates(snap, std::vector<std::string>{"a0", "a0"}, 2), InvalidParams);
    CHECK_THROWS_AS(enumerate_candidates(snap, std::vector<std::string>{"a0", "a1", "a2"}, 10, 999),
                    CandidateExplosion);
    CHECK_NOTHROW(enumerate_candidates(snap, std::vector<std::string>{"a0", "a1", "a2"}, 10, 1000));
}

TEST_CASE("candidate count is k^q on disjoint full slates") {
    for (int k : {2, 3}) {
        for (int q : {2, 3}) {
            auto snap = disjoint_slates(q, k);
            std::vector<Index> required(q);
            std::iota(required.begin(), required.end(), Index{0});
            auto e = enumerate_candidates(snap, required, k);
            std::size_t expected = 1;
            for (int i = 0; i < q; ++i) expected *= static_cast<std::size_t>(k);
            CHECK(e.combinations == expected);
            CHECK(e.candidates.size() == expected);
        }
    }
}

TEST_CASE("user repetition normalization in a slate") {
    ToyCorpus t;
    t.people({"A", "B", "C"}).area("x").area("y");
    t.competence("A", "x", 0.9).competence("A", "y", 0.8).competence("B", "y", 0.7).competence("C", "y", 0.6);
    for (int i = 0; i < 3; ++i) t.publication("h" + std::to_string(i), {"A", "B"}, {"x"});
    auto snap = t.build();
    auto required = area_indices(snap, {"x", "y"});
    auto e = enumerate_candidates(snap, required, 3);
    REQUIRE(e.candidates.size() == 2);
    auto ranked = rank_candidates(snap, e.candidates, required, MetricWeights(0, 0, 1, 0), CompetenceMode::avg, 10);
    CHECK(ranked[0].scorecard.raw.user_repetition == 3);
    CHECK(ranked[0].scorecard.normalized[2] == 1.0);
    CHECK(ranked[1].scorecard.raw.user_repetition == 0);
    CHECK(ranked[1].scorecard.normalized[2] == 0.0);
}

TEST_CASE("single-metric weights order by that metric") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 30; ++round) {
        auto rec = swat::testing::random_corpus(rng);
        auto snap = build_snapshot(rec);
        std::vector<Index> required;
        for (Index a = 0; a < std::min<std::size_t>(3, snap.areas().size()); ++a) required.push_back(a);
        auto e = enumerate_candidates(snap, required, 4);
        if (e.candidates.empty()) continue;
        auto ranked = rank_candidates(snap, e.candidates, required, MetricWeights(1, 0, 0, 0), CompetenceMode::avg,
                                      1000);
        for (std::size_t i = 1; i < ranked.size(); ++i)
            CHECK(ranked[i - 1].scorecard.raw.competence >= ranked[i].scorecard.raw.competence);
    }
}

TEST_CASE("ranking matches an exhaustive oracle") {
    std::mt19937_64 rng(97);
    std::uniform_int_distribution<int> qd(1, 4), kd(1, 4), md(0, 1);
    std::uniform_real_distribution<double> wd(0.0, 1.0);
    int compared = 0;
    for (int round = 0; round < 100; ++round) {
        auto rec = swat::testing::random_corpus(rng);
        auto snap = build_snapshot(rec);
        const int q = std::min<int>(qd(rng), static_cast<int>(rec.areas.size()));
        const int k = kd(rng);
        std::vector<std::string> required;
        for (int a = 0; a < q; ++a) required.push_back(rec.areas[static_cast<std::size_t>(a)].value.id);
        std::shuffle(required.begin(), required.end(), rng);
        std::array<double, 4> w{wd(rng), wd(rng), wd(rng), wd(rng)};
        if (round % 5 == 0) w = {1, 1, 1, 1};
        const bool max_mode = md(rng) == 1;

        auto e = enumerate_candidates(snap, required, k);
        auto got = rank_candidates(snap, e.candidates, area_indices(snap, required),
                                   MetricWeights(w[0], w[1], w[2], w[3]),
                                   max_mode ? CompetenceMode::max : CompetenceMode::avg, 1000);
        auto want = oracle::rank(rec, required, k, w, max_mode, 1000);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(member_ids(snap, got[i].members) == want[i].members);
            CHECK(got[i].scorecard.total == doctest::Approx(want[i].total).epsilon(1e-12));
            for (const auto& [area, members] : got[i].assignment) {
                auto ids = member_ids(snap, members);
                CHECK(oracle::Ids(ids.begin(), ids.end()) == want[i].assignment.at(snap.area(area).id));
            }
        }
        ++compared;
    }
    CHECK(compared == 100);
}

TEST_CASE("ranking invariants") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 40; ++round) {
        auto snap = build_snapshot(swat::testing::random_corpus(rng));
        std::vector<Index> required;
        for (Index a = 0; a < std::min<std::size_t>(3, snap.areas().size()); ++a) required.push_back(a);
        auto e = enumerate_candidates(snap, required, 4);
        if (e.candidates.empty()) continue;

        const MetricWeights w(0.3, 0.2, 0.4, 0.1);
        const MetricWeights scaled(3, 2, 4, 1);
        auto serial = rank_candidates(snap, e.candidates, required, w, CompetenceMode::avg, 1000, 1);
        auto parallel = rank_candidates(snap, e.candidates, required, w, CompetenceMode::avg, 1000, 8);
        auto again = rank_candidates(snap, e.candidates, required, w, CompetenceMode::avg, 1000, 1);
        auto rescaled = rank_candidates(snap, e.candidates, required, scaled, CompetenceMode::avg, 1000, 1);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].members == parallel[i].members);
            CHECK(serial[i].scorecard.raw == parallel[i].scorecard.raw);
            CHECK(serial[i].scorecard.total == parallel[i].scorecard.total);
            CHECK(serial[i].members == again[i].members);
            CHECK(serial[i].members == rescaled[i].members);
            // Coverage: every required area is assigned to someone in the team.
            for (Index a : required) {
                REQUIRE(serial[i].assignment.count(a));
                const auto& covering = serial[i].assignment.at(a);
                CHECK_FALSE(covering.empty());
                for (Index m : covering)
                    CHECK(std::binary_search(serial[i].members.begin(), serial[i].members.end(), m));
            }
            if (i > 0) CHECK(serial[i - 1].scorecard.total >= serial[i].scorecard.total);
        }
        auto top3 = rank_candidates(snap, e.candidates, required, w, CompetenceMode::avg, 3);
        CHECK(top3.size() == std::min<std::size_t>(3, serial.size()));
    }
}

TEST_CASE("ranking a large slate in parallel matches serial") {
    auto snap = disjoint_slates(3, 30);
    std::vector<Index> required{0, 1, 2};
    auto e = enumerate_candidates(snap, required, 30);
    REQUIRE(e.candidates.size() == 27000);
    auto serial = rank_candidates(snap, e.candidates, required, MetricWeights{}, CompetenceMode::max, 50, 1);
    auto parallel = rank_candidates(snap, e.candidates, required, MetricWeights{}, CompetenceMode::max, 50, 0);
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].members == parallel[i].members);
}

TEST_CASE("score_team") {
    ToyCorpus t;
    t.people({"A", "B", "C"}).area("x").area("y").area("z");
    t.competence("A", "x", 0.9).competence("B", "y", 0.6).competence("C", "x", 0.3);
    t.social("A", "B").publication("h1", {"A", "B"}, {"x", "y"});
    auto snap = t.build();

    SUBCASE("matches the ranked candidate with the same members") {
        std::vector<std::string> req{"x", "y"};
        auto e = enumerate_candidates(snap, req, 5);
        auto ranked = rank_candidates(snap, e.candidates, area_indices(snap, req), MetricWeights{},
                                      CompetenceMode::avg, 10);
        const auto it = std::find_if(ranked.begin(), ranked.end(), [&](const CandidateTeam& c) {
            return member_ids(snap, c.members) == std::vector<std::string>{"A", "B"};
        });
        REQUIRE(it != ranked.end());
        auto scored = score_team(snap, std::vector<std::string>{"B", "A"}, req, MetricWeights{}, CompetenceMode::avg);
        CHECK(scored.scorecard.raw == it->scorecard.raw);
        CHECK(scored.members == it->members);
    }
    SUBCASE("team covering no area scores zero competence") {
        auto scored = score_team(snap, std::vector<std::string>{"A", "B"}, std::vector<std::string>{"z"},
                                 MetricWeights{}, CompetenceMode::avg);
        CHECK(scored.scorecard.raw.competence == 0.0);
        CHECK(scored.assignment.at(snap.area_index("z")).empty());
    }
    SUBCASE("user repetition normalized as n/(n+1)") {
        auto scored = score_team(snap, std::vector<std::string>{"A", "B"}, std::vector<std::string>{"x"},
                                 MetricWeights{}, CompetenceMode::avg);
        CHECK(scored.scorecard.raw.user_repetition == 1);
        CHECK(scored.scorecard.normalized[2] == 0.5);
        CHECK(scored.scorecard.raw.cohesiveness == 1.0);
        CHECK(scored.scorecard.total == doctest::Approx((0.9 + 1.0 + 0.5 + 0.5) / 4.0));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(score_team(snap, std::vector<std::string>{"Q"}, std::vector<std::string>{"x"},
                                   MetricWeights{}, CompetenceMode::avg),
                        UnknownIndividual);
        CHECK_THROWS_AS(score_team(snap, std::vector<std::string>{"A"}, std::vector<std::string>{"q"},
                                   MetricWeights{}, CompetenceMode::avg),
                        UnknownArea);
        CHECK_THROWS_AS(score_team(snap, std::vector<std::string>{}, std::vector<std::string>{"x"}, MetricWeights{},
                                   CompetenceMode::avg),
                        InvalidParams);
    }
}
