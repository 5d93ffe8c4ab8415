import pytest

import swat


@pytest.fixture(scope="module")
def snapshot(tmp_path_factory):
    corpus = tmp_path_factory.mktemp("corpus")
    swat.synth(corpus, individuals=150, areas=12, publications=500, seed=3)
    snap, anomalies, derived = swat.ingest(corpus)
    assert anomalies == []
    assert derived >= 0
    return snap


def popular_areas(snap, q):
    return sorted(snap.area_ids, key=lambda a: -len(snap.experts(a, k=1000)))[:q]


def test_counts_and_stats(snapshot):
    assert snapshot.individual_count == 150
    assert snapshot.area_count == 12
    stats = snapshot.stats()
    assert stats["individuals_count"] == 150
    assert stats["concepts_count"] == 12


def test_save_and_load_round_trip(snapshot, tmp_path):
    path = tmp_path / "snap.bin"
    snapshot.save(path)
    again = swat.load(path)
    assert again.stats() == snapshot.stats()


def test_recommend_and_score_agree(snapshot):
    areas = popular_areas(snapshot, 2)
    result = snapshot.recommend(areas, k=4, limit=5)
    teams = result["teams"]
    assert 0 < len(teams) <= 5
    totals = [t["total"] for t in teams]
    assert totals == sorted(totals, reverse=True)
    best = teams[0]
    members = [m["id"] for m in best["members"]]
    scored = snapshot.score(members, areas)
    assert scored["raw"] == best["raw"]


def test_experts_distance_and_ego(snapshot):
    area = popular_areas(snapshot, 1)[0]
    experts = snapshot.experts(area, k=3)
    assert len(experts) == 3
    a = experts[0]["individual"]
    assert snapshot.distance(a, a) == 0
    ego = snapshot.ego(a, radius=1)
    assert ego["center"] == a


def test_errors_map_to_exceptions(snapshot, tmp_path):
    with pytest.raises(swat.UnknownArea):
        snapshot.recommend(["no-such-area", "other"], k=2)
    with pytest.raises(swat.InvalidParams):
        swat.synth(tmp_path / "x", individuals=0)
    with pytest.raises(swat.IoError):
        swat.load(tmp_path / "missing.bin")
    assert issubclass(swat.UnknownArea, swat.SwatError)
