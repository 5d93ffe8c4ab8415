"""Python interface to the SWAT team-recommendation engine.

Every query returns plain Python data with the same shape as the HTTP
service responses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from os import PathLike
from typing import Any, Iterable, Mapping, Sequence

from . import _swat
from ._swat import (
    CandidateExplosion,
    FormatError,
    InvalidParams,
    IoError,
    SwatError,
    UnknownArea,
    UnknownIndividual,
)

__all__ = [
    "Anomaly",
    "CandidateExplosion",
    "FormatError",
    "InvalidParams",
    "IoError",
    "Snapshot",
    "SwatError",
    "UnknownArea",
    "UnknownIndividual",
    "ingest",
    "load",
    "synth",
]


@dataclass(frozen=True)
class Anomaly:
    where: str
    rule: str
    action: str


class Snapshot:
    """An immutable, query-ready graph snapshot."""

    def __init__(self, native: _swat.Snapshot):
        self._native = native

    @property
    def individual_count(self) -> int:
        return self._native.individual_count

    @property
    def area_count(self) -> int:
        return self._native.area_count

    @property
    def area_ids(self) -> list[str]:
        return self._native.area_ids

    def save(self, path: str | PathLike) -> None:
        self._native.save(path)

    def stats(self) -> dict[str, Any]:
        return json.loads(self._native.stats_json())

    def suggest(self, query: str, limit: int = 10) -> list[dict[str, Any]]:
        return json.loads(self._native.suggest_json(query, limit))

    def experts(self, area: str, k: int = 20, expand: bool = False) -> list[dict[str, Any]]:
        return json.loads(self._native.experts_json(area, k, expand))

    def related(self, area: str) -> list[dict[str, Any]]:
        return json.loads(self._native.related_json(area))

    def ego(self, individual: str, radius: int = 1) -> dict[str, Any]:
        return json.loads(self._native.ego_json(individual, radius))

    def distance(self, a: str, b: str, dimensions: Iterable[str] | None = None) -> int | None:
        return self._native.distance(a, b, None if dimensions is None else list(dimensions))

    def recommend(
        self,
        areas: Sequence[str],
        k: int = 20,
        weights: Mapping[str, float] | None = None,
        mode: str = "avg",
        limit: int = 20,
    ) -> dict[str, Any]:
        body: dict[str, Any] = {"areas": list(areas), "k": k, "mode": mode, "limit": limit}
        if weights is not None:
            body["weights"] = dict(weights)
        return json.loads(self._native.recommend_json(json.dumps(body)))

    def score(
        self,
        members: Sequence[str],
        areas: Sequence[str],
        weights: Mapping[str, float] | None = None,
        mode: str = "avg",
    ) -> dict[str, Any]:
        body: dict[str, Any] = {"members": list(members), "areas": list(areas), "mode": mode}
        if weights is not None:
            body["weights"] = dict(weights)
        return json.loads(self._native.score_json(json.dumps(body)))


def load(path: str | PathLike) -> Snapshot:
    return Snapshot(_swat.load(path))


def ingest(corpus: str | PathLike) -> tuple[Snapshot, list[Anomaly], int]:
    """Parse and validate a corpus directory.

    Returns the snapshot, the parse anomalies and the number of derived
    competence edges.
    """
    native, anomalies, derived = _swat.ingest(corpus)
    return Snapshot(native), [Anomaly(*a) for a in anomalies], derived


def synth(
    out: str | PathLike,
    individuals: int = 200,
    areas: int = 20,
    publications: int = 600,
    dimensions: int = 2,
    seed: int = 1,
) -> None:
    _swat.synth(out, individuals, areas, publications, dimensions, seed)
