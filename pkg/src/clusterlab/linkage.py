"""Agglomerative engine (single, complete, average, Ward) and the divisive
wrapper around an exact partitional solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dataset import DISTANCE, WeightedDataset
from .dendrogram import Dendrogram
from .objectives import ObjectiveSpec, exact_minimize
from .partitions import Clustering

LINKAGES = ("single", "complete", "average", "ward")

TIE_REL = 1e-9


@dataclass(frozen=True)
class LinkageSpec:
    name: str

    def __post_init__(self):
        if self.name not in LINKAGES:
            raise ValueError(f"unknown linkage {self.name!r}")

    @property
    def requires_coords(self) -> bool:
        return self.name == "ward"

    @property
    def reads_weights(self) -> bool:
        return self.name in ("average", "ward")


def _centroid(members: Sequence[int], ds: WeightedDataset) -> tuple[np.ndarray, float]:
    w = ds.weights[list(members)]
    pts = ds.coords[list(members)]
    mass = float(w.sum())
    return (pts * w[:, None]).sum(axis=0) / mass, mass


def linkage_value(spec: LinkageSpec, a: Sequence[int], b: Sequence[int],
                  ds: WeightedDataset) -> float:
    """Linkage between two disjoint non-empty clusters.

    single: closest cross pair; complete: farthest cross pair;
    average: weighted mean cross distance; ward: weighted-centroid merge cost.
    """
    if ds.kind != DISTANCE:
        raise ValueError("linkage needs a distance table")
    if not a or not b or set(a) & set(b):
        raise ValueError("clusters must be disjoint and non-empty")
    v = ds.table.values
    if spec.name == "single":
        return float(min(v[x, y] for x in a for y in b))
    if spec.name == "complete":
        return float(max(v[x, y] for x in a for y in b))
    if spec.name == "average":
        w = ds.weights
        num = sum(v[x, y] * w[x] * w[y] for x in a for y in b)
        return float(num / (sum(w[x] for x in a) * sum(w[y] for y in b)))
    # ward
    if ds.coords is None:
        raise ValueError("ward linkage needs coordinates")
    ca, ma = _centroid(a, ds)
    cb, mb = _centroid(b, ds)
    gap2 = float(((ca - cb) ** 2).sum())
    return ma * mb * gap2 / (ma + mb)


def agglomerate(ds: WeightedDataset, spec: LinkageSpec) -> Dendrogram:
    """Bottom-up merge tree: repeatedly merge the linkage-minimal pair.

    Ties (within TIE_REL relative) go to the pair that is first by the
    (min member index, min member index) lexicographic order, so runs are
    deterministic and, for weight-free linkages, weight-independent.
    """
    n = ds.n
    if n < 2:
        raise ValueError("need at least two elements")
    # alive cluster: (node id, sorted members)
    alive: list[tuple[int, list[int]]] = [(i, [i]) for i in range(n)]
    children: list[tuple[int, int]] = []
    heights: list[float] = []
    while len(alive) > 1:
        alive.sort(key=lambda t: t[1][0])
        best = None
        best_pair = None
        for i in range(len(alive)):
            for j in range(i + 1, len(alive)):
                val = linkage_value(spec, alive[i][1], alive[j][1], ds)
                if best is None or best - val > TIE_REL * max(abs(best), abs(val)):
                    best = val
                    best_pair = (i, j)
        i, j = best_pair
        node_a, mem_a = alive[i]
        node_b, mem_b = alive[j]
        new_node = n + len(children)
        children.append((node_a, node_b))
        heights.append(best)
        merged = sorted(mem_a + mem_b)
        alive = [t for idx, t in enumerate(alive) if idx not in (i, j)]
        alive.append((new_node, merged))
    return Dendrogram(n, tuple(children), tuple(heights))


PartitionalHandle = Callable[[WeightedDataset], Clustering]


def _solver(p) -> PartitionalHandle:
    if callable(p):
        return p
    name = str(p)
    return lambda sub: exact_minimize(sub, ObjectiveSpec(name, 2))


def divisive(ds: WeightedDataset, p="kmeans") -> Dendrogram:
    """Top-down tree: recursively split each node in two with the exact
    partitional solver ``p`` (a name from the objective set, or a callable
    mapping a sub-dataset to a 2-clustering).  Two-element sets split into
    singletons directly.
    """
    split = _solver(p)
    n = ds.n
    if n < 2:
        raise ValueError("need at least two elements")
    children: list[tuple[int, int]] = []

    def build(members: list[int]) -> int:
        if len(members) == 1:
            return members[0]
        if len(members) == 2:
            halves = [[members[0]], [members[1]]]
        else:
            sub = ds.subset(members)
            c = split(sub)
            if c.k != 2:
                raise ValueError("partitional handle must return a 2-clustering")
            halves = [[members[i] for i in block] for block in c.blocks()]
        halves.sort(key=min)
        left = build(halves[0])
        right = build(halves[1])
        node = n + len(children)
        children.append((left, right))
        return node

    build(sorted(range(n)))
    return Dendrogram(n, tuple(children))
