"""Clusterability detectors: perfect, separation-uniform, nice.

All three read only the pair table, never the weights.  Comparisons are
exact by default; pass a tolerance for floating-point data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import DISTANCE, SIMILARITY, WeightedDataset
from .partitions import Clustering, all_clusterings


@dataclass(frozen=True)
class StructureReport:
    perfect: bool | None
    separation_uniform: bool | None
    lam: float | None
    nice: bool | None
    witnesses: dict

    def to_dict(self) -> dict:
        return {
            "perfect": self.perfect,
            "separationUniform": self.separation_uniform,
            "lambda": self.lam,
            "nice": self.nice,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _check(ds: WeightedDataset, kind: str, what: str) -> None:
    if ds.kind != kind:
        raise ValueError(f"{what} needs a {kind} table, got {ds.kind}")


def is_perfect(c: Clustering, ds: WeightedDataset) -> tuple[bool, tuple | None]:
    """Every within-cluster similarity strictly above every cross similarity.

    Returns (flag, witness); the witness is the minimal-index violating
    4-tuple (x1, x2, x3, x4) with x1 ~ x2, x3 !~ x4, s(x1,x2) <= s(x3,x4).
    """
    _check(ds, SIMILARITY, "is_perfect")
    s = ds.table.values
    n = ds.n
    within = [(i, j) for i in range(n) for j in range(i + 1, n) if c.same_block(i, j)]
    cross = [(i, j) for i in range(n) for j in range(i + 1, n) if not c.same_block(i, j)]
    for x1, x2 in within:
        for x3, x4 in cross:
            if not s[x1, x2] > s[x3, x4]:
                return False, (x1, x2, x3, x4)
    return True, None


def is_separation_uniform(
    c: Clustering, ds: WeightedDataset, tol: float = 0.0
) -> tuple[bool, float | None]:
    """All cross-cluster similarities within tol of a common value.

    Returns (flag, lambda) where lambda is the mean cross similarity when
    uniform, else None.
    """
    _check(ds, SIMILARITY, "is_separation_uniform")
    s = ds.table.values
    n = ds.n
    cross = [
        s[i, j]
        for i in range(n)
        for j in range(i + 1, n)
        if not c.same_block(i, j)
    ]
    lo, hi = min(cross), max(cross)
    # a common value within tol of every cross similarity exists iff the
    # spread fits in a 2*tol window
    if hi - lo <= 2 * tol:
        return True, float(sum(cross) / len(cross))
    return False, None


def is_nice(c: Clustering, ds: WeightedDataset) -> tuple[bool, tuple | None]:
    """Every point strictly closer to all of its cluster than to any outsider.

    Returns (flag, witness (x1, x2, x3) with x1 ~ x2, x1 !~ x3 and
    d(x1,x2) >= d(x1,x3)).
    """
    _check(ds, DISTANCE, "is_nice")
    d = ds.table.values
    n = ds.n
    for x1 in range(n):
        for x2 in range(n):
            if x2 == x1 or not c.same_block(x1, x2):
                continue
            for x3 in range(n):
                if c.same_block(x1, x3):
                    continue
                if not d[x1, x2] < d[x1, x3]:
                    return False, (x1, x2, x3)
    return True, None


def structure_report(c: Clustering, ds: WeightedDataset, tol: float = 0.0) -> StructureReport:
    witnesses: dict = {}
    if ds.kind == SIMILARITY:
        perfect, pw = is_perfect(c, ds)
        uniform, lam = is_separation_uniform(c, ds, tol)
        if pw is not None:
            witnesses["perfect"] = pw
        return StructureReport(perfect, uniform, lam, None, witnesses)
    nice, nw = is_nice(c, ds)
    if nw is not None:
        witnesses["nice"] = nw
    return StructureReport(None, None, None, nice, witnesses)


def enumerate_nice_clusterings(ds: WeightedDataset, cap: int | None = None) -> list[Clustering]:
    """All clusterings (every valid k) passing is_nice, canonical order."""
    _check(ds, DISTANCE, "enumerate_nice_clusterings")
    out = []
    for c in all_clusterings(ds.n, cap=cap):
        if is_nice(c, ds)[0]:
            out.append(c)
    return out
