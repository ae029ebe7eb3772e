"""Weighted datasets: pairwise tables, validation, de-duplication, expansion,
and the on-disk JSON format.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DISTANCE = "distance"
SIMILARITY = "similarity"

COORD_TOL = 1e-9


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class PairTable:
    """Symmetric n x n table of pairwise distances or similarities."""

    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in (DISTANCE, SIMILARITY):
            raise DatasetError(f"unknown table kind {self.kind!r}")
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise DatasetError("table must be square")
        if not np.array_equal(vals, vals.T):
            i, j = next(zip(*np.nonzero(vals != vals.T)))
            raise DatasetError(f"asymmetric table at ({i},{j})")
        if (vals < 0).any():
            raise DatasetError("negative table entry")

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class WeightedDataset:
    """A pair table plus strictly positive per-element weights.

    ``coords`` is present when elements carry explicit positions (needed by
    Ward's linkage and emitted by the coordinate generators); the table is
    then required to agree with the Euclidean metric on the coordinates.
    """

    table: PairTable
    weights: np.ndarray
    coords: np.ndarray | None = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 1 or len(w) != self.table.n:
            raise DatasetError("weights length must match table size")
        if (w <= 0).any():
            raise DatasetError("non-positive weight")
        if self.coords is not None:
            c = np.asarray(self.coords, dtype=float)
            if c.ndim == 1:
                c = c[:, None]
            object.__setattr__(self, "coords", c)
            if c.shape[0] != self.table.n:
                raise DatasetError("coords length must match table size")
            metric = pairwise_distances(c)
            if not np.allclose(metric, self.table.values, rtol=0, atol=COORD_TOL):
                raise DatasetError("table disagrees with coordinate metric")

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def kind(self) -> str:
        return self.table.kind

    def total_weight(self) -> float:
        return float(self.weights.sum())

    def reweighted(self, weights: Sequence[float]) -> "WeightedDataset":
        return WeightedDataset(self.table, np.asarray(weights, dtype=float), self.coords)

    def subset(self, indices: Sequence[int]) -> "WeightedDataset":
        idx = np.asarray(indices, dtype=int)
        table = PairTable(self.kind, self.table.values[np.ix_(idx, idx)])
        coords = self.coords[idx] if self.coords is not None else None
        return WeightedDataset(table, self.weights[idx], coords)


def pairwise_distances(coords: np.ndarray) -> np.ndarray:
    c = np.asarray(coords, dtype=float)
    if c.ndim == 1:
        c = c[:, None]
    diff = c[:, None, :] - c[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def validate_dataset(
    table: PairTable,
    weights: Sequence[float],
    coords: Sequence[Sequence[float]] | None = None,
    allow_duplicates: bool = True,
) -> WeightedDataset:
    """Check table/weight invariants and return the dataset.

    For distance tables, a zero off-diagonal entry is only accepted between
    duplicate elements (identical rows); raw input may carry duplicates,
    which :func:`dedupe` collapses.  Pass ``allow_duplicates=False`` to
    insist on an already de-duplicated metric.
    """
    ds = WeightedDataset(table, np.asarray(weights, dtype=float),
                         None if coords is None else np.asarray(coords, dtype=float))
    if table.kind == DISTANCE:
        vals = table.values
        if np.diagonal(vals).any():
            raise DatasetError("distance diagonal must be zero")
        zero = np.argwhere((vals == 0) & ~np.eye(table.n, dtype=bool))
        for i, j in zero:
            if not np.array_equal(vals[i], vals[j]):
                raise DatasetError(
                    f"zero distance between non-duplicates {i} and {j}"
                )
            if not allow_duplicates:
                raise DatasetError(
                    f"duplicate elements {i} and {j}; de-duplicate first"
                )
    return ds


def dedupe(table: PairTable, tol: float = 0.0) -> WeightedDataset:
    """Collapse duplicate elements of a unit-weight distance table.

    Duplicates are elements at distance <= tol whose rows agree entrywise
    (within tol).  Each duplicate class keeps its lowest-index
    representative, weighted by the class size.
    """
    if table.kind != DISTANCE:
        raise DatasetError("dedupe is defined for distance tables")
    vals = table.values
    n = table.n
    rep: list[int] = []
    weight: list[float] = []
    for i in range(n):
        assigned = False
        for ri, r in enumerate(rep):
            if vals[r, i] <= tol:
                if np.abs(vals[r] - vals[i]).max() > tol:
                    raise DatasetError(
                        f"zero distance between non-duplicates {r} and {i}"
                    )
                weight[ri] += 1.0
                assigned = True
                break
        if not assigned:
            rep.append(i)
            weight.append(1.0)
    idx = np.asarray(rep, dtype=int)
    sub = PairTable(DISTANCE, vals[np.ix_(idx, idx)])
    return WeightedDataset(sub, np.asarray(weight))


def expand(ds: WeightedDataset) -> tuple[WeightedDataset, list[int]]:
    """Replace each integer-weight element by that many unit-weight copies.

    Returns the expanded dataset together with the copy->original index map.
    Copies of one element are contiguous, so expansion preserves the
    canonical (lexicographic) partition order.

    Distance copies sit at distance zero.  Similarity copies get a mutual
    similarity dominating every achievable cost, the similarity analog of
    being duplicates: no minimizer can afford to separate them.
    """
    counts = []
    for i, w in enumerate(ds.weights):
        c = round(float(w))
        if abs(w - c) > 0 or c < 1:
            raise DatasetError(f"weight of element {i} is not a positive integer")
        counts.append(c)
    index_map = [i for i, c in enumerate(counts) for _ in range(c)]
    idx = np.asarray(index_map, dtype=int)
    vals = ds.table.values[np.ix_(idx, idx)]
    if ds.kind == SIMILARITY:
        m = len(index_map)
        glue = vals.max() * m**3 + 1.0
        for i in range(m):
            for j in range(i + 1, m):
                if index_map[i] == index_map[j]:
                    vals[i, j] = vals[j, i] = glue
    table = PairTable(ds.kind, vals)
    coords = ds.coords[idx] if ds.coords is not None else None
    out = WeightedDataset(table, np.ones(len(index_map)), coords)
    return out, index_map


def from_coords(coords, weights=None) -> WeightedDataset:
    c = np.asarray(coords, dtype=float)
    if c.ndim == 1:
        c = c[:, None]
    w = np.ones(len(c)) if weights is None else np.asarray(weights, dtype=float)
    table = PairTable(DISTANCE, pairwise_distances(c))
    return WeightedDataset(table, w, c)


# --- on-disk format -------------------------------------------------------

def to_json_dict(ds: WeightedDataset, planted=None) -> dict:
    doc = {
        "kind": ds.kind,
        "n": ds.n,
        "weights": [float(w) for w in ds.weights],
    }
    if ds.coords is not None:
        doc["coords"] = [[float(v) for v in row] for row in ds.coords]
    else:
        doc["matrix"] = [[float(v) for v in row] for row in ds.table.values]
    if planted is not None:
        doc["planted"] = list(planted.assignment)
    return doc


def from_json_dict(doc: dict) -> tuple[WeightedDataset, "object"]:
    from .partitions import Clustering

    kind = doc["kind"]
    weights = doc["weights"]
    has_matrix = "matrix" in doc
    has_coords = "coords" in doc
    if has_matrix == has_coords:
        raise DatasetError("dataset file needs exactly one of matrix/coords")
    if has_coords:
        if kind != DISTANCE:
            raise DatasetError("coords imply a distance table")
        ds = from_coords(doc["coords"], weights)
    else:
        table = PairTable(kind, np.asarray(doc["matrix"], dtype=float))
        ds = WeightedDataset(table, np.asarray(weights, dtype=float))
    if ds.n != doc["n"]:
        raise DatasetError("declared n disagrees with data")
    planted = None
    if doc.get("planted") is not None:
        planted = Clustering(tuple(doc["planted"]))
    return ds, planted


def save_dataset(path: str, ds: WeightedDataset, planted=None) -> None:
    write_atomic(path, json.dumps(to_json_dict(ds, planted), indent=2) + "\n")


def load_dataset(path: str) -> tuple[WeightedDataset, "object"]:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def is_finite(x: float) -> bool:
    return math.isfinite(x)
