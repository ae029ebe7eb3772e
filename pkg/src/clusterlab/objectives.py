"""The seven partitional cost functions and the exact minimizer.

Pair sums (k-means, min-sum) run over unordered pairs, which makes the
k-means cost coincide with the weighted center-of-mass formulation on
coordinate data.  Ratio-cut sums ordered cross pairs and halves the total.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernel
from .dataset import DISTANCE, SIMILARITY, WeightedDataset
from .partitions import Clustering, EnumerationCapError, enumeration_cap

TIE_REL = 1e-9

PARTITIONAL_OBJECTIVES = (
    "kmeans", "kmedian", "kmedoids", "minsum", "mindiameter", "kcenter", "ratiocut",
)

_CODES = {name: code for code, name in enumerate(PARTITIONAL_OBJECTIVES)}

# objectives whose cost never reads the weight vector
WEIGHT_FREE = frozenset({"mindiameter", "kcenter"})

# objectives that can be forced to separate any small set by spiking it
WEIGHT_SEPARABLE = frozenset({"kmeans", "kmedian", "kmedoids", "minsum"})


class ObjectiveKindError(ValueError):
    pass


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    k: int

    def __post_init__(self):
        if self.name not in _CODES:
            raise ValueError(f"unknown objective {self.name!r}")
        if self.k < 2:
            raise ValueError("need k >= 2")

    @property
    def required_kind(self) -> str:
        return SIMILARITY if self.name == "ratiocut" else DISTANCE

    @property
    def code(self) -> int:
        return _CODES[self.name]


def _check_kind(name: str, ds: WeightedDataset) -> None:
    need = SIMILARITY if name == "ratiocut" else DISTANCE
    if ds.kind != need:
        raise ObjectiveKindError(f"{name} needs a {need} table, got {ds.kind}")


def _pair_sum(c: Clustering, ds: WeightedDataset, power: int) -> float:
    v, w = ds.table.values, ds.weights
    total = 0.0
    for block in c.blocks():
        for ai, x in enumerate(block):
            for y in block[ai + 1:]:
                total += v[x, y] ** power * w[x] * w[y]
    return total


def kmeans_cost(c: Clustering, ds: WeightedDataset) -> float:
    """Sum over clusters of weighted squared pair distances over cluster weight."""
    _check_kind("kmeans", ds)
    v, w = ds.table.values, ds.weights
    total = 0.0
    for block in c.blocks():
        num = 0.0
        for ai, x in enumerate(block):
            for y in block[ai + 1:]:
                num += v[x, y] ** 2 * w[x] * w[y]
        total += num / sum(w[x] for x in block)
    return total


def minsum_cost(c: Clustering, ds: WeightedDataset) -> float:
    _check_kind("minsum", ds)
    return _pair_sum(c, ds, power=1)


def _exemplar_cost(c: Clustering, ds: WeightedDataset, squared: bool) -> float:
    v, w = ds.table.values, ds.weights
    total = 0.0
    for block in c.blocks():
        total += min(
            sum((v[x, e] ** 2 if squared else v[x, e]) * w[x] for x in block)
            for e in block
        )
    return total


def kmedian_cost(c: Clustering, ds: WeightedDataset) -> float:
    _check_kind("kmedian", ds)
    return _exemplar_cost(c, ds, squared=False)


def kmedoids_cost(c: Clustering, ds: WeightedDataset) -> float:
    _check_kind("kmedoids", ds)
    return _exemplar_cost(c, ds, squared=True)


def mindiameter_cost(c: Clustering, ds: WeightedDataset) -> float:
    """Largest within-cluster distance; reads no weights."""
    _check_kind("mindiameter", ds)
    v = ds.table.values
    worst = 0.0
    for block in c.blocks():
        for ai, x in enumerate(block):
            for y in block[ai + 1:]:
                if v[x, y] > worst:
                    worst = v[x, y]
    return worst


def kcenter_cost(c: Clustering, ds: WeightedDataset) -> float:
    """Largest cluster radius under the best in-cluster exemplar; weight-free."""
    _check_kind("kcenter", ds)
    v = ds.table.values
    worst = 0.0
    for block in c.blocks():
        radius = min(max(v[x, e] for x in block) for e in block)
        worst = max(worst, radius)
    return worst


def ratiocut_cost(c: Clustering, ds: WeightedDataset) -> float:
    """Half the sum over clusters of cross-boundary weighted similarity
    divided by cluster weight."""
    _check_kind("ratiocut", ds)
    v, w = ds.table.values, ds.weights
    total = 0.0
    for block in c.blocks():
        inside = np.zeros(ds.n, dtype=bool)
        inside[block] = True
        num = float(
            (v[np.ix_(inside, ~inside)] * np.outer(w[inside], w[~inside])).sum()
        )
        total += num / float(w[inside].sum())
    return 0.5 * total


_COST_FNS = {
    "kmeans": kmeans_cost,
    "kmedian": kmedian_cost,
    "kmedoids": kmedoids_cost,
    "minsum": minsum_cost,
    "mindiameter": mindiameter_cost,
    "kcenter": kcenter_cost,
    "ratiocut": ratiocut_cost,
}


def cost(c: Clustering, ds: WeightedDataset, spec: ObjectiveSpec) -> float:
    return _COST_FNS[spec.name](c, ds)


def centroid_kmeans_cost(c: Clustering, ds: WeightedDataset) -> float:
    """Weighted center-of-mass k-means cost; requires coordinates.

    Kept as the independent cross-check of :func:`kmeans_cost`.
    """
    if ds.coords is None:
        raise ValueError("centroid cost needs coordinates")
    w = ds.weights
    total = 0.0
    for block in c.blocks():
        pts = ds.coords[block]
        bw = w[block]
        mu = (pts * bw[:, None]).sum(axis=0) / bw.sum()
        total += float((bw * ((pts - mu) ** 2).sum(axis=1)).sum())
    return total


def exact_minimize(ds: WeightedDataset, spec: ObjectiveSpec,
                   backend: str | None = None) -> Clustering:
    """The cost-minimal k-clustering by full enumeration.

    Among costs tied within TIE_REL relative, the first partition in
    canonical order wins.  Weights are rescaled to max 1 before evaluation
    (the argmin is scale-invariant), which keeps spike regimes in range.
    """
    _check_kind(spec.name, ds)
    if not 1 < spec.k < ds.n:
        raise ValueError(f"need 1 < k < n, got k={spec.k}, n={ds.n}")
    cap = enumeration_cap()
    if ds.n > cap:
        raise EnumerationCapError(
            f"n={ds.n} exceeds the enumeration cap {cap}"
        )
    kernel = get_kernel(backend)
    weights = ds.weights / ds.weights.max()
    _, labels = kernel.minimize(
        ds.table.values, weights, spec.k, spec.code, TIE_REL
    )
    return Clustering(tuple(int(x) for x in labels))
