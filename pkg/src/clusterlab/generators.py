"""Dataset generators: planted-structure similarity data, nice blocks,
and generic random data.  All emit unit weights; the probe supplies
weightings.
"""

from __future__ import annotations

import numpy as np

from .dataset import (
    DISTANCE,
    SIMILARITY,
    PairTable,
    WeightedDataset,
    from_coords,
)
from .partitions import Clustering


class GeneratorError(ValueError):
    pass


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _block_sizes(n: int, k: int, rng: np.random.Generator, min_size: int = 2) -> list[int]:
    if n < k * min_size:
        raise GeneratorError(f"need n >= {k * min_size} for {k} blocks of >= {min_size}")
    sizes = [min_size] * k
    for _ in range(n - k * min_size):
        sizes[rng.integers(k)] += 1
    return sizes


def _planted(sizes: list[int]) -> Clustering:
    labels = []
    for lab, size in enumerate(sizes):
        labels.extend([lab] * size)
    return Clustering(tuple(labels))


def perfect_uniform(
    n: int,
    k: int,
    seed=0,
    within: tuple[float, float] = (4.0, 6.0),
    lam: float = 1.0,
    cross_jitter: float = 0.0,
    defect_pairs: int = 0,
) -> tuple[WeightedDataset, Clustering]:
    """Similarity data with a planted k-clustering.

    With the defaults the planted clustering is perfect and
    separation-uniform with cross value ``lam``.  ``cross_jitter`` spreads
    the cross similarities (breaking uniformity while staying perfect as
    long as the jittered values stay below ``within[0]``); ``defect_pairs``
    drops that many within-cluster similarities below ``lam`` (breaking
    perfectness).
    """
    lo, hi = within
    if not 0 <= lam < lo:
        raise GeneratorError("need 0 <= lam < min within similarity")
    if cross_jitter < 0 or lam + cross_jitter >= lo:
        raise GeneratorError("cross jitter must keep cross below within")
    rng = _rng(seed)
    sizes = _block_sizes(n, k, rng)
    c = _planted(sizes)
    s = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if c.same_block(i, j):
                val = rng.uniform(lo, hi)
            elif cross_jitter:
                val = lam + rng.uniform(-cross_jitter, cross_jitter)
            else:
                val = lam
            s[i, j] = s[j, i] = val
    if defect_pairs:
        within_pairs = [
            (i, j) for i in range(n) for j in range(i + 1, n) if c.same_block(i, j)
        ]
        picks = rng.choice(len(within_pairs), size=min(defect_pairs, len(within_pairs)),
                           replace=False)
        for p in picks:
            i, j = within_pairs[p]
            s[i, j] = s[j, i] = lam * rng.uniform(0.3, 0.8)
    table = PairTable(SIMILARITY, s)
    return WeightedDataset(table, np.ones(n)), c


def nice_blocks(
    n: int,
    k: int,
    seed=0,
    gap: float = 5.0,
    dim: int = 1,
) -> tuple[WeightedDataset, Clustering]:
    """Coordinate data whose planted k-clustering is nice.

    Blocks of diameter <= 1 spaced so that every cross distance exceeds
    every within distance (a global gap, which implies niceness).
    """
    if gap <= 1.0:
        raise GeneratorError("need gap > 1 (block diameter) for strict niceness")
    rng = _rng(seed)
    sizes = _block_sizes(n, k, rng)
    c = _planted(sizes)
    pts = []
    for lab, size in enumerate(sizes):
        offset = np.zeros(dim)
        offset[0] = lab * (1.0 + gap)
        # diameter of a block is at most 1
        pts.extend(offset + rng.uniform(0, 1 / np.sqrt(dim), size=(size, dim)))
    ds = from_coords(np.asarray(pts))
    return ds, c


def random_points(n: int, seed=0, dim: int = 2, scale: float = 10.0) -> WeightedDataset:
    """Generic coordinate data; generically admits no nice clustering."""
    rng = _rng(seed)
    return from_coords(rng.uniform(0, scale, size=(n, dim)))


def random_similarity(n: int, seed=0, lo: float = 0.5, hi: float = 5.0) -> WeightedDataset:
    """Generic symmetric similarity table with entries in [lo, hi]."""
    rng = _rng(seed)
    s = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            s[i, j] = s[j, i] = rng.uniform(lo, hi)
    return WeightedDataset(PairTable(SIMILARITY, s), np.ones(n))


def line(positions, weights=None) -> WeightedDataset:
    """One-dimensional coordinate data at the given positions."""
    return from_coords(np.asarray(positions, dtype=float), weights)
