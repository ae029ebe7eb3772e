"""Set partitions as restricted-growth strings, and the Clustering type.

A partition of ``{0, .., n-1}`` into unlabeled blocks is stored in canonical
restricted-growth form: label 0 appears first, and every new label is one
larger than the largest label seen so far.  Lexicographic order on these
strings is the canonical enumeration order used by every exact solver.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

DEFAULT_MAX_N = 12
ENV_MAX_N = "CLUSTERLAB_MAX_N"


class EnumerationCapError(ValueError):
    """Raised when a brute-force enumeration would exceed the size cap."""


def enumeration_cap() -> int:
    raw = os.environ.get(ENV_MAX_N)
    return int(raw) if raw else DEFAULT_MAX_N


def to_restricted_growth(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel cluster ids by order of first appearance."""
    mapping: dict[int, int] = {}
    out = []
    for lab in labels:
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out.append(mapping[lab])
    return tuple(out)


@dataclass(frozen=True)
class Clustering:
    """A k-partition of elements 0..n-1 into non-empty unlabeled blocks.

    Stored canonically (restricted-growth form), so two Clusterings are
    equal iff they are the same partition.  The non-trivial bounds
    1 < k < n are enforced.
    """

    assignment: tuple[int, ...]
    k: int = field(default=0)

    def __post_init__(self):
        canon = to_restricted_growth(self.assignment)
        object.__setattr__(self, "assignment", canon)
        k = (max(canon) + 1) if canon else 0
        object.__setattr__(self, "k", k)
        n = len(canon)
        if not (1 < k < n):
            raise ValueError(f"clustering must satisfy 1 < k < n, got k={k}, n={n}")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for i, lab in enumerate(self.assignment):
            out[lab].append(i)
        return out

    def block_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(b) for b in self.blocks())

    def same_block(self, i: int, j: int) -> bool:
        return self.assignment[i] == self.assignment[j]

    def has_singleton(self) -> bool:
        return any(len(b) == 1 for b in self.blocks())

    def relabel(self, index_map: Sequence[int]) -> "Clustering":
        """Clustering over a new index set; index_map[new] = old."""
        return Clustering(tuple(self.assignment[old] for old in index_map))


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, by the standard recurrence."""
    if k < 0 or k > n:
        return 0
    table = [1] + [0] * k
    for row in range(1, n + 1):
        for col in range(min(row, k), 0, -1):
            table[col] = col * table[col] + table[col - 1]
        table[0] = 0 if row else 1
    return table[k]


def iter_rgs(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of length n with exactly k labels,
    in lexicographic order."""
    a = [0] * n

    def rec(i: int, used: int):
        if i == n:
            if used == k:
                yield tuple(a)
            return
        # can't reach k labels if too few positions remain
        hi = min(used, k - 1)
        for lab in range(hi + 1):
            a[i] = lab
            nu = used + (1 if lab == used else 0)
            if nu + (n - i - 1) >= k:
                yield from rec(i + 1, nu)

    yield from rec(1, 1) if n else iter(())


def enumerate_partitions(n: int, k: int, cap: int | None = None) -> Iterator[Clustering]:
    """Every k-partition of n elements, canonical order, exactly once."""
    if not (1 < k < n):
        raise ValueError(f"need 1 < k < n, got k={k}, n={n}")
    limit = cap if cap is not None else enumeration_cap()
    if n > limit:
        raise EnumerationCapError(
            f"n={n} exceeds the enumeration cap {limit} "
            f"(override with {ENV_MAX_N})"
        )
    for rgs in iter_rgs(n, k):
        yield Clustering(rgs)


def count_partitions(n: int, k: int) -> int:
    return stirling2(n, k)


def all_clusterings(n: int, cap: int | None = None) -> Iterator[Clustering]:
    """Every valid clustering (all k with 1 < k < n), canonical order."""
    for k in range(2, n):
        yield from enumerate_partitions(n, k, cap=cap)


def factorial(n: int) -> int:
    return math.factorial(n)
