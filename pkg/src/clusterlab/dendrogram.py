"""Binary merge trees and the clusterings they contain."""

from __future__ import annotations

from dataclasses import dataclass, field

from .partitions import Clustering


@dataclass(frozen=True)
class Dendrogram:
    """Binary rooted merge tree over elements 0..n-1.

    Nodes are numbered 0..2n-2: node i < n is the leaf for element i,
    internal node i >= n has children ``children[i - n]``.  Node 2n-2 is
    the root.  ``heights`` optionally records the linkage value at each
    internal node (diagnostic only; never compared).
    """

    n: int
    children: tuple[tuple[int, int], ...]
    heights: tuple[float, ...] | None = None
    _clusters: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dendrogram needs at least two elements")
        if len(self.children) != self.n - 1:
            raise ValueError("binary dendrogram needs exactly n-1 merges")
        clusters: list[frozenset[int]] = [frozenset([i]) for i in range(self.n)]
        for node, (a, b) in enumerate(self.children, start=self.n):
            if not (0 <= a < node and 0 <= b < node):
                raise ValueError("children must precede their parent")
            merged = clusters[a] | clusters[b]
            if len(merged) != len(clusters[a]) + len(clusters[b]):
                raise ValueError("children of a node must be disjoint")
            clusters.append(merged)
        if clusters[-1] != frozenset(range(self.n)):
            raise ValueError("root must cover every element")
        object.__setattr__(self, "_clusters", tuple(clusters))

    def node_cluster(self, node: int) -> frozenset[int]:
        return self._clusters[node]

    def clusters(self) -> frozenset[frozenset[int]]:
        """The set of node clusters; always of size 2n-1 for binary trees
        (n leaves, n-2 proper internal nodes, the root)."""
        return frozenset(self._clusters)

    def outputs(self, c: Clustering) -> bool:
        """True iff every block of ``c`` is a node cluster."""
        node_sets = self.clusters()
        return all(frozenset(b) in node_sets for b in c.blocks())

    def level_clustering(self, k: int) -> Clustering:
        """The k-clustering left standing after n-k merges.

        Every block is a node cluster, so the dendrogram outputs it.
        """
        if not (1 < k < self.n):
            raise ValueError(f"need 1 < k < n, got k={k}")
        alive: dict[int, frozenset[int]] = {i: frozenset([i]) for i in range(self.n)}
        for node, (a, b) in enumerate(self.children, start=self.n):
            if len(alive) == k:
                break
            del alive[a]
            del alive[b]
            alive[node] = self._clusters[node]
        labels = [0] * self.n
        for lab, members in enumerate(alive.values()):
            for i in members:
                labels[i] = lab
        return Clustering(tuple(labels))

    def to_newick(self) -> str:
        """Canonical Newick-like text: leaf indices, children ordered by
        smallest descendant leaf, no branch lengths."""

        def render(node: int) -> tuple[int, str]:
            if node < self.n:
                return node, str(node)
            a, b = self.children[node - self.n]
            (ma, sa), (mb, sb) = render(a), render(b)
            if mb < ma:
                (ma, sa), (mb, sb) = (mb, sb), (ma, sa)
            return ma, f"({sa},{sb})"

        return render(2 * self.n - 2)[1] + ";"

    def same_structure(self, other: "Dendrogram") -> bool:
        """Structural equality: identical sets of node clusters."""
        return self.n == other.n and self.clusters() == other.clusters()
