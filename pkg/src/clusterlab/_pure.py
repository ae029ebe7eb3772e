"""Pure-Python exact-minimization kernel.

Reference twin of the compiled kernel in ``_native.pyx``: same enumeration
order, same cost formulas, same tie rule.  Selected automatically when the
extension is unavailable (see ``_backend``).
"""

from __future__ import annotations

import numpy as np

from .partitions import iter_rgs

BACKEND_NAME = "pure"

# objective codes shared with the native kernel
KMEANS, KMEDIAN, KMEDOIDS, MINSUM, MINDIAMETER, KCENTER, RATIOCUT = range(7)


def _kahan_add(total: float, comp: float, term: float) -> tuple[float, float]:
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def evaluate(values, weights, labels, k: int, objective: int) -> float:
    """Cost of one partition.  ``labels`` is a restricted-growth string."""
    n = len(labels)
    if objective == MINSUM:
        total = comp = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                if labels[i] == labels[j]:
                    total, comp = _kahan_add(
                        total, comp, values[i][j] * weights[i] * weights[j]
                    )
        return total

    if objective == KMEANS:
        cluster_w = [0.0] * k
        for i in range(n):
            cluster_w[labels[i]] += weights[i]
        num = [0.0] * k
        cmp_ = [0.0] * k
        for i in range(n):
            for j in range(i + 1, n):
                lab = labels[i]
                if lab == labels[j]:
                    num[lab], cmp_[lab] = _kahan_add(
                        num[lab], cmp_[lab],
                        values[i][j] * values[i][j] * weights[i] * weights[j],
                    )
        return sum(num[c] / cluster_w[c] for c in range(k))

    if objective in (KMEDIAN, KMEDOIDS):
        squared = objective == KMEDOIDS
        total = 0.0
        for c in range(k):
            members = [i for i in range(n) if labels[i] == c]
            best = None
            for e in members:
                s = 0.0
                for x in members:
                    d = values[x][e]
                    s += (d * d if squared else d) * weights[x]
                if best is None or s < best:
                    best = s
            total += best
        return total

    if objective == MINDIAMETER:
        worst = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                if labels[i] == labels[j] and values[i][j] > worst:
                    worst = values[i][j]
        return worst

    if objective == KCENTER:
        worst = 0.0
        for c in range(k):
            members = [i for i in range(n) if labels[i] == c]
            radius = min(
                max(values[x][e] for x in members) for e in members
            )
            if radius > worst:
                worst = radius
        return worst

    if objective == RATIOCUT:
        cluster_w = [0.0] * k
        for i in range(n):
            cluster_w[labels[i]] += weights[i]
        total = 0.0
        for c in range(k):
            num = comp = 0.0
            for i in range(n):
                if labels[i] != c:
                    continue
                for j in range(n):
                    if labels[j] != c:
                        num, comp = _kahan_add(
                            num, comp, values[i][j] * weights[i] * weights[j]
                        )
            total += num / cluster_w[c]
        return 0.5 * total

    raise ValueError(f"unknown objective code {objective}")


def minimize(values, weights, k: int, objective: int,
             tie_rel: float = 1e-9) -> tuple[float, np.ndarray]:
    """Cost-minimal k-partition; first in canonical order among relative ties."""
    vals = np.asarray(values, dtype=float).tolist()
    w = np.asarray(weights, dtype=float).tolist()
    n = len(w)
    best_cost = None
    best = None
    for labels in iter_rgs(n, k):
        c = evaluate(vals, w, labels, k, objective)
        if best_cost is None or best_cost - c > tie_rel * best_cost:
            best_cost = c
            best = labels
    return best_cost, np.asarray(best, dtype=np.int64)
