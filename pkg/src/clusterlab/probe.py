"""Weight-response probing: witness search, robustness certificates,
separability tests, range sampling, and algorithm classification.

An algorithm is *responsive* on a clustering when some weighting produces
it and some other weighting does not; responsive verdicts always carry
both replayable witness weightings.  Robustness is never concluded from a
failed search, only from a certificate: a weight-free computation, a nice
clustering under average-linkage, or a perfect separation-uniform
clustering under ratio-cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import DISTANCE, SIMILARITY, WeightedDataset
from .dendrogram import Dendrogram
from .linkage import LinkageSpec, agglomerate, divisive
from .objectives import (
    PARTITIONAL_OBJECTIVES,
    TIE_REL,
    WEIGHT_FREE,
    ObjectiveSpec,
    cost,
    exact_minimize,
)
from .partitions import Clustering
from .structure import is_nice, is_perfect, is_separation_uniform

HIERARCHICAL_IDS = ("single", "complete", "average", "ward", "divisive")

# geometric spike ladder from the proofs' "sufficiently large W"
W_LADDER = tuple(10.0**e for e in range(2, 10))

RANDOM_LOG_RANGE = (-2.0, 2.0)  # log10 bounds for random weightings

RESPONSIVE = "responsive"
ROBUST_ON_CLUSTERING = "robustOnClustering"
INCONCLUSIVE = "inconclusive"


class TheoremInconsistencyError(RuntimeError):
    """A clustering got both a robustness certificate and a removal witness."""


@dataclass(frozen=True)
class AlgorithmHandle:
    """Uniform wrapper over the partitional and hierarchical algorithms."""

    id: str
    k: int | None = None  # partitional only
    p: str = "kmeans"     # divisive's inner solver

    def __post_init__(self):
        if self.id in PARTITIONAL_OBJECTIVES:
            if self.k is None or self.k < 2:
                raise ValueError(f"partitional handle {self.id} needs k >= 2")
        elif self.id in HIERARCHICAL_IDS:
            if self.k is not None:
                raise ValueError(f"hierarchical handle {self.id} takes no k")
            if self.id == "divisive" and self.p not in PARTITIONAL_OBJECTIVES:
                raise ValueError(f"unknown divisive solver {self.p!r}")
        else:
            raise ValueError(f"unknown algorithm {self.id!r}")

    @property
    def hierarchical(self) -> bool:
        return self.id in HIERARCHICAL_IDS

    @property
    def required_kind(self) -> str:
        return SIMILARITY if self.id == "ratiocut" else DISTANCE

    @property
    def label(self) -> str:
        if self.id == "divisive":
            return f"divisive({self.p})"
        if self.hierarchical:
            return self.id
        return f"{self.id}(k={self.k})"


@dataclass(frozen=True)
class Verdict:
    clustering: Clustering
    status: str
    witness_produce: tuple[float, ...] | None = None
    witness_remove: tuple[float, ...] | None = None
    trials: int = 0
    max_w: float = 0.0

    def to_dict(self) -> dict:
        return {
            "clustering": list(self.clustering.assignment),
            "status": self.status,
            "witnessProduce": list(self.witness_produce) if self.witness_produce else None,
            "witnessRemove": list(self.witness_remove) if self.witness_remove else None,
            "trials": self.trials,
            "maxW": self.max_w,
        }


@dataclass
class CategoryReport:
    algorithm: AlgorithmHandle
    category: str
    evidence: list[Verdict] = field(default_factory=list)
    range_sizes: list[int] = field(default_factory=list)

    def counts(self) -> dict:
        out = {RESPONSIVE: 0, ROBUST_ON_CLUSTERING: 0, INCONCLUSIVE: 0}
        for v in self.evidence:
            out[v.status] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.label,
            "category": self.category,
            "counts": self.counts(),
            "rangeSizes": self.range_sizes,
            "evidence": [v.to_dict() for v in self.evidence],
        }


def run_algorithm(a: AlgorithmHandle, ds: WeightedDataset):
    """Dispatch to the exact solvers; deterministic."""
    if a.id in PARTITIONAL_OBJECTIVES:
        return exact_minimize(ds, ObjectiveSpec(a.id, a.k))
    if a.id == "divisive":
        return divisive(ds, a.p)
    return agglomerate(ds, LinkageSpec(a.id))


def produces(a: AlgorithmHandle, ds: WeightedDataset, weights, c: Clustering) -> bool:
    """Does A under this weighting output c?"""
    result = run_algorithm(a, ds.reweighted(weights))
    if isinstance(result, Dendrogram):
        return result.outputs(c)
    return result == c


def removes(a: AlgorithmHandle, ds: WeightedDataset, weights, c: Clustering) -> bool:
    """Does A under this weighting genuinely not output c?

    For partitional handles the output must beat c by a real cost gap:
    under extreme spikes the rescaled light-point terms can fall inside
    the minimizer's tie tolerance, and the canonical-first tie rule would
    otherwise fabricate removals of cost-optimal clusterings.
    """
    rds = ds.reweighted(weights)
    result = run_algorithm(a, rds)
    if isinstance(result, Dendrogram):
        return not result.outputs(c)
    if result == c:
        return False
    spec = ObjectiveSpec(a.id, a.k)
    scaled = rds.reweighted(rds.weights / rds.weights.max())
    c_cost = cost(c, scaled, spec)
    r_cost = cost(result, scaled, spec)
    return c_cost - r_cost > TIE_REL * max(abs(c_cost), abs(r_cost))


# --- weight families --------------------------------------------------------

def unit_weights(n: int) -> np.ndarray:
    return np.ones(n)


def random_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    lo, hi = RANDOM_LOG_RANGE
    return 10.0 ** rng.uniform(lo, hi, size=n)


def spike_weights(n: int, members, w: float) -> np.ndarray:
    out = np.ones(n)
    out[list(members)] = w
    return out


def _niceness_violating_pairs(c: Clustering, ds: WeightedDataset) -> list[tuple[int, int]]:
    """Within-cluster pairs (x1,x2) with some outsider x3 strictly closer
    to x1 than x2 is; the removal construction for average linkage."""
    d = ds.table.values
    out = []
    for block in c.blocks():
        for ai, x1 in enumerate(block):
            for x2 in block[ai + 1:]:
                for x3 in range(ds.n):
                    if c.assignment[x3] != c.assignment[x1]:
                        if d[x1, x2] > d[x1, x3] or d[x2, x1] > d[x2, x3]:
                            out.append((x1, x2))
                            break
    return out


def _within_pairs(c: Clustering) -> list[tuple[int, int]]:
    out = []
    for block in c.blocks():
        for ai, x in enumerate(block):
            for y in block[ai + 1:]:
                out.append((x, y))
    return out


def _phase2_candidates(a: AlgorithmHandle, ds: WeightedDataset, c: Clustering,
                       rng: np.random.Generator):
    """Removal-witness weightings, the proofs' constructions first.

    Yields (weights, W_or_0) in priority order: pair spikes on within pairs
    violating niceness (distance data), single-point spikes, remaining
    within-pair spikes, inverse spikes, then random weightings.
    """
    n = ds.n
    prioritized: list[tuple[int, ...]] = []
    if ds.kind == DISTANCE:
        prioritized = _niceness_violating_pairs(c, ds)
    rest = [p for p in _within_pairs(c) if p not in prioritized]
    for w in W_LADDER:
        for pair in prioritized:
            yield spike_weights(n, pair, w), w
        for x in range(n):
            yield spike_weights(n, [x], w), w
        for pair in rest:
            yield spike_weights(n, pair, w), w
        for x in range(n):
            yield spike_weights(n, [x], 1.0 / w), w
    while True:
        yield random_weights(n, rng), 0.0


def responsiveness_probe(
    a: AlgorithmHandle,
    ds: WeightedDataset,
    c: Clustering,
    budget: int = 400,
    seed: int = 0,
    produce_hint=None,
) -> Verdict:
    """Search for both halves of weight-responsiveness on ``c``.

    Phase 1 looks for a weighting under which A outputs c; phase 2 for one
    under which it does not, trying the proofs' spike constructions before
    random weightings.  Budget exhaustion yields an inconclusive verdict,
    never a robustness claim.
    """
    rng = np.random.default_rng(seed)
    n = ds.n
    trials = 0
    max_w = 0.0

    witness_produce = None
    phase1: list[np.ndarray] = []
    if produce_hint is not None:
        phase1.append(np.asarray(produce_hint, dtype=float))
    phase1.append(unit_weights(n))
    phase1.extend(random_weights(n, rng) for _ in range(30))
    for w in phase1:
        if trials >= budget:
            break
        trials += 1
        if produces(a, ds, w, c):
            witness_produce = w
            break

    witness_remove = None
    if witness_produce is not None:
        for w, spike in _phase2_candidates(a, ds, c, rng):
            if trials >= budget:
                break
            trials += 1
            max_w = max(max_w, spike)
            if removes(a, ds, w, c):
                witness_remove = w
                break

    if witness_produce is not None and witness_remove is not None:
        # soundness: witnesses must replay
        assert produces(a, ds, witness_produce, c)
        assert removes(a, ds, witness_remove, c)
        return Verdict(
            c, RESPONSIVE,
            tuple(float(x) for x in witness_produce),
            tuple(float(x) for x in witness_remove),
            trials, max_w,
        )
    return Verdict(c, INCONCLUSIVE, None, None, trials, max_w)


def robustness_certificate(a: AlgorithmHandle, ds: WeightedDataset, c: Clustering) -> bool:
    """True only when a theorem guarantees weight-robustness on ``c``:
    weight-free algorithms, average linkage on a nice clustering, or
    ratio-cut on a perfect separation-uniform clustering."""
    if a.id in ("single", "complete") or a.id in WEIGHT_FREE:
        return True
    if a.id == "average":
        return is_nice(c, ds)[0]
    if a.id == "ratiocut":
        return is_perfect(c, ds)[0] and is_separation_uniform(c, ds)[0]
    return False


def separability_probe(
    a: AlgorithmHandle, ds: WeightedDataset, s, k: int | None = None
) -> tuple[bool, float]:
    """Can spiking S force A to pairwise-separate S?  Returns the first
    successful rung of the W ladder, or (False, last rung tried)."""
    if a.hierarchical:
        raise ValueError("separability is a partitional notion")
    k = a.k if k is None else k
    members = sorted(s)
    if not 2 <= len(members) <= k < ds.n:
        raise ValueError("need 2 <= |S| <= k < n")
    handle = AlgorithmHandle(a.id, k)
    last = 0.0
    for w in W_LADDER:
        last = w
        c = run_algorithm(handle, ds.reweighted(spike_weights(ds.n, members, w)))
        if all(
            not c.same_block(x, y)
            for i, x in enumerate(members)
            for y in members[i + 1:]
        ):
            return True, w
    return False, last


def range_estimate(
    a: AlgorithmHandle,
    ds: WeightedDataset,
    samples: int = 20,
    seed: int = 0,
    level_ks: tuple[int, ...] | None = None,
) -> dict[Clustering, tuple[float, ...]]:
    """Sampled lower bound on range(A(X,d)): distinct outputs over unit,
    random, and spike weightings, each mapped to a producing weighting.

    Hierarchical outputs are sampled through their level clusterings (the
    k-clusterings left standing after n-k merges), all of which the
    dendrogram outputs.
    """
    rng = np.random.default_rng(seed)
    n = ds.n
    weightings: list[np.ndarray] = [unit_weights(n)]
    weightings.extend(random_weights(n, rng) for _ in range(samples))
    for w in (1e3, 1e6):
        for x in range(n):
            weightings.append(spike_weights(n, [x], w))
    for x in range(n):
        for y in range(x + 1, n):
            weightings.append(spike_weights(n, [x, y], 1e6))

    if level_ks is None:
        level_ks = tuple(range(2, min(n, 5)))

    found: dict[Clustering, tuple[float, ...]] = {}
    for w in weightings:
        result = run_algorithm(a, ds.reweighted(w))
        if isinstance(result, Dendrogram):
            outputs = [result.level_clustering(k) for k in level_ks]
        else:
            outputs = [result]
        for c in outputs:
            found.setdefault(c, tuple(float(x) for x in w))
    return found


def classify(
    a: AlgorithmHandle,
    datasets: list[WeightedDataset],
    budget: int = 400,
    seed: int = 0,
    skip_singletons: bool | None = None,
    samples: int = 20,
) -> CategoryReport:
    """Probe every sampled range clustering of A over the dataset family
    and assign an empirical category.

    The label is evidence for, not proof of, the universal category,
    which quantifies over all datasets.  Certified clusterings still get a
    phase-2 falsification attempt; finding a removal witness for a
    certified clustering aborts, since that falsifies a theorem (or
    reveals a bug).
    """
    if skip_singletons is None:
        # the characterization theorems need every cluster > 1 element
        skip_singletons = a.id in ("ratiocut", "average")
    evidence: list[Verdict] = []
    range_sizes: list[int] = []
    for di, ds in enumerate(datasets):
        sample = range_estimate(a, ds, samples=samples, seed=seed + di)
        range_sizes.append(len(sample))
        for c, producing in sorted(
            sample.items(), key=lambda t: t[0].assignment
        ):
            if skip_singletons and c.has_singleton():
                continue
            if robustness_certificate(a, ds, c):
                if a.id not in ("single", "complete") and a.id not in WEIGHT_FREE:
                    # try to falsify the certificate
                    v = responsiveness_probe(
                        a, ds, c, budget=budget, seed=seed + di,
                        produce_hint=producing,
                    )
                    if v.status == RESPONSIVE:
                        raise TheoremInconsistencyError(
                            f"{a.label}: certified clustering "
                            f"{list(c.assignment)} has removal witness "
                            f"{list(v.witness_remove)}"
                        )
                evidence.append(Verdict(c, ROBUST_ON_CLUSTERING))
            else:
                evidence.append(
                    responsiveness_probe(
                        a, ds, c, budget=budget, seed=seed + di,
                        produce_hint=producing,
                    )
                )
    counts = {RESPONSIVE: 0, ROBUST_ON_CLUSTERING: 0, INCONCLUSIVE: 0}
    for v in evidence:
        counts[v.status] += 1
    if counts[INCONCLUSIVE]:
        category = INCONCLUSIVE
    elif counts[RESPONSIVE] and counts[ROBUST_ON_CLUSTERING]:
        category = "considering"
    elif counts[RESPONSIVE]:
        category = "sensitive"
    elif counts[ROBUST_ON_CLUSTERING]:
        category = "robust"
    else:
        category = INCONCLUSIVE
    return CategoryReport(a, category, evidence, range_sizes)
