"""Clusterability detectors and their weight independence."""

import numpy as np
import pytest

import clusterlab as cl
from clusterlab.linkage import LinkageSpec
from clusterlab.partitions import all_clusterings

PAIRS = cl.Clustering((0, 0, 1, 1))


def sim_table(entries, n=4):
    s = np.zeros((n, n))
    for (i, j), v in entries.items():
        s[i, j] = s[j, i] = v
    return cl.WeightedDataset(cl.PairTable("similarity", s), np.ones(n))


def blocks_sim(within, cross):
    entries = {(0, 1): within, (2, 3): within}
    for pair in [(0, 2), (0, 3), (1, 2), (1, 3)]:
        entries[pair] = cross
    return sim_table(entries)


def test_perfect_strict_gap():
    ok, witness = cl.is_perfect(PAIRS, blocks_sim(5, 1))
    assert ok and witness is None


def test_perfect_violation_has_witness():
    ds = sim_table({(0, 1): 5, (2, 3): 2,
                    (0, 2): 3, (0, 3): 3, (1, 2): 3, (1, 3): 3})
    ok, witness = cl.is_perfect(PAIRS, ds)
    assert not ok
    x1, x2, x3, x4 = witness
    assert PAIRS.same_block(x1, x2) and not PAIRS.same_block(x3, x4)
    assert ds.table.values[x1, x2] <= ds.table.values[x3, x4]


def test_perfect_requires_strict_inequality():
    assert not cl.is_perfect(PAIRS, blocks_sim(5, 5))[0]


def test_separation_uniform_constant_cross():
    ok, lam = cl.is_separation_uniform(PAIRS, blocks_sim(5, 1))
    assert ok and lam == 1.0


def test_separation_uniform_mixed_cross():
    ds = sim_table({(0, 1): 5, (2, 3): 5,
                    (0, 2): 1, (0, 3): 1, (1, 2): 1, (1, 3): 2})
    ok, lam = cl.is_separation_uniform(PAIRS, ds)
    assert not ok and lam is None


def test_separation_uniform_tolerance():
    ds = sim_table({(0, 1): 5, (2, 3): 5,
                    (0, 2): 1, (0, 3): 1, (1, 2): 1, (1, 3): 1 + 1e-12})
    assert not cl.is_separation_uniform(PAIRS, ds)[0]
    ok, lam = cl.is_separation_uniform(PAIRS, ds, tol=1e-9)
    assert ok and lam == pytest.approx(1.0)


def test_nice_separated_pairs():
    ok, witness = cl.is_nice(PAIRS, cl.line([0, 1, 10, 11]))
    assert ok and witness is None


def test_nice_violation_witness():
    ds = cl.line([0, 1, 2, 10])
    c = cl.Clustering((0, 1, 0, 1))  # {{0,2},{1,10}}
    ok, witness = cl.is_nice(c, ds)
    assert not ok
    assert witness == (0, 2, 1)  # d(0,2)=2 >= d(0,1)=1


def test_nice_requires_strict_inequality():
    # equilateral configuration in the plane: every distance equal
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])
    ds = cl.from_coords(pts)
    for c in all_clusterings(3):
        assert not cl.is_nice(c, ds)[0]


def test_detectors_reject_wrong_kind():
    with pytest.raises(ValueError, match="similarity"):
        cl.is_perfect(PAIRS, cl.line([0, 1, 10, 11]))
    with pytest.raises(ValueError, match="similarity"):
        cl.is_separation_uniform(PAIRS, cl.line([0, 1, 10, 11]))
    with pytest.raises(ValueError, match="distance"):
        cl.is_nice(PAIRS, blocks_sim(5, 1))


def test_detectors_never_read_weights():
    rng = np.random.default_rng(0)
    sim = cl.random_similarity(5, seed=1)
    dist = cl.random_points(5, seed=2)
    for c in all_clusterings(5):
        base = (cl.is_perfect(c, sim), cl.is_separation_uniform(c, sim),
                cl.is_nice(c, dist))
        w = 10.0 ** rng.uniform(-2, 2, 5)
        got = (cl.is_perfect(c, sim.reweighted(w)),
               cl.is_separation_uniform(c, sim.reweighted(w)),
               cl.is_nice(c, dist.reweighted(w)))
        assert got == base


def test_perfect_uniform_clustering_unique_per_k():
    # at most one clustering per k can be both perfect and separation-uniform
    for seed in range(4):
        ds, planted = cl.perfect_uniform(6, 2, seed=seed)
        hits = [
            c for c in all_clusterings(6)
            if cl.is_perfect(c, ds)[0] and cl.is_separation_uniform(c, ds)[0]
        ]
        by_k = {}
        for c in hits:
            by_k.setdefault(c.k, []).append(c)
        assert all(len(v) == 1 for v in by_k.values())
        assert planted in hits


def test_global_gap_implies_nice():
    ds, planted = cl.nice_blocks(9, 3, seed=0)
    assert cl.is_nice(planted, ds)[0]


def test_enumerate_nice_clusterings():
    ds = cl.line([0, 1, 10, 11])
    found = cl.enumerate_nice_clusterings(ds)
    assert cl.Clustering((0, 0, 1, 1)) in found
    # canonical order
    assert found == sorted(found, key=lambda c: (c.k, c.assignment))


def test_enumerate_nice_two_triples():
    ds = cl.line([0, 1, 2, 100, 101, 102])
    found = cl.enumerate_nice_clusterings(ds)
    assert cl.Clustering((0, 0, 0, 1, 1, 1)) in found


def test_nice_clusterings_appear_in_average_dendrogram():
    ds = cl.line([0, 1, 10, 11])
    rng = np.random.default_rng(3)
    nice = cl.enumerate_nice_clusterings(ds)
    assert nice
    for _ in range(10):
        w = 10.0 ** rng.uniform(-2, 2, 4)
        d = cl.agglomerate(ds.reweighted(w), LinkageSpec("average"))
        for c in nice:
            assert d.outputs(c)


def test_structure_report_similarity():
    rep = cl.structure_report(PAIRS, blocks_sim(5, 1))
    assert rep.perfect and rep.separation_uniform and rep.lam == 1.0
    assert rep.nice is None
    assert rep.to_dict()["lambda"] == 1.0


def test_structure_report_distance():
    rep = cl.structure_report(PAIRS, cl.line([0, 1, 10, 11]))
    assert rep.nice and rep.perfect is None
    bad = cl.structure_report(cl.Clustering((0, 1, 0, 1)), cl.line([0, 1, 10, 11]))
    assert not bad.nice
    assert "nice" in bad.witnesses
