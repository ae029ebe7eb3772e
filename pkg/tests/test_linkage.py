"""Agglomerative engine, linkage values, and the divisive wrapper."""

import numpy as np
import pytest

import clusterlab as cl
from clusterlab.linkage import LinkageSpec, linkage_value


def test_average_linkage_value_weighted():
    ds = cl.line([0, 1, 10], weights=[2, 1, 1])
    val = linkage_value(LinkageSpec("average"), [0, 1], [2], ds)
    assert val == pytest.approx(29 / 3)


def test_ward_linkage_singletons():
    ds = cl.line([0, 1])
    assert linkage_value(LinkageSpec("ward"), [0], [1], ds) == pytest.approx(0.5)


def test_single_complete_on_singletons():
    ds = cl.line([0, 3])
    for name in ("single", "complete"):
        assert linkage_value(LinkageSpec(name), [0], [1], ds) == 3.0


def test_average_weight_scale_invariant_value():
    rng = np.random.default_rng(0)
    ds = cl.random_points(6, seed=1).reweighted(rng.uniform(0.5, 2, 6))
    base = linkage_value(LinkageSpec("average"), [0, 2], [1, 4, 5], ds)
    for gamma in (0.5, 17.0):
        scaled = ds.reweighted(gamma * ds.weights)
        got = linkage_value(LinkageSpec("average"), [0, 2], [1, 4, 5], scaled)
        assert got == pytest.approx(base, rel=1e-12)


def test_ward_requires_coords():
    vals = np.array([[0.0, 1.0], [1.0, 0.0]])
    ds = cl.WeightedDataset(cl.PairTable("distance", vals), np.ones(2))
    with pytest.raises(ValueError, match="coordinates"):
        linkage_value(LinkageSpec("ward"), [0], [1], ds)


def test_disjointness_required():
    ds = cl.line([0, 1, 2])
    with pytest.raises(ValueError, match="disjoint"):
        linkage_value(LinkageSpec("single"), [0, 1], [1, 2], ds)


@pytest.mark.parametrize("name", ["single", "complete", "average", "ward"])
def test_agglomerate_separated_pairs(name):
    ds = cl.line([0, 1, 10, 11])
    d = cl.agglomerate(ds, LinkageSpec(name))
    clusters = d.clusters()
    assert frozenset({0, 1}) in clusters
    assert frozenset({2, 3}) in clusters


def test_agglomerate_two_elements():
    d = cl.agglomerate(cl.line([0, 5]), LinkageSpec("single"))
    assert d.to_newick() == "(0,1);"


@pytest.mark.parametrize("name", ["single", "complete"])
def test_single_complete_weight_robust(name):
    rng = np.random.default_rng(3)
    ds = cl.random_points(7, seed=2)
    base = cl.agglomerate(ds, LinkageSpec(name)).to_newick()
    for _ in range(20):
        w = 10.0 ** rng.uniform(-2, 2, 7)
        assert cl.agglomerate(ds.reweighted(w), LinkageSpec(name)).to_newick() == base


def test_average_weight_scale_invariant_dendrogram():
    rng = np.random.default_rng(4)
    ds = cl.random_points(7, seed=5).reweighted(rng.uniform(0.3, 3, 7))
    base = cl.agglomerate(ds, LinkageSpec("average"))
    for gamma in (0.02, 9.5, 400.0):
        scaled = cl.agglomerate(ds.reweighted(gamma * ds.weights), LinkageSpec("average"))
        assert base.same_structure(scaled)


def test_average_detects_nice_clustering_under_any_weights():
    ds, planted = cl.nice_blocks(8, 3, seed=6)
    rng = np.random.default_rng(7)
    for _ in range(20):
        w = 10.0 ** rng.uniform(-2, 2, 8)
        d = cl.agglomerate(ds.reweighted(w), LinkageSpec("average"))
        assert d.outputs(planted)


def test_average_pair_spike_removes_non_nice_cluster():
    # the big cluster {0..3} is not nice: d(0, 3) = 3.5 > d(3, 4) = 2.6
    ds = cl.line([0, 0.5, 3, 3.5, 6.1, 6.6])
    c = cl.Clustering((0, 0, 0, 0, 1, 1))
    assert not cl.is_nice(c, ds)[0]
    # reachable under unit weights, gone once the violating pair is heavy
    assert cl.agglomerate(ds, LinkageSpec("average")).outputs(c)
    spiked = ds.reweighted([1e6, 1, 1, 1e6, 1, 1])
    assert not cl.agglomerate(spiked, LinkageSpec("average")).outputs(c)


def test_divisive_first_split_and_consistency():
    ds = cl.line([0, 1, 10, 11])
    d = cl.divisive(ds, "kmeans")
    assert d.outputs(cl.Clustering((0, 0, 1, 1)))
    assert len(d.clusters()) == 2 * ds.n - 1


def test_divisive_two_elements():
    d = cl.divisive(cl.line([0, 5]), "kmeans")
    assert d.to_newick() == "(0,1);"


def test_divisive_children_partition_each_node():
    ds = cl.random_points(7, seed=8)
    d = cl.divisive(ds, "minsum")
    for node in range(ds.n, 2 * ds.n - 1):
        a, b = d.children[node - ds.n]
        assert d.node_cluster(a) | d.node_cluster(b) == d.node_cluster(node)
        assert not d.node_cluster(a) & d.node_cluster(b)


def test_divisive_accepts_callable():
    calls = []

    def splitter(sub):
        calls.append(sub.n)
        return cl.exact_minimize(sub, cl.ObjectiveSpec("kmeans", 2))

    d = cl.divisive(cl.line([0, 1, 10, 11]), splitter)
    assert d.outputs(cl.Clustering((0, 0, 1, 1)))
    assert calls  # the handle was actually used


def test_divisive_rejects_bad_handle():
    def bad(sub):
        return cl.exact_minimize(sub, cl.ObjectiveSpec("kmeans", 3))

    with pytest.raises(ValueError, match="2-clustering"):
        cl.divisive(cl.line([0, 1, 5, 9, 14]), bad)
