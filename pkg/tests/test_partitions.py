"""Partition enumeration and the Clustering type."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterlab.partitions import (
    Clustering,
    EnumerationCapError,
    all_clusterings,
    count_partitions,
    enumerate_partitions,
    iter_rgs,
    stirling2,
    to_restricted_growth,
)


def brute_force_partitions(n, k):
    """Independent oracle: filter all label vectors by block structure."""
    seen = set()
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) == k:
            seen.add(to_restricted_growth(labels))
    return seen


@pytest.mark.parametrize("n,k,expected", [(4, 2, 7), (3, 2, 3), (5, 3, 25)])
def test_partition_counts_match_stirling(n, k, expected):
    parts = list(enumerate_partitions(n, k))
    assert len(parts) == expected == stirling2(n, k)


def test_enumeration_matches_brute_force_oracle():
    for n in range(3, 8):
        for k in range(2, n):
            got = [c.assignment for c in enumerate_partitions(n, k)]
            assert set(got) == brute_force_partitions(n, k)
            assert got == sorted(got)  # canonical lexicographic order
            assert len(set(got)) == len(got)


def test_stirling_table_small():
    # classic values
    assert stirling2(10, 4) == 34105
    assert stirling2(12, 4) == 611501
    assert all(stirling2(n, n) == 1 for n in range(1, 10))
    assert all(stirling2(n, 1) == 1 for n in range(1, 10))


def test_counts_up_to_ten():
    for n in range(3, 11):
        for k in range(2, n):
            assert sum(1 for _ in enumerate_partitions(n, k)) == stirling2(n, k)


def test_cap_refusal_names_cap():
    with pytest.raises(EnumerationCapError, match="12"):
        list(enumerate_partitions(13, 2))


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("CLUSTERLAB_MAX_N", "5")
    with pytest.raises(EnumerationCapError, match="5"):
        list(enumerate_partitions(6, 2))


def test_trivial_bounds_enforced():
    with pytest.raises(ValueError):
        Clustering((0, 0, 0))  # k=1
    with pytest.raises(ValueError):
        Clustering((0, 1, 2))  # all singletons
    with pytest.raises(ValueError):
        list(enumerate_partitions(4, 4))


def test_clustering_canonicalization():
    a = Clustering((1, 1, 0, 0))
    b = Clustering((0, 0, 1, 1))
    assert a == b
    assert a.assignment == (0, 0, 1, 1)
    assert a.blocks() == [[0, 1], [2, 3]]
    assert a.block_sets() == frozenset({frozenset({0, 1}), frozenset({2, 3})})


def test_all_clusterings_bounds():
    cs = list(all_clusterings(4))
    assert len(cs) == 7 + 6  # S(4,2) + S(4,3)
    assert all(1 < c.k < 4 for c in cs)


@given(st.lists(st.integers(0, 3), min_size=4, max_size=8))
@settings(max_examples=200)
def test_canonical_form_is_relabel_invariant(labels):
    k = len(set(labels))
    if not 1 < k < len(labels):
        return
    # permuting the label alphabet never changes the clustering
    perm = {lab: k - 1 - i for i, lab in enumerate(dict.fromkeys(labels))}
    a = Clustering(tuple(labels))
    b = Clustering(tuple(perm[x] for x in labels))
    assert a == b
    assert a.assignment == to_restricted_growth(labels)


def test_count_partitions_alias():
    assert count_partitions(6, 3) == stirling2(6, 3) == 90


def test_iter_rgs_first_and_last():
    got = list(iter_rgs(5, 3))
    assert got[0] == (0, 0, 0, 1, 2)
    assert got[-1] == (0, 1, 2, 2, 2)
