import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abmaps.errors import DomainError, PreconditionError
from abmaps.graphs import HammingGraphSpec, ProductGraphSpec, adjacent
from abmaps.maps import (MapTable, count_violating_pairs, distance_profile, greedy_cover, linear_map,
                         majority_map, repetition_map, separation_map, verify_linear, verify_map)


def identity(k):
    return MapTable(k, k, tuple(range(1 << k)))


def constant(k, n=1):
    return MapTable(k, n, (0,) * (1 << k))


def pair_scan(f, a, b):
    """Plain double loop over unordered pairs."""
    bad = 0
    for x in range(1 << f.k):
        for y in range(x + 1, 1 << f.k):
            if bin(x ^ y).count("1") > a and bin(f(x) ^ f(y)).count("1") <= b:
                bad += 1
    return bad


def test_repetition_examples():
    f = repetition_map(2, 2)
    assert f.n == 4 and f(0b10) == 0b1010  # x = 01 (little-endian) -> 0101
    assert verify_map(f, 1, 2)
    assert repetition_map(3, 1) == identity(3)
    assert distance_profile(f).profile == (2, 4, math.inf)


def test_majority_examples():
    f = majority_map(3)
    assert f(0b100) == 0 and f(0b110) == 1
    assert verify_map(f, 2, 0)
    with pytest.raises(DomainError):
        majority_map(4)
    prof = distance_profile(majority_map(6)).profile
    # each block absorbs up to 2 flips, so collisions survive up to distance 4
    assert prof == (0, 0, 0, 0, 1, 2, math.inf)


def test_separation_examples():
    f = separation_map(3, 4, 1, ["0000", "1111"], 3, centers=["000", "111"])
    assert verify_map(f, 2, 3)
    with pytest.raises(PreconditionError):
        separation_map(3, 4, 1, ["0000", "0001"], 3)
    # a single radius-1 ball around 00 misses 11
    with pytest.raises(PreconditionError):
        separation_map(2, 4, 1, ["0000"], 0, centers=["00"])
    const = separation_map(2, 4, 2, ["0000"], 4, centers=["00"])
    assert const == constant(2, 4)
    assert verify_map(const, 2, 4)
    with pytest.raises(PreconditionError):
        separation_map(3, 4, 0, ["0000", "1111"], 3)  # needs 8 cells


@pytest.mark.parametrize("k,r", [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2)])
def test_greedy_cover_covers(k, r):
    cells = greedy_cover(k, r)
    assert all(any(bin(x ^ c).count("1") <= r for c in cells) for x in range(1 << k))
    assert greedy_cover(k, r) == cells


def test_separation_map_is_two_radius_map():
    for k, r in [(4, 1), (5, 1), (5, 2)]:
        cells = greedy_cover(k, r)
        n = len(cells)
        code = [1 << i for i in range(n)]  # pairwise distance 2
        f = separation_map(k, n, r, code, 1)
        assert verify_map(f, min(2 * r, k), 1)


def test_verify_examples():
    assert not verify_map(identity(4), 1, 2)
    for f in (identity(3), constant(3), repetition_map(3, 2)):
        assert verify_map(f, f.k, 0)
    assert distance_profile(identity(3)).profile == (1, 2, 3, math.inf)
    assert distance_profile(constant(3)).profile == (0, 0, 0, math.inf)
    with pytest.raises(DomainError):
        verify_map(identity(3), 4, 0)
    with pytest.raises(DomainError):
        verify_map(identity(3), 1.5, 0)


def test_violation_examples():
    assert count_violating_pairs(identity(4), 1, 2) == 48 == 2 ** 3 * comb(4, 2)
    assert count_violating_pairs(constant(3), 1, 0) == 16
    assert count_violating_pairs(repetition_map(2, 2), 1, 2) == 0


@pytest.mark.parametrize("k", range(1, 8))
def test_identity_violations_closed_form(k):
    for a in range(k + 1):
        for b in range(k + 1):
            closed = 2 ** (k - 1) * sum(comb(k, w) for w in range(a + 1, b + 1))
            assert count_violating_pairs(identity(k), a, b) == closed


def test_violations_on_subset():
    f = identity(4)
    S = [0b0000, 0b0011, 0b1111, 0b0011]
    # duplicates collapse; {0000, 0011} and {0011, 1111} are both 2 apart
    assert count_violating_pairs(f, 1, 2, subset=S) == 2
    assert count_violating_pairs(f, 1, 4, subset=[f"{x:04b}"[::-1] for x in (0, 3, 15)]) == 3


@st.composite
def random_map(draw, kmax=6, nmax=6):
    k = draw(st.integers(0, kmax))
    n = draw(st.integers(0, nmax))
    imgs = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1 << k, max_size=1 << k))
    return MapTable(k, n, tuple(imgs))


@settings(max_examples=150, deadline=None)
@given(random_map(), st.data())
def test_verify_agrees_with_profile_and_pair_scan(f, data):
    a = data.draw(st.integers(0, f.k))
    b = data.draw(st.integers(0, f.n))
    prof = distance_profile(f)
    assert all(p <= q for p, q in zip(prof.profile, prof.profile[1:]))
    assert prof.profile[f.k] == math.inf
    bad = pair_scan(f, a, b)
    assert verify_map(f, a, b) == (prof(a) > b) == (bad == 0)
    assert count_violating_pairs(f, a, b) == bad


@settings(max_examples=60, deadline=None)
@given(random_map(kmax=4, nmax=4), st.data())
def test_zero_violations_give_product_independent_set(f, data):
    a = data.draw(st.integers(0, f.k))
    b = data.draw(st.integers(0, f.n))
    if count_violating_pairs(f, a, b) != 0:
        return
    prod = ProductGraphSpec(HammingGraphSpec(f.k, a, True), HammingGraphSpec(f.n, b, True))
    graph = [(x << f.n) | f(x) for x in range(1 << f.k)]
    assert len(set(graph)) == 1 << f.k
    for i, u in enumerate(graph):
        for v in graph[i + 1:]:
            assert not adjacent(prod, u, v)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(3, 4), (4, 4)]), st.data())
def test_linear_weight_check_matches_pairs(shape, data):
    k, n = shape
    G = np.array(data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                                    min_size=k, max_size=k)))
    a = data.draw(st.integers(0, k))
    b = data.draw(st.integers(0, n))
    f = linear_map(G)
    for x in range(1 << k):
        expect = 0
        for i in range(k):
            if x >> i & 1:
                expect ^= int("".join(str(v) for v in G[i][::-1]), 2)
        assert f(x) == expect
    assert verify_linear(G, a, b) == verify_map(f, a, b) == (pair_scan(f, a, b) == 0)


def test_linear_examples():
    assert linear_map(np.eye(3, dtype=int)) == identity(3)
    zero = np.zeros((3, 4), dtype=int)
    assert all(not verify_map(linear_map(zero), a, b) for a in range(3) for b in range(5))
    with pytest.raises(DomainError):
        linear_map([[0, 2]])


def test_json_roundtrip(tmp_path):
    f = repetition_map(3, 2)
    g = MapTable.from_json(f.to_json())
    assert g == f
    path = tmp_path / "m.json"
    f.save(path)
    assert MapTable.load(path) == f
    assert f.to_json() == MapTable.load(path).to_json()
    for bad in ['{"k": 1}', '{"k": 1, "n": 1, "images": ["0"]}', "nonsense",
                '{"k": 1, "n": 1, "images": ["0", "3"]}']:
        with pytest.raises(DomainError):
            MapTable.from_json(bad)
