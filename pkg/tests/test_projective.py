from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from abmaps.errors import DomainError, PreconditionError
from abmaps.graphs import HammingGraphSpec, ProductGraphSpec, adjacent
from abmaps.maps import linear_map, verify_map
from abmaps.projective import (BOXTIMES, LTIMES, MAP, HyperplaneStats, ProjectiveConfig, check_ab_condition,
                               fano_config, find_bad_hyperplane, generator_from_config, hyperplane_stats,
                               rank, spans)


def dot(w, p):
    return bin(w & p).count("1") & 1


def test_stats_m2_example():
    # u = {10, 01} written e1, e2; v = {11}
    cfg = ProjectiveConfig(2, (0b01, 0b10), (0b11,))
    stats = {s.hyperplane: s for s in hyperplane_stats(cfg)}
    assert len(stats) == 3
    assert stats[0b11].Z_u == 0
    assert stats[0b01].Z_u == 1 and stats[0b10].Z_u == 1
    assert [w for w, s in stats.items() if s.Z_v == 1] == [0b11]


def test_stats_all_points_equal():
    cfg = ProjectiveConfig(3, (1, 1), (1, 1, 1))
    for s in hyperplane_stats(cfg):
        if dot(s.hyperplane, 1) == 0:
            assert (s.Z_u, s.Z_v) == (2, 3)
        else:
            assert (s.Z_u, s.Z_v) == (0, 0)


def test_fano_facts():
    cfg = fano_config()
    assert cfg.u_points == (1, 2, 4) and cfg.v_points == (1, 2, 4, 7)
    stats = {s.hyperplane: s for s in hyperplane_stats(cfg)}
    # the line {e1+e2, e1+e3, e2+e3} is the hyperplane w = 111
    assert (stats[0b111].Z_u, stats[0b111].Z_v) == (0, 0)
    # v4 lies on no line through two u's
    for u1, u2 in combinations(cfg.u_points, 2):
        line = {u1, u2, u1 ^ u2}
        assert 7 not in line
    assert check_ab_condition(cfg, 2, 3, MAP)
    res = check_ab_condition(cfg, 1, 3, MAP)
    assert not res and res.witness == HyperplaneStats(0b011, 1, 2)
    assert find_bad_hyperplane(cfg, 2, 3) is None


def test_fano_generator():
    G = generator_from_config(fano_config())
    assert G.shape == (3, 4)
    f = linear_map(G)
    assert verify_map(f, 2, 3)
    assert not verify_map(f, 1, 3)


def test_single_hyperplane_fails():
    cfg = ProjectiveConfig(3, (1, 2), (3, 1))
    for variant in (BOXTIMES, LTIMES, MAP):
        assert not check_ab_condition(cfg, 2, 2, variant)
    with pytest.raises(PreconditionError):
        find_bad_hyperplane(cfg, 1, 1)


def test_config_validation_and_json(tmp_path):
    with pytest.raises(DomainError):
        ProjectiveConfig(2, (0,), (1,))
    with pytest.raises(DomainError):
        ProjectiveConfig(2, (4,), (1,))
    with pytest.raises(DomainError):
        check_ab_condition(fano_config(), 1, 1, "other")
    cfg = fano_config()
    assert ProjectiveConfig.from_json(cfg.to_json()) == cfg
    path = tmp_path / "c.json"
    path.write_text(cfg.to_json())
    assert ProjectiveConfig.load(path) == cfg
    for bad in ["[]", '{"m": 2, "u": [0], "v": []}', '{"m": 2}']:
        with pytest.raises(DomainError):
            ProjectiveConfig.from_json(bad)


@st.composite
def configs(draw, mmax=4, kmax=5, nmax=6, square=False):
    m = draw(st.integers(1, mmax))
    pts = st.integers(1, (1 << m) - 1)
    k = m if square else draw(st.integers(1, kmax))
    u = draw(st.lists(pts, min_size=k, max_size=k))
    v = draw(st.lists(pts, min_size=1, max_size=nmax))
    return ProjectiveConfig(m, tuple(u), tuple(v))


@settings(max_examples=100, deadline=None)
@given(configs())
def test_incidence_sum(cfg):
    stats = hyperplane_stats(cfg)
    assert len(stats) == (1 << cfg.m) - 1
    for s in stats:
        assert s.Z_u == sum(dot(s.hyperplane, p) == 0 for p in cfg.u_points)
    assert sum(s.Z_u + s.Z_v for s in stats) == (2 ** (cfg.m - 1) - 1) * (cfg.k + cfg.n)


def brute_rank(points, m):
    span = {0}
    for p in points:
        span |= {s ^ p for s in span}
    return len(span).bit_length() - 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(0, (1 << m) - 1),
                                                                           max_size=7))))
def test_rank_matches_span_size(mp):
    m, pts = mp
    assert rank(pts) == brute_rank(pts, m)
    assert spans(pts, m) == (brute_rank(pts, m) == m)


@settings(max_examples=150, deadline=None)
@given(configs(square=True), st.data())
def test_bridge_identity(cfg, data):
    assume(spans(cfg.u_points, cfg.m))
    a = data.draw(st.integers(0, cfg.k))
    b = data.draw(st.integers(0, cfg.n))
    G = generator_from_config(cfg)
    f = linear_map(G)
    assert bool(check_ab_condition(cfg, a, b, MAP)) == verify_map(f, a, b)


@settings(max_examples=60, deadline=None)
@given(configs(mmax=3, kmax=4, nmax=4), st.data())
def test_ltimes_subspace_is_independent(cfg, data):
    assume(spans(cfg.u_points, cfg.m))
    a = data.draw(st.integers(0, cfg.k))
    b = data.draw(st.integers(0, cfg.n))
    if not check_ab_condition(cfg, a, b, LTIMES):
        return
    # subspace {(<l,u_i>)_i, (<l,v_j>)_j : l in F_2^m}
    verts = set()
    for l in range(1 << cfg.m):
        x = sum(dot(l, p) << i for i, p in enumerate(cfg.u_points))
        y = sum(dot(l, p) << j for j, p in enumerate(cfg.v_points))
        verts.add((x << cfg.n) | y)
    assert len(verts) == 1 << cfg.m
    prod = ProductGraphSpec(HammingGraphSpec(cfg.k, a, True), HammingGraphSpec(cfg.n, b, True))
    for u, v in combinations(sorted(verts), 2):
        assert not adjacent(prod, u, v)


@settings(max_examples=60, deadline=None)
@given(configs(), st.data())
def test_bad_hyperplane_is_first_matching(cfg, data):
    assume(spans(cfg.u_points + cfg.v_points, cfg.m))
    a = data.draw(st.integers(0, cfg.k))
    b = data.draw(st.integers(0, cfg.n))
    hit = find_bad_hyperplane(cfg, a, b)
    matches = [s for s in hyperplane_stats(cfg)
               if s.Z_v >= cfg.n - b and (s.Z_u < cfg.k - a or s.Z_u == cfg.k)]
    assert hit == (matches[0] if matches else None)
    res = check_ab_condition(cfg, a, b, BOXTIMES)
    if not res and res.reason == "implication fails":
        # every implication failure is also a bad hyperplane, found no later
        assert hit is not None and hit.hyperplane <= res.witness.hyperplane
    if hit is None:
        assert res or res.reason == "a hyperplane contains every u point"


def test_generator_needs_square_independent():
    with pytest.raises(PreconditionError):
        generator_from_config(ProjectiveConfig(3, (1, 2), (1,)))
    with pytest.raises(PreconditionError):
        generator_from_config(ProjectiveConfig(2, (1, 1), (1,)))
    G = generator_from_config(ProjectiveConfig(2, (1, 2), (3,)))
    assert np.array_equal(G, [[1], [1]])
