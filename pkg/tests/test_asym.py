import math
from fractions import Fraction

import numpy as np
import pytest

from abmaps.asym import (BoundCurveRow, ccsam_slope, h, h_inv, lb_ccsam, r_lp1, r_lp2, r_sam, region,
                         region_row)
from abmaps.errors import DomainError

GRID = np.round(np.arange(1, 1000) / 1000, 3)


def entropy(x):
    x = np.clip(x, 1e-300, 1 - 1e-16)
    return -x * np.log2(x) - (1 - x) * np.log2(1 - x)


def lp2_by_u(delta: float, points: int = 200001) -> float:
    """min over u in [0, 1 - 2 delta] of 1 + g(u^2) - g(u^2 + 2 delta u + 2 delta), g(t) = h((1 - sqrt(1 - t)) / 2)."""
    u = np.linspace(0.0, 1.0 - 2 * delta, points)

    def g(t):
        return entropy((1 - np.sqrt(np.clip(1 - t, 0, None))) / 2)
    return float(np.min(1 + g(u * u) - g(u * u + 2 * delta * u + 2 * delta)))


def test_entropy():
    assert h(0.5) == 1.0
    assert h(0.0) == h(1.0) == 0.0
    assert h(0.11) == pytest.approx(0.4999, abs=1e-4)
    assert h_inv(h(0.2)) == pytest.approx(0.2, abs=1e-14)
    with pytest.raises(DomainError):
        h(1.5)


def test_r_lp2_examples():
    assert r_lp2(0.6) == 0.0
    assert r_lp2(0.5) == 0.0
    assert r_lp2(1e-9) == pytest.approx(1.0, abs=1e-4)
    assert r_lp1(0.1) == pytest.approx(h(0.2), abs=1e-15)


def test_r_lp2_matches_u_parametrisation():
    for delta in np.arange(0.005, 0.5, 0.015):
        assert r_lp2(float(delta)) == pytest.approx(lp2_by_u(float(delta)), abs=1e-7)


def test_r_lp2_below_r_lp1_and_equal_past_crossover():
    for d in GRID[GRID < 0.5]:
        assert r_lp2(d) <= r_lp1(d) + 1e-12
    for d in GRID[(GRID >= 0.273) & (GRID < 0.5)]:
        assert abs(r_lp2(d) - r_lp1(d)) < 1e-6
    # strictly better at small distances
    assert r_lp1(0.1) - r_lp2(0.1) > 0.02


def test_r_sam_examples_and_branches():
    assert r_sam(0.5) == 0.0
    assert r_sam(0.0) == 1.0
    a = 0.25
    first = 1 - h(a) + h(0.5 - math.sqrt(a * (1 - a)))
    second = h(1 - 2 * math.sqrt(a * (1 - a)))
    assert r_sam(a) == pytest.approx(max(first, second) / 2, abs=1e-15)


@pytest.mark.parametrize("fn", [r_lp1, r_lp2, r_sam])
def test_rates_nonincreasing_and_bounded(fn):
    vals = [fn(float(x)) for x in GRID]
    assert all(0.0 <= v <= 1.0 for v in vals)
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


def test_region_examples():
    row = region_row(0.75, 3)
    assert row.lb_tm3 == 0.75 and row.ach_repetition == 0.75
    third = region_row(0.4, Fraction(1, 3))
    assert third.ach_majority == pytest.approx(0.8, abs=1e-15)
    assert third.ach_repetition is None and third.lb_tm3 is None
    assert BoundCurveRow.columns() == ["beta", "lb_ccb", "lb_ccsam", "lb_it", "lb_tm3",
                                       "ach_repetition", "ach_majority", "ach_separation"]


@pytest.mark.parametrize("rho", [3, "1/3", 1, 2, "1/5", 0.7])
def test_region_curves(rho):
    rows = region(rho, 0.01)
    for col in ("lb_ccb", "lb_ccsam", "lb_it"):
        vals = [getattr(r, col) for r in rows]
        assert all(0.0 <= v <= 1.0 for v in vals)
        # a larger output distance demands a larger input distance
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    for r in rows:
        for v in (r.ach_repetition, r.ach_majority, r.ach_separation):
            assert v is None or 0.0 <= v <= 1.0


@pytest.mark.parametrize("rho", [1, 2, 3, 5])
def test_lower_bounds_do_not_cross_constructions(rho):
    for r in region(rho, 0.01):
        if r.achievable is not None:
            assert r.lower <= r.achievable + 1e-12


def test_refinement_stability():
    coarse = region(3, 0.02)
    fine = {round(r.beta, 6): r for r in region(3, 0.01)}
    for r in coarse:
        other = fine[round(r.beta, 6)]
        for col in ("lb_ccb", "lb_ccsam", "lb_it"):
            assert abs(getattr(r, col) - getattr(other, col)) < 1e-6
    assert r_lp2(0.2, grid=1000) == pytest.approx(r_lp2(0.2, grid=4000), abs=1e-9)


def test_ccsam_slope_near_half():
    # alpha >= 1/2 - sqrt(rho)(1/2 - beta) near beta = 1/2
    assert ccsam_slope(3) == pytest.approx(math.sqrt(3), rel=0.1)
    assert lb_ccsam(0.5, 3.0) == 0.5


def test_region_input_checks():
    with pytest.raises(DomainError):
        region(0, 0.1)
    with pytest.raises(DomainError):
        region_row(1.0, 3)
