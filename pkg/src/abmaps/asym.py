"""Asymptotic rate functions (double precision) and the (beta, alpha) region curves.

Rates are in bits. Impossibility curves give, for each output distance beta
and rate ratio rho = n/k, the smallest relative input distance alpha not yet
ruled out; achievability curves come from explicit constructions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import DomainError


def h(x: float) -> float:
    """Binary entropy, h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def h_inv(y: float) -> float:
    """The preimage of y under h restricted to [0, 1/2]."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"h_inv argument must lie in [0, 1], got {y}")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    return brentq(lambda t: h(t) - y, 0.0, 0.5, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _check_unit(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {x}")


def r_lp1(delta: float) -> float:
    _check_unit("delta", delta)
    if delta >= 0.5:
        return 0.0
    return h(0.5 - math.sqrt(delta * (1.0 - delta)))


def _lp2_alpha(beta: float, delta: float) -> float:
    # the constraint reads alpha(1 - alpha) <= c; the objective falls as alpha grows to 1/2
    s = math.sqrt(beta * (1.0 - beta))
    c = beta * (1.0 - beta) + delta * (1.0 + 2.0 * s) / 2.0
    if c >= 0.25:
        return 0.5
    return (1.0 - math.sqrt(1.0 - 4.0 * c)) / 2.0


def _lp2_objective(beta: float, delta: float) -> float:
    return 1.0 - h(_lp2_alpha(beta, delta)) + h(beta)


def r_lp2(delta: float, grid: int = 1000) -> float:
    """Second LP rate bound.

    For fixed beta the best alpha is explicit, so the minimum is one-dimensional.
    Past beta0 = 1/2 - sqrt(delta - delta^2) the alpha constraint is slack and
    the objective is h(beta), increasing; beta0 itself gives the R_LP1 value.
    The interior of [0, beta0] is scanned on a grid and the best cell refined.
    """
    _check_unit("delta", delta)
    if delta >= 0.5:
        return 0.0
    beta0 = 0.5 - math.sqrt(delta - delta * delta)
    best_val = _lp2_objective(beta0, delta)
    if beta0 <= 0.0:
        return best_val
    betas = np.linspace(0.0, beta0, grid + 1)
    vals = np.array([_lp2_objective(b, delta) for b in betas])
    i = int(np.argmin(vals))
    if vals[i] < best_val:
        lo, hi = betas[max(i - 1, 0)], betas[min(i + 1, grid)]
        res = minimize_scalar(_lp2_objective, bounds=(lo, hi), args=(delta,), method="bounded",
                              options={"xatol": 1e-12})
        best_val = min(best_val, float(vals[i]), float(res.fun))
    return best_val


def r_sam(alpha: float) -> float:
    _check_unit("alpha", alpha)
    if alpha >= 0.5:
        return 0.0
    first = 1.0 - h(alpha) + r_lp1(alpha)
    second = h(1.0 - 2.0 * math.sqrt(alpha * (1.0 - alpha)))
    return 0.5 * max(first, second)


def _smallest_alpha(fn, target: float) -> float:
    """Smallest alpha in [0, 1/2] with fn(alpha) <= target, for fn decreasing from fn(0) to fn(1/2) = 0."""
    if fn(0.0) <= target:
        return 0.0
    if target <= 0.0:
        return 0.5
    return brentq(lambda a: fn(a) - target, 0.0, 0.5, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _doubled_entropy_bound(rhs: float) -> float:
    """Smallest alpha with 1 - h(alpha/2) <= rhs."""
    if rhs >= 1.0:
        return 0.0
    return 2.0 * h_inv(1.0 - max(rhs, 0.0))


@dataclass(frozen=True)
class BoundCurveRow:
    beta: float
    lb_ccb: float
    lb_ccsam: float
    lb_it: float
    lb_tm3: float | None
    ach_repetition: float | None
    ach_majority: float | None
    ach_separation: float | None

    @property
    def lower(self) -> float:
        vals = [self.lb_ccb, self.lb_ccsam, self.lb_it, self.lb_tm3]
        return max(v for v in vals if v is not None)

    @property
    def achievable(self) -> float | None:
        vals = [v for v in (self.ach_repetition, self.ach_majority, self.ach_separation) if v is not None]
        return min(vals) if vals else None

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def as_ratio(rho) -> Fraction:
    if isinstance(rho, Fraction):
        q = rho
    elif isinstance(rho, str):
        q = Fraction(rho.strip())
    elif isinstance(rho, int):
        q = Fraction(rho)
    else:
        q = Fraction(float(rho)).limit_denominator(10**6)
    if q <= 0:
        raise DomainError(f"rho must be positive, got {rho}")
    return q


def lb_ccb(beta: float, rho: float) -> float:
    return _smallest_alpha(lambda a: 1.0 - h(a), rho * r_lp2(beta))


def lb_ccsam(beta: float, rho: float) -> float:
    return _smallest_alpha(r_sam, rho * r_lp2(beta))


def lb_it(beta: float, rho: float) -> float:
    return _doubled_entropy_bound(rho * (1.0 - h(beta / 2.0)))


def ach_separation(beta: float, rho: float) -> float | None:
    if beta > 0.5:
        return None
    return _doubled_entropy_bound(rho * (1.0 - h(beta)))


def region_row(beta: float, rho) -> BoundCurveRow:
    q = as_ratio(rho)
    r = float(q)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    inv = 1 / q
    return BoundCurveRow(
        beta=beta,
        lb_ccb=lb_ccb(beta, r),
        lb_ccsam=lb_ccsam(beta, r),
        lb_it=lb_it(beta, r),
        lb_tm3=beta if beta > 0.5 else None,
        ach_repetition=beta if q.denominator == 1 else None,
        ach_majority=(r * beta + 1.0 - r) if inv.denominator == 1 and inv.numerator % 2 == 1 else None,
        ach_separation=ach_separation(beta, r),
    )


def beta_grid(step: float) -> list[float]:
    if not 0.0 < step < 1.0:
        raise DomainError(f"beta step must lie in (0, 1), got {step}")
    count = int(round(1.0 / step))
    return [round(i * step, 12) for i in range(1, count) if 0.0 < i * step < 1.0]


def region(rho, betas: Iterable[float] | float = 0.01) -> list[BoundCurveRow]:
    """One row per beta; ``betas`` is either a grid or a step size."""
    if isinstance(betas, (int, float)):
        betas = beta_grid(float(betas))
    return [region_row(float(b), rho) for b in betas]


def ccsam_slope(rho, step: float = 1e-4) -> float:
    """Secant slope d alpha / d beta of the lb_ccsam curve just below beta = 1/2."""
    r = float(as_ratio(rho))
    return (lb_ccsam(0.5, r) - lb_ccsam(0.5 - step, r)) / step


def values_for(rows: Sequence[BoundCurveRow], column: str) -> list[float | None]:
    return [getattr(row, column) for row in rows]
