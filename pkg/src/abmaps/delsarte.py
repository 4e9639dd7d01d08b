"""Exact Schrijver theta of Hamming-type graphs through the Delsarte linear program.

For a graph on F_2^n joining strings whose distance lies in a set E, the
primal searches f on {0..n} with f(0) = 1, f = 0 on E, f >= 0 and
nonnegative spectrum, maximizing f^(0). A dual certificate is a spectrum g^
with g^ >= 0, g^(0) > 0 and g(x) <= 0 at every nonzero distance outside E;
it bounds theta by 2^n g(0) / g^(0).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import simplex
from .errors import CertificateError, DomainError, PreconditionError
from .exact import SpectrumPoly, binomial, krawtchouk_table, spectrum_of_values


@dataclass(frozen=True)
class ThetaResult:
    n: int
    edge_distances: tuple[int, ...]
    value: Fraction
    primal: SpectrumPoly  # f^
    dual: SpectrumPoly  # g^, normalized to g^(0) = 1
    primal_values: tuple[Fraction, ...]  # f(0..n)

    @property
    def d(self) -> int | None:
        """Radius when the edge set is {1..d}, else None."""
        E = self.edge_distances
        return len(E) if E == tuple(range(1, len(E) + 1)) else None


def _edge_set(n: int, edge_distances: Iterable[int]) -> tuple[int, ...]:
    E = tuple(sorted(set(int(e) for e in edge_distances)))
    if any(not 1 <= e <= n for e in E):
        raise DomainError(f"edge distances must lie in [1, {n}], got {E}")
    return E


def verify_primal(n: int, edge_distances: Iterable[int], values) -> Fraction:
    """Check f(0) = 1, f = 0 on E, f >= 0 and f^ >= 0; return f^(0)."""
    E = set(_edge_set(n, edge_distances))
    f = [Fraction(v) for v in values]
    if len(f) != n + 1:
        raise CertificateError(f"primal needs {n + 1} values, got {len(f)}")
    if f[0] != 1:
        raise CertificateError("primal must have f(0) = 1")
    for x, v in enumerate(f):
        if v < 0:
            raise CertificateError(f"primal f({x}) = {v} < 0")
        if x in E and v != 0:
            raise CertificateError(f"primal f({x}) = {v} on an edge distance")
    spec = spectrum_of_values(n, f)
    for j, c in enumerate(spec.coeffs):
        if c < 0:
            raise CertificateError(f"primal spectrum f^({j}) = {c} < 0")
    return spec.coeffs[0]


def verify_dual(n: int, edge_distances: Iterable[int], dual: SpectrumPoly) -> Fraction:
    """Check g^ >= 0, g^(0) > 0 and g <= 0 off the edge set; return 2^n g(0) / g^(0)."""
    E = set(_edge_set(n, edge_distances))
    if dual.n != n:
        raise CertificateError(f"dual has length parameter {dual.n}, expected {n}")
    for j, c in enumerate(dual.coeffs):
        if c < 0:
            raise CertificateError(f"dual spectrum g^({j}) = {c} < 0")
    if dual.coeffs[0] <= 0:
        raise CertificateError("dual needs g^(0) > 0")
    g = dual.values()
    for x in range(1, n + 1):
        if x not in E and g[x] > 0:
            raise CertificateError(f"dual g({x}) = {g[x]} > 0 at a non-edge distance")
    return (1 << n) * g[0] / dual.coeffs[0]


def theta_s_distance_graph(n: int, edge_distances: Iterable[int]) -> ThetaResult:
    """theta_S of the graph on F_2^n joining pairs whose distance lies in edge_distances."""
    if n < 0:
        raise DomainError("n must be a natural number")
    E = _edge_set(n, edge_distances)
    free = [x for x in range(1, n + 1) if x not in E]
    K = krawtchouk_table(n).values
    if free:
        lp = simplex.ExactLP(
            objective=[binomial(n, x) for x in free],
            rows=[[-K[x][j] for x in free] for j in range(1, n + 1)],
            senses=[simplex.LE] * n,
            rhs=[1] * n,
        )
        sol = simplex.solve(lp)
        if sol.status is not simplex.Status.OPTIMAL:
            raise CertificateError(f"Delsarte LP reported {sol.status.value}")
        f = [Fraction(1)] + [Fraction(0)] * n
        for x, v in zip(free, sol.primal):
            f[x] = v
        y = sol.dual
    else:
        f = [Fraction(1)] + [Fraction(0)] * n
        y = [Fraction(0)] * n
    dual = SpectrumPoly(n, (Fraction(1),) + tuple(y[j - 1] / binomial(n, j) for j in range(1, n + 1)))
    value = verify_primal(n, E, f)
    bound = verify_dual(n, E, dual)
    if value != bound:
        raise CertificateError(f"certificates disagree: primal {value}, dual {bound}")
    return ThetaResult(n, E, value, spectrum_of_values(n, f), dual, tuple(f))


def theta_s_hamming(n: int, d: int) -> ThetaResult:
    """theta_S(H(n, d)), distinct strings within distance d adjacent."""
    if not 0 <= d <= n:
        raise DomainError(f"need 0 <= d <= n, got n={n}, d={d}")
    return theta_s_distance_graph(n, range(1, d + 1))


def theta_s_spec(spec) -> ThetaResult:
    """theta_S of a HammingGraphSpec (plain or complemented)."""
    return theta_s_distance_graph(spec.n, spec.edge_distances())


@dataclass(frozen=True)
class PlotkinCertificate:
    n: int
    d: int
    dual: SpectrumPoly
    bound: Fraction


def plotkin_dual(n: int, d: int) -> PlotkinCertificate:
    """Dual certificate g(x) = 2(d + 1 - x), bounding theta_S(H(n, d)) by 2(d+1)/(2d+2-n)."""
    if not 0 <= d <= n:
        raise DomainError(f"need 0 <= d <= n, got n={n}, d={d}")
    if 2 * d + 2 <= n:
        raise DomainError(f"Plotkin certificate needs 2d + 2 > n, got n={n}, d={d}")
    N = 1 << n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = Fraction(N * (2 * d + 2 - n))
    if n >= 1:
        coeffs[1] = Fraction(N)
    dual = SpectrumPoly(n, tuple(coeffs))
    bound = verify_dual(n, range(1, d + 1), dual)
    if bound != Fraction(2 * (d + 1), 2 * d + 2 - n):
        raise CertificateError(f"Plotkin certificate evaluates to {bound}")
    return PlotkinCertificate(n, d, dual, bound)


@dataclass(frozen=True)
class LevenshteinResult:
    n: int
    d: int
    feasible: bool
    spectrum: SpectrumPoly  # f^
    values: tuple[Fraction, ...]  # f(0..n)
    bound: Fraction  # 1 + r, meaningful when feasible


def levenshtein_primal(n: int, d: int) -> LevenshteinResult:
    """Two-point primal f(0) = 1, f(d+1) = r / C(n, d+1) with r = n / (2d + 2 - n).

    When its spectrum is nonnegative it proves theta_S(H(n, d)) >= (2d+2)/(2d+2-n).
    """
    if d % 2 == 0:
        raise DomainError(f"d must be odd, got {d} (route even d through d + 1)")
    if 2 * d + 2 <= n:
        raise DomainError(f"need 2d + 2 > n, got n={n}, d={d}")
    if d >= n:
        raise DomainError(f"need d <= n - 1 so that distance d + 1 exists, got n={n}, d={d}")
    r = Fraction(n, 2 * d + 2 - n)
    f = [Fraction(0)] * (n + 1)
    f[0] = Fraction(1)
    f[d + 1] = r / binomial(n, d + 1)
    spec = spectrum_of_values(n, f)
    feasible = all(c >= 0 for c in spec.coeffs)
    if feasible:
        verify_primal(n, range(1, d + 1), f)
    return LevenshteinResult(n, d, feasible, spec, tuple(f), 1 + r)


def levenshtein_bound(n: int, d: int) -> LevenshteinResult:
    """levenshtein_primal at d, or at d + 1 when d is even (theta_S is nonincreasing in d)."""
    if d % 2 == 0:
        if d + 1 >= n:
            raise PreconditionError(f"even d={d} would route through d+1={d + 1} >= n={n}")
        return levenshtein_primal(n, d + 1)
    return levenshtein_primal(n, d)


@dataclass(frozen=True)
class FeasibilityRow:
    n: int
    d: int
    feasible: bool
    bound: Fraction
    theta: Fraction | None


def levenshtein_table(ns: Iterable[int], with_theta: bool = True) -> list[FeasibilityRow]:
    """For each n: d = floor(3n/4), bumped to odd, with the two-point primal's status.

    With ``with_theta`` the exact LP value is attached, and a feasible row
    must reproduce it.
    """
    rows = []
    for n in ns:
        d = (3 * n) // 4
        if d % 2 == 0:
            d += 1
        lev = levenshtein_primal(n, d)
        theta = theta_s_hamming(n, d).value if with_theta else None
        if theta is not None and lev.feasible and theta != lev.bound:
            raise CertificateError(f"n={n}, d={d}: LP gives {theta}, two-point primal {lev.bound}")
        rows.append(FeasibilityRow(n, d, lev.feasible, lev.bound, theta))
    return rows
