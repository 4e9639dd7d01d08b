"""Bivariate Delsarte programs for products of Hamming graphs, and certificate composition.

Distances in F_2^k x F_2^n are pairs (x, y) of Hamming weights. For the
homomorphic product of complements, Hc(k,a) ltimes Hc(n,b), the edge set is
D = {x = 0, y != 0} u {x > a, y <= b}; for Hc(k,a) boxtimes H(n,b) it is
D = {x = 0 or x > a} n {y <= b} minus (0, 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import simplex
from .delsarte import theta_s_spec, verify_dual, verify_primal
from .errors import CertificateError, DomainError, PreconditionError
from .exact import SpectrumPoly, binomial, krawtchouk_table
from .graphs import STRONG, HOMOMORPHIC, HammingGraphSpec, ProductGraphSpec

KINDS = (HOMOMORPHIC, STRONG)


@dataclass(frozen=True)
class BiSpectrumPoly:
    """Function on [0,k] x [0,n] held by coefficients f^(i, j) in the product Krawtchouk basis."""

    k: int
    n: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.coeffs)
        if len(rows) != self.k + 1 or any(len(r) != self.n + 1 for r in rows):
            raise DomainError(f"expected a {self.k + 1} x {self.n + 1} coefficient grid")
        object.__setattr__(self, "coeffs", rows)

    def __call__(self, x: int, y: int) -> Fraction:
        Kk = krawtchouk_table(self.k).values
        Kn = krawtchouk_table(self.n).values
        total = Fraction(0)
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    total += c * Kk[i][x] * Kn[j][y]
        return total / (1 << (self.k + self.n))

    def values(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(self(x, y) for y in range(self.n + 1)) for x in range(self.k + 1))


def bispectrum_of_values(k: int, n: int, values) -> BiSpectrumPoly:
    """f^(i, j) = sum over (x, y) of f(x, y) K_x(i) K_y(j)."""
    Kk = krawtchouk_table(k).values
    Kn = krawtchouk_table(n).values
    vals = [[Fraction(v) for v in row] for row in values]
    coeffs = []
    for i in range(k + 1):
        row = []
        for j in range(n + 1):
            s = Fraction(0)
            for x in range(k + 1):
                for y in range(n + 1):
                    if vals[x][y]:
                        s += vals[x][y] * Kk[x][i] * Kn[y][j]
            row.append(s)
        coeffs.append(tuple(row))
    return BiSpectrumPoly(k, n, tuple(coeffs))


@dataclass(frozen=True)
class DomainSets:
    k: int
    a: int
    n: int
    b: int
    kind: str = HOMOMORPHIC

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not (0 <= self.a <= self.k and 0 <= self.b <= self.n):
            raise DomainError("need 0 <= a <= k and 0 <= b <= n")

    def in_D(self, x: int, y: int) -> bool:
        if self.kind == HOMOMORPHIC:
            return (x == 0 and y != 0) or (x > self.a and y <= self.b)
        return (x, y) != (0, 0) and (x == 0 or x > self.a) and y <= self.b

    def in_Dc(self, x: int, y: int) -> bool:
        """Nonzero distance pairs outside D."""
        if self.kind == HOMOMORPHIC:
            return (0 < x <= self.a) or (x != 0 and y > self.b)
        return (0 < x <= self.a) or y > self.b

    def grid(self):
        return [(x, y) for x in range(self.k + 1) for y in range(self.n + 1)]

    def graph(self) -> ProductGraphSpec:
        left = HammingGraphSpec(self.k, self.a, True)
        right = HammingGraphSpec(self.n, self.b, self.kind == HOMOMORPHIC)
        return ProductGraphSpec(left, right, self.kind)


@dataclass(frozen=True)
class ProductThetaResult:
    domain: DomainSets
    value: Fraction
    primal_values: tuple[tuple[Fraction, ...], ...]  # f(x, y)
    primal: BiSpectrumPoly
    dual: BiSpectrumPoly  # g^, with g^(0,0) = 1


def verify_bi_primal(dom: DomainSets, values) -> Fraction:
    f = [[Fraction(v) for v in row] for row in values]
    if f[0][0] != 1:
        raise CertificateError("primal must have f(0,0) = 1")
    for x, y in dom.grid():
        if f[x][y] < 0:
            raise CertificateError(f"primal f({x},{y}) < 0")
        if dom.in_D(x, y) and f[x][y] != 0:
            raise CertificateError(f"primal f({x},{y}) nonzero on an edge class")
    spec = bispectrum_of_values(dom.k, dom.n, f)
    for i, row in enumerate(spec.coeffs):
        for j, c in enumerate(row):
            if c < 0:
                raise CertificateError(f"primal spectrum f^({i},{j}) < 0")
    return spec.coeffs[0][0]


def verify_bi_dual(dom: DomainSets, dual: BiSpectrumPoly) -> Fraction:
    """Check g^ >= 0, g^(0,0) > 0 and g <= 0 on D^c; return 2^(k+n) g(0,0) / g^(0,0)."""
    if (dual.k, dual.n) != (dom.k, dom.n):
        raise CertificateError("dual dimensions do not match the domain")
    for i, row in enumerate(dual.coeffs):
        for j, c in enumerate(row):
            if c < 0:
                raise CertificateError(f"dual spectrum g^({i},{j}) < 0")
    if dual.coeffs[0][0] <= 0:
        raise CertificateError("dual needs g^(0,0) > 0")
    g = dual.values()
    for x, y in dom.grid():
        if dom.in_Dc(x, y) and g[x][y] > 0:
            raise CertificateError(f"dual g({x},{y}) = {g[x][y]} > 0 off the edge set")
    return (1 << (dom.k + dom.n)) * g[0][0] / dual.coeffs[0][0]


def theta_s_product(k: int, a: int, n: int, b: int, kind: str = HOMOMORPHIC) -> ProductThetaResult:
    """Exact optimum of the bivariate program for Hc(k,a) ltimes Hc(n,b) or Hc(k,a) boxtimes H(n,b)."""
    dom = DomainSets(k, a, n, b, kind)
    Kk = krawtchouk_table(k).values
    Kn = krawtchouk_table(n).values
    support = [(x, y) for x, y in dom.grid() if dom.in_Dc(x, y)]
    cons = [(i, j) for i, j in dom.grid() if (i, j) != (0, 0)]
    if support:
        lp = simplex.ExactLP(
            objective=[binomial(k, x) * binomial(n, y) for x, y in support],
            rows=[[-Kk[x][i] * Kn[y][j] for x, y in support] for i, j in cons],
            senses=[simplex.LE] * len(cons),
            rhs=[1] * len(cons),
        )
        sol = simplex.solve(lp)
        if sol.status is not simplex.Status.OPTIMAL:
            raise CertificateError(f"product LP reported {sol.status.value}")
        primal, y = sol.primal, sol.dual
    else:
        primal, y = [], [Fraction(0)] * len(cons)
    f = [[Fraction(0)] * (n + 1) for _ in range(k + 1)]
    f[0][0] = Fraction(1)
    for (x, yy), v in zip(support, primal):
        f[x][yy] = v
    ghat = [[Fraction(0)] * (n + 1) for _ in range(k + 1)]
    ghat[0][0] = Fraction(1)
    for (i, j), v in zip(cons, y):
        ghat[i][j] = v / (binomial(k, i) * binomial(n, j))
    dual = BiSpectrumPoly(k, n, tuple(tuple(r) for r in ghat))
    value = verify_bi_primal(dom, f)
    bound = verify_bi_dual(dom, dual)
    if value != bound:
        raise CertificateError(f"certificates disagree: primal {value}, dual {bound}")
    fv = tuple(tuple(r) for r in f)
    return ProductThetaResult(dom, value, fv, bispectrum_of_values(k, n, fv), dual)


def product_dual_from_factors(f1: SpectrumPoly, g1: SpectrumPoly, a: int, b: int,
                              kind: str = HOMOMORPHIC) -> Fraction:
    """Bound from g(x, y) = f1(x) g1(y), with f1 primal-feasible for theta_S(H(k,a)) and g1
    dual-feasible for theta_S(H(n,b)): 2^(k+n) f1(0) g1(0) / (f1^(0) g1^(0))."""
    k, n = f1.n, g1.n
    dom = DomainSets(k, a, n, b, kind)
    fvals = f1.values()
    scale = fvals[0]
    if scale <= 0:
        raise PreconditionError("f1 needs f1(0) > 0")
    try:
        verify_primal(k, range(1, a + 1), [v / scale for v in fvals])
    except CertificateError as exc:
        raise PreconditionError(f"f1 is not primal-feasible for theta_S(H({k},{a})): {exc}") from exc
    try:
        verify_dual(n, range(1, b + 1), g1)
    except CertificateError as exc:
        raise PreconditionError(f"g1 is not dual-feasible for theta_S(H({n},{b})): {exc}") from exc
    ghat = tuple(tuple(fi * gj for gj in g1.coeffs) for fi in f1.coeffs)
    return verify_bi_dual(dom, BiSpectrumPoly(k, n, ghat))


# ---- Composition of a product certificate from factor certificates ----

@dataclass(frozen=True)
class CertifiedMatrixBound:
    G: HammingGraphSpec
    H: HammingGraphSpec
    theta_G_complement: Fraction  # tr JM
    theta_H: Fraction  # lambda_max(C)
    c1: Fraction
    c2: Fraction
    psd_method: str  # "ldl" or "characters"
    psd_transcript: tuple[Fraction, ...]  # LDL pivots, or one eigenvalue per character
    matrix: tuple[tuple[Fraction, ...], ...] | None = field(default=None, repr=False)

    @property
    def bound(self) -> Fraction:
        return self.c1


def _popcount(v: int) -> int:
    return bin(v).count("1")


def ldl_psd(A: list[list[Fraction]]) -> tuple[bool, tuple[Fraction, ...]]:
    """Exact symmetric elimination. PSD iff every pivot is >= 0 and a zero pivot has a zero row."""
    A = [list(r) for r in A]
    m = len(A)
    pivots = []
    for p in range(m):
        d = A[p][p]
        pivots.append(d)
        if d < 0:
            return False, tuple(pivots)
        if d == 0:
            if any(A[p][j] for j in range(p + 1, m)):
                return False, tuple(pivots)
            continue
        row = A[p]
        for i in range(p + 1, m):
            l = A[i][p]
            if l:
                l = l / d
                Ai = A[i]
                for j in range(i, m):
                    if row[j]:
                        Ai[j] -= l * row[j]
                        if j != i:
                            A[j][i] = Ai[j]
    return True, tuple(pivots)


def character_spectrum(first_row: list[Fraction], bits: int) -> list[Fraction]:
    """Eigenvalues of the Cayley matrix A[u][v] = first_row[u ^ v], one per character chi.

    Exact fast Walsh-Hadamard transform over the rationals.
    """
    vals = list(first_row)
    h = 1
    while h < len(vals):
        for s in range(0, len(vals), 2 * h):
            for t in range(s, s + h):
                u, v = vals[t], vals[t + h]
                vals[t], vals[t + h] = u + v, u - v
        h *= 2
    return vals


LDL_LIMIT = 64


def compose_lemma1_certificate(G: HammingGraphSpec, H: HammingGraphSpec,
                               psd_method: str | None = None) -> CertifiedMatrixBound:
    """Assemble C^ = c1 I - c2 M (x) D + J for theta_S(G boxtimes H) and verify it.

    M is the optimal primal matrix of theta_S(complement of G) and
    C = lambda I - D + J the optimal dual matrix of theta_S(H) with
    lambda = lambda_max(C) = theta_S(H). The result bounds theta_S(G boxtimes H)
    by c1 = |V(G)| theta_S(H) / theta_S(complement of G).
    """
    nG, nH = G.n, H.n
    bits = nG + nH
    if bits > 12:
        raise DomainError(f"explicit matrices limited to 2^12 vertices, got 2^{bits}")
    method = psd_method or ("ldl" if (1 << bits) <= LDL_LIMIT else "characters")
    if method not in ("ldl", "characters"):
        raise DomainError(f"unknown PSD method {method!r}")

    tg = theta_s_spec(G.complement())
    th = theta_s_spec(H)
    VG = 1 << nG
    T = tg.value
    lam = th.value
    m_of = [v / VG for v in tg.primal_values]  # M[u][v] = f(|u ^ v|) / |V(G)|
    d_of = [(1 << nH) * v for v in th.dual.values()]  # D[u][v] = 2^n g(|u ^ v|), g^(0) = 1
    if d_of[0] != lam:
        raise CertificateError("dual matrix diagonal differs from theta_S(H)")
    c1 = lam * VG / T
    c2 = Fraction(VG * VG) / T

    prod = ProductGraphSpec(G, H, STRONG)
    mask = (1 << nH) - 1

    def chat(diff: int) -> Fraction:
        gx, hy = diff >> nH, diff & mask
        v = -c2 * m_of[_popcount(gx)] * d_of[_popcount(hy)] + 1
        return v + c1 if diff == 0 else v

    row0 = [chat(z) for z in range(1 << bits)]
    # entrywise: C^ >= 1 on the diagonal and on non-edges of G boxtimes H
    for z, v in enumerate(row0):
        if not prod.adjacent_diff(z) and v < 1:
            raise CertificateError(f"C^ entry at difference {z} is {v} < 1 on a non-edge")

    N = 1 << bits
    matrix = None
    if method == "ldl":
        matrix = tuple(tuple(row0[u ^ v] for v in range(N)) for u in range(N))
        residual = [[(c1 if u == v else 0) - matrix[u][v] for v in range(N)] for u in range(N)]
        ok, transcript = ldl_psd(residual)
    else:
        residual_row = [(c1 if z == 0 else 0) - row0[z] for z in range(N)]
        transcript = tuple(character_spectrum(residual_row, bits))
        ok = all(e >= 0 for e in transcript)
    if not ok:
        raise CertificateError("c1 I - C^ is not positive semidefinite")

    # the symmetrized primal matrix: constant diagonal 1/|V(G)|, constant row sums tr JM / |V(G)|
    if m_of[0] != Fraction(1, VG) or sum(binomial(nG, x) * m_of[x] for x in range(nG + 1)) != T / VG:
        raise CertificateError("primal matrix M fails its diagonal or row-sum identity")
    return CertifiedMatrixBound(G, H, T, lam, c1, c2, method, tuple(transcript), matrix)


def factor_matrices(G: HammingGraphSpec, H: HammingGraphSpec) -> tuple[np.ndarray, np.ndarray]:
    """Dense M (for theta_S of the complement of G) and C (for theta_S(H)) as object arrays."""
    tg = theta_s_spec(G.complement())
    th = theta_s_spec(H)
    VG, VH = 1 << G.n, 1 << H.n
    M = np.empty((VG, VG), dtype=object)
    for u in range(VG):
        for v in range(VG):
            M[u, v] = tg.primal_values[_popcount(u ^ v)] / VG
    g = th.dual.values()
    C = np.empty((VH, VH), dtype=object)
    for u in range(VH):
        for v in range(VH):
            C[u, v] = (th.value if u == v else 0) - VH * g[_popcount(u ^ v)] + 1
    return M, C
