"""Hamming graphs, their complements and products, plus exact searches on them.

Vertices are integers: bit i of a Hamming vertex is coordinate i. A product
vertex (x, y) is encoded as ``x << right.n | y``. Every graph here is a Cayley
graph of F_2^N (adjacency depends on u ^ v only, and only through the Hamming
weights of the two factor parts), which the searches exploit: translations
fix vertex 0 and coordinate permutations inside a factor fix weight classes.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import CertificateError, DomainError
from .exact import binomial, bits_to_int, krawtchouk_table

INFINITE = math.inf
HOMOMORPHIC, STRONG = "homomorphic", "strong"
DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class HammingGraphSpec:
    """H(n, d): distinct strings at distance <= d are adjacent; the complement joins distance > d."""

    n: int
    d: int
    complemented: bool = False

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.d <= self.n:
            raise DomainError(f"need 0 <= d <= n, got n={self.n}, d={self.d}")

    @property
    def bits(self) -> int:
        return self.n

    @property
    def num_vertices(self) -> int:
        return 1 << self.n

    def adjacent_weight(self, w: int) -> bool:
        if w == 0:
            return False
        return (w > self.d) if self.complemented else (w <= self.d)

    def complement(self) -> "HammingGraphSpec":
        return HammingGraphSpec(self.n, self.d, not self.complemented)

    def edge_distances(self) -> tuple[int, ...]:
        return tuple(w for w in range(1, self.n + 1) if self.adjacent_weight(w))

    def adjacent_diff(self, diff: int) -> bool:
        return self.adjacent_weight(bin(diff).count("1"))

    def weight_class(self, diff: int):
        return bin(diff).count("1")

    def class_representative(self, cls) -> int:
        return (1 << cls) - 1

    def degree(self) -> int:
        return sum(binomial(self.n, w) for w in self.edge_distances())

    def __str__(self):
        return f"{'Hc' if self.complemented else 'H'}({self.n},{self.d})"


@dataclass(frozen=True)
class ProductGraphSpec:
    left: HammingGraphSpec
    right: HammingGraphSpec
    kind: str = HOMOMORPHIC

    def __post_init__(self):
        if self.kind not in (HOMOMORPHIC, STRONG):
            raise DomainError(f"kind must be {HOMOMORPHIC!r} or {STRONG!r}, got {self.kind!r}")

    @property
    def bits(self) -> int:
        return self.left.n + self.right.n

    @property
    def num_vertices(self) -> int:
        return 1 << self.bits

    def adjacent_weights(self, wx: int, wy: int) -> bool:
        L, R = self.left, self.right
        if self.kind == HOMOMORPHIC:
            # x = x' with y != y', or x ~ x' with y not adjacent to y' (y = y' allowed)
            if wx == 0:
                return wy != 0
            return L.adjacent_weight(wx) and not R.adjacent_weight(wy)
        if wx == 0 and wy == 0:
            return False
        return (wx == 0 or L.adjacent_weight(wx)) and (wy == 0 or R.adjacent_weight(wy))

    def split(self, v: int) -> tuple[int, int]:
        return v >> self.right.n, v & ((1 << self.right.n) - 1)

    def adjacent_diff(self, diff: int) -> bool:
        return self.adjacent_weights(*self.weight_class(diff))

    def weight_class(self, diff: int):
        x, y = self.split(diff)
        return bin(x).count("1"), bin(y).count("1")

    def class_representative(self, cls) -> int:
        wx, wy = cls
        return ((1 << wx) - 1) << self.right.n | ((1 << wy) - 1)

    def degree(self) -> int:
        return sum(binomial(self.left.n, wx) * binomial(self.right.n, wy)
                   for wx in range(self.left.n + 1) for wy in range(self.right.n + 1)
                   if self.adjacent_weights(wx, wy))

    def __str__(self):
        op = "ltimes" if self.kind == HOMOMORPHIC else "boxtimes"
        return f"{self.left} {op} {self.right}"


GraphSpec = HammingGraphSpec | ProductGraphSpec

_TERM = re.compile(r"^\s*(H|Hc|Hbar)\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_OPS = {"ltimes": HOMOMORPHIC, "⋉": HOMOMORPHIC, "boxtimes": STRONG, "⊠": STRONG}


def parse_spec(text: str) -> GraphSpec:
    """Parse 'H(4,3)', 'Hc(3,2)' or 'Hc(3,2) ltimes Hc(4,3)' / '... boxtimes ...'."""
    for op, kind in _OPS.items():
        if op in text:
            left, right = text.split(op, 1)
            return ProductGraphSpec(parse_spec(left), parse_spec(right), kind)
    m = _TERM.match(text)
    if not m:
        raise DomainError(f"cannot parse graph spec {text!r}")
    name, n, d = m.group(1), int(m.group(2)), int(m.group(3))
    return HammingGraphSpec(n, d, name != "H")


def _as_vertex(spec: GraphSpec, v) -> int:
    if isinstance(v, (int, np.integer)):
        v = int(v)
    elif isinstance(spec, ProductGraphSpec) and isinstance(v, tuple) and len(v) == 2:
        x, y = (_as_vertex(spec.left, v[0]), _as_vertex(spec.right, v[1]))
        return x << spec.right.n | y
    else:
        bits = list(v)
        if len(bits) != spec.bits:
            raise DomainError(f"vertex has {len(bits)} coordinates, graph expects {spec.bits}")
        v = bits_to_int(bits)
    if not 0 <= v < spec.num_vertices:
        raise DomainError(f"vertex {v} outside the {spec.bits}-bit vertex set")
    return v


def adjacent(spec: GraphSpec, v1, v2) -> bool:
    return spec.adjacent_diff(_as_vertex(spec, v1) ^ _as_vertex(spec, v2))


def edge_table(spec: GraphSpec) -> np.ndarray:
    """Boolean array over all differences: entry d says whether 0 and d are adjacent."""
    N = spec.num_vertices
    if isinstance(spec, HammingGraphSpec):
        w = np.bitwise_count(np.arange(N, dtype=np.uint64)).astype(np.int64)
        lut = np.array([spec.adjacent_weight(i) for i in range(spec.n + 1)])
        return lut[w]
    ar = np.arange(N, dtype=np.uint64)
    wx = np.bitwise_count(ar >> np.uint64(spec.right.n)).astype(np.int64)
    wy = np.bitwise_count(ar & np.uint64((1 << spec.right.n) - 1)).astype(np.int64)
    lut = np.array([[spec.adjacent_weights(a, b) for b in range(spec.right.n + 1)]
                    for a in range(spec.left.n + 1)])
    return lut[wx, wy]


def pack_rows(mat: np.ndarray) -> np.ndarray:
    """Boolean (r, c) matrix -> (r, ceil(c/64)) uint64 little-endian bitsets."""
    r, c = mat.shape
    W = max(1, (c + 63) // 64)
    packed = np.packbits(mat, axis=1, bitorder="little")
    out = np.zeros((r, W * 8), dtype=np.uint8)
    out[:, :packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64)


def _cayley_rows(vertices: np.ndarray, table: np.ndarray, chunk: int = 1 << 22) -> np.ndarray:
    """Packed rows of the graph on ``vertices`` with u ~ v iff table[u ^ v]."""
    p = len(vertices)
    W = max(1, (p + 63) // 64)
    rows = np.zeros((p, W), dtype=np.uint64)
    step = max(1, chunk // max(p, 1))
    for s in range(0, p, step):
        block = table[vertices[s:s + step, None] ^ vertices[None, :]]
        rows[s:s + step] = pack_rows(block)
    return rows


def _degree_order(vertices: np.ndarray, table: np.ndarray) -> np.ndarray:
    rows = _cayley_rows(vertices, table)
    deg = np.bitwise_count(rows).sum(axis=1)
    # descending degree, ties by vertex label
    idx = np.lexsort((vertices, -deg))
    return vertices[idx]


@dataclass(frozen=True)
class IndependenceResult:
    size: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int

    @property
    def lower_bound_only(self) -> bool:
        return not self.exact


def _check_independent(witness: Sequence[int], adj: Callable[[int, int], bool]) -> None:
    for i, u in enumerate(witness):
        for v in witness[i + 1:]:
            if u == v or adj(u, v):
                raise CertificateError(f"witness vertices {u} and {v} are adjacent or equal")


def independence_number(spec: GraphSpec, budget: int = DEFAULT_BUDGET) -> IndependenceResult:
    """Exact alpha(G) by branch and bound (maximum clique in the complement).

    The search pins vertex 0 (translation symmetry) and a second vertex from
    each weight class (coordinate permutations fixing 0). ``budget`` counts
    search nodes; when it runs out the result is a lower bound only.
    """
    if budget <= 0:
        raise DomainError("budget must be positive")
    if spec.bits > 14:
        raise DomainError(f"desk-scale search limited to 2^14 vertices, got 2^{spec.bits}")
    table = edge_table(spec)
    free = ~table
    free[0] = False
    cands0 = np.flatnonzero(free).astype(np.uint64)
    best = (0,)
    nodes = 0
    exact = True
    reps = sorted({spec.class_representative(spec.weight_class(int(v))) for v in cands0})
    for r in reps:
        P = cands0[free[cands0 ^ np.uint64(r)]]
        lower = len(best) - 2
        if len(P) <= lower:
            continue
        if len(best) < 2:
            best = (0, r)
            lower = 0
        if len(P) == 0:
            continue
        P = _degree_order(P, free)
        rows = _cayley_rows(P, free)
        size, members, used, complete = kernels.max_clique(rows, lower, budget - nodes)
        nodes += used
        if members:
            best = tuple(sorted([0, r] + [int(P[i]) for i in members]))
        if not complete:
            exact = False
            break
    _check_independent(best, lambda u, v: spec.adjacent_diff(u ^ v))
    return IndependenceResult(len(best), best, exact, nodes)


def independence_number_explicit(vertices: Sequence, adj: Callable, budget: int = DEFAULT_BUDGET
                                 ) -> IndependenceResult:
    """alpha of an arbitrary small graph given as a vertex list and adjacency predicate.

    No symmetry reduction; the witness holds positions into ``vertices``.
    """
    vertices = list(vertices)
    p = len(vertices)
    if p == 0:
        return IndependenceResult(0, (), True, 0)
    A = np.zeros((p, p), dtype=bool)
    for i in range(p):
        for j in range(i + 1, p):
            if adj(vertices[i], vertices[j]):
                A[i, j] = A[j, i] = True
    compat = ~A
    np.fill_diagonal(compat, False)
    deg = compat.sum(axis=1)
    perm = np.lexsort((np.arange(p), -deg))
    compat = compat[np.ix_(perm, perm)]
    size, members, used, complete = kernels.max_clique(pack_rows(compat), 0, budget)
    witness = tuple(sorted(int(perm[i]) for i in members))
    _check_independent(witness, lambda i, j: A[i, j])
    return IndependenceResult(size, witness, complete, used)


def edge_count(spec: GraphSpec) -> int:
    return spec.num_vertices * spec.degree() // 2


def turan_lower_bound(spec: GraphSpec) -> Fraction:
    """|V|^2 / (2(|E| + |V|)), a lower bound on the independence number."""
    N = spec.num_vertices
    return Fraction(N * N, 2 * (edge_count(spec) + N))


def adjacency_rows(spec: GraphSpec) -> np.ndarray:
    verts = np.arange(spec.num_vertices, dtype=np.uint64)
    return _cayley_rows(verts, edge_table(spec))


@dataclass(frozen=True)
class HomResult:
    status: str  # FOUND | NONE | UNDECIDED
    map: object | None
    nodes: int


def _bfs_order(spec: GraphSpec) -> list[int]:
    table = edge_table(spec)
    conn = np.flatnonzero(table)
    N = spec.num_vertices
    seen = [False] * N
    order = []
    for root in range(N):
        if seen[root]:
            continue
        seen[root] = True
        q = deque([root])
        while q:
            u = q.popleft()
            order.append(u)
            for v in sorted(int(u ^ s) for s in conn):
                if not seen[v]:
                    seen[v] = True
                    q.append(v)
    return order


def find_homomorphism(src: HammingGraphSpec, dst: HammingGraphSpec, budget: int = DEFAULT_BUDGET
                      ) -> HomResult:
    """Search a vertex map src -> dst sending edges to edges; vertex 0 is pinned to 0."""
    from .maps import MapTable

    if budget <= 0:
        raise DomainError("budget must be positive")
    if src.bits > 10:
        raise DomainError(f"source limited to 2^10 vertices, got 2^{src.bits}")
    status, images, nodes = kernels.hom_search(adjacency_rows(src), adjacency_rows(dst),
                                               _bfs_order(src), True, budget)
    if status == -1:
        return HomResult("UNDECIDED", None, nodes)
    if status == 0:
        return HomResult("NONE", None, nodes)
    for u in range(src.num_vertices):
        for s in np.flatnonzero(edge_table(src)):
            v = u ^ int(s)
            if not dst.adjacent_diff(images[u] ^ images[v]):
                raise CertificateError(f"edge {u}-{v} not preserved")
    return HomResult("FOUND", MapTable(src.bits, dst.bits, tuple(images)), nodes)


def odd_girth(spec: GraphSpec) -> float | int:
    """Length of the shortest odd cycle (INFINITE when bipartite), by BFS from vertex 0."""
    if spec.bits > 14:
        raise DomainError(f"desk-scale search limited to 2^14 vertices, got 2^{spec.bits}")
    conn = np.flatnonzero(edge_table(spec)).astype(np.int64)
    if len(conn) == 0:
        return INFINITE
    dist = np.full(spec.num_vertices, -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    t = 0
    step = max(1, (1 << 22) // len(conn))
    while len(frontier):
        for s in range(0, len(frontier), step):
            nb = (frontier[s:s + step, None] ^ conn[None, :]).ravel()
            if np.any(dist[nb] == t):
                return 2 * t + 1
            fresh = nb[dist[nb] == -1]
            dist[fresh] = t + 1
        t += 1
        frontier = np.flatnonzero(dist == t)
    return INFINITE


def closed_walk_count(n: int, d: int, m: int) -> Fraction:
    """Closed walks of length m at a vertex of Hc(n, d), from the Krawtchouk moment formula."""
    if m < 1:
        raise DomainError("walk length must be at least 1")
    if not 0 <= d <= n:
        raise DomainError(f"need 0 <= d <= n, got n={n}, d={d}")
    K = krawtchouk_table(n).values
    total = Fraction(0)
    for x in range(n + 1):
        lam = sum(K[j][x] for j in range(d + 1, n + 1))
        total += binomial(n, x) * lam ** m
    return total / (1 << n)
