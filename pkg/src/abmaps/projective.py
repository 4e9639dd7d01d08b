"""Point configurations in the binary projective space P^(m-1)(F_2).

A point is a nonzero m-bit integer; a hyperplane is given by a nonzero dual
vector w and contains p when <w, p> = 0 over F_2. Linear (a, b)-maps from
F_2^k to F_2^n correspond to configurations u_1..u_k, v_1..v_n where every
hyperplane holding at least n - b of the v's holds at least k - a of the u's.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, PreconditionError

BOXTIMES, LTIMES, MAP = "boxtimes", "ltimes", "map"
VARIANTS = (BOXTIMES, LTIMES, MAP)


@dataclass(frozen=True)
class ProjectiveConfig:
    m: int
    u_points: tuple[int, ...]
    v_points: tuple[int, ...]

    def __post_init__(self):
        u = tuple(int(p) for p in self.u_points)
        v = tuple(int(p) for p in self.v_points)
        object.__setattr__(self, "u_points", u)
        object.__setattr__(self, "v_points", v)
        if self.m < 1:
            raise DomainError("m must be positive")
        for p in u + v:
            if p == 0:
                raise DomainError("the zero vector is not a projective point")
            if not 0 < p < 1 << self.m:
                raise DomainError(f"point {p} is not an {self.m}-bit vector")

    @property
    def k(self) -> int:
        return len(self.u_points)

    @property
    def n(self) -> int:
        return len(self.v_points)

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "u": list(self.u_points), "v": list(self.v_points)},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ProjectiveConfig":
        try:
            data = json.loads(text)
            return cls(int(data["m"]), tuple(data["u"]), tuple(data["v"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed config file: {exc}") from exc

    @classmethod
    def load(cls, path) -> "ProjectiveConfig":
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class HyperplaneStats:
    hyperplane: int
    Z_u: int
    Z_v: int


def _zero_counts(points: Sequence[int], m: int) -> np.ndarray:
    """For each w in 1..2^m-1, how many points lie on the hyperplane of w."""
    w = np.arange(1, 1 << m, dtype=np.uint64)
    counts = np.zeros(len(w), dtype=np.int64)
    for p in points:
        counts += (np.bitwise_count(w & np.uint64(p)) & 1) == 0
    return counts


def hyperplane_stats(cfg: ProjectiveConfig) -> list[HyperplaneStats]:
    if cfg.m > 22:
        raise DomainError(f"enumeration limited to m <= 22, got {cfg.m}")
    zu = _zero_counts(cfg.u_points, cfg.m)
    zv = _zero_counts(cfg.v_points, cfg.m)
    return [HyperplaneStats(w, int(a), int(b)) for w, a, b in zip(range(1, 1 << cfg.m), zu, zv)]


def spans(points: Sequence[int], m: int) -> bool:
    """Whether the points span F_2^m (equivalently, lie in no common hyperplane)."""
    return rank(points) == m


def rank(points: Sequence[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> vector
    for p in points:
        while p:
            top = p.bit_length() - 1
            if top not in basis:
                basis[top] = p
                break
            p ^= basis[top]
    return len(basis)


@dataclass(frozen=True)
class ConditionResult:
    ok: bool
    reason: str
    witness: HyperplaneStats | None = None

    def __bool__(self):
        return self.ok


def check_ab_condition(cfg: ProjectiveConfig, a: int, b: int, variant: str = MAP) -> ConditionResult:
    """Check the hyperplane implication Z_v >= n - b  =>  Z_u >= k - a.

    boxtimes: all points together span and no hyperplane contains every u.
    ltimes: the u's alone span. map: as ltimes, with k = m.
    The witness is the failing hyperplane with the smallest dual vector.
    """
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")
    k, n = cfg.k, cfg.n
    if variant == MAP and k != cfg.m:
        return ConditionResult(False, f"map variant needs k = m, got k={k}, m={cfg.m}")
    if variant == BOXTIMES:
        if not spans(cfg.u_points + cfg.v_points, cfg.m):
            return ConditionResult(False, "points lie in a common hyperplane")
    elif not spans(cfg.u_points, cfg.m):
        return ConditionResult(False, "u points lie in a common hyperplane")
    for st in hyperplane_stats(cfg):
        if variant == BOXTIMES and st.Z_u == k:
            return ConditionResult(False, "a hyperplane contains every u point", st)
        if st.Z_v >= n - b and st.Z_u < k - a:
            return ConditionResult(False, "implication fails", st)
    return ConditionResult(True, "ok")


def find_bad_hyperplane(cfg: ProjectiveConfig, a: int, b: int) -> HyperplaneStats | None:
    """First hyperplane with Z_v >= n - b and (Z_u < k - a or Z_u = k), else None."""
    if not spans(cfg.u_points + cfg.v_points, cfg.m):
        raise PreconditionError("points lie in a common hyperplane")
    k, n = cfg.k, cfg.n
    for st in hyperplane_stats(cfg):
        if st.Z_v >= n - b and (st.Z_u < k - a or st.Z_u == k):
            return st
    return None


def fano_config() -> ProjectiveConfig:
    """u = e1, e2, e3 and v = e1, e2, e3, e1+e2+e3 in the Fano plane."""
    return ProjectiveConfig(3, (0b001, 0b010, 0b100), (0b001, 0b010, 0b100, 0b111))


def _solve_rows(U: list[int], m: int) -> list[int]:
    """Inverse of the m x m F_2 matrix with rows U (bit j = column j), as row bitmasks."""
    rows = [(U[i], 1 << i) for i in range(m)]
    for col in range(m):
        piv = next((r for r in range(col, m) if rows[r][0] >> col & 1), None)
        if piv is None:
            raise PreconditionError("u points are linearly dependent")
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(m):
            if r != col and rows[r][0] >> col & 1:
                rows[r] = (rows[r][0] ^ rows[col][0], rows[r][1] ^ rows[col][1])
    return [inv for _, inv in rows]


def generator_from_config(cfg: ProjectiveConfig) -> np.ndarray:
    """k x n generator of the linear map x -> (<l, v_j>)_j, where l solves <l, u_i> = x_i.

    Writing U (m x k) and V (m x n) for the points as columns, this is U^-1 V.
    Needs k = m and independent u's.
    """
    m = cfg.m
    if cfg.k != m:
        raise PreconditionError(f"need k = m, got k={cfg.k}, m={m}")
    # rows of U^T are the u points; (U^T)^-1 rows give l for each unit x
    inv = _solve_rows(list(cfg.u_points), m)
    # l_i = sum_r inv[r] bit i ... build as columns: solution for x = e_i is column i of (U^T)^-1
    G = np.zeros((m, cfg.n), dtype=np.int64)
    for i in range(m):
        l = sum(1 << r for r in range(m) if inv[r] >> i & 1)
        for j, v in enumerate(cfg.v_points):
            G[i, j] = bin(l & v).count("1") & 1
    return G
