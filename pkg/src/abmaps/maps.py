"""Explicit maps F_2^k -> F_2^n: constructions, verification and pair statistics.

Inputs and images are integers with bit j = coordinate j. A map is an
(a, b)-map when inputs more than a apart always land more than b apart; the
rational parameters are alpha = a/k and beta = b/n.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, PreconditionError
from .exact import bits_to_int


@dataclass(frozen=True)
class MapTable:
    k: int
    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.k < 0 or self.n < 0:
            raise DomainError("k and n must be natural numbers")
        imgs = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != 1 << self.k:
            raise DomainError(f"expected {1 << self.k} images, got {len(imgs)}")
        if any(not 0 <= v < 1 << self.n for v in imgs):
            raise DomainError(f"every image must be an {self.n}-bit string")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.uint64)

    def to_json(self) -> str:
        width = max(1, (self.n + 3) // 4)
        images = [format(v, f"0{width}x") for v in self.images]
        return json.dumps({"k": self.k, "n": self.n, "images": images}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MapTable":
        try:
            data = json.loads(text)
            k, n = int(data["k"]), int(data["n"])
            images = [int(h, 16) for h in data["images"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed map file: {exc}") from exc
        return cls(k, n, tuple(images))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "MapTable":
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class DistanceProfile:
    """profile[a] = min |f(x) ^ f(x')| over pairs with |x ^ x'| > a (inf when no pair)."""

    k: int
    n: int
    profile: tuple

    def __call__(self, a: int):
        return self.profile[a]


def repetition_map(k: int, rho: int) -> MapTable:
    if rho < 1:
        raise DomainError("rho must be a positive integer")
    images = []
    for x in range(1 << k):
        y = 0
        for r in range(rho):
            y |= x << (r * k)
        images.append(y)
    return MapTable(k, rho * k, tuple(images))


def majority_map(k: int) -> MapTable:
    """Majority vote on each consecutive block of 3 input bits."""
    if k % 3:
        raise DomainError(f"k must be divisible by 3, got {k}")
    images = []
    for x in range(1 << k):
        y = 0
        for i in range(k // 3):
            if bin((x >> (3 * i)) & 7).count("1") >= 2:
                y |= 1 << i
        images.append(y)
    return MapTable(k, k // 3, tuple(images))


def _as_point(v, length: int) -> int:
    if isinstance(v, (int, np.integer)):
        v = int(v)
    else:
        bits = list(v)
        if len(bits) != length:
            raise DomainError(f"expected a {length}-bit string, got {len(bits)} bits")
        v = bits_to_int(bits)
    if not 0 <= v < 1 << length:
        raise DomainError(f"{v} is not a {length}-bit string")
    return v


def greedy_cover(k: int, radius: int) -> list[int]:
    """Cover F_2^k by radius balls, each time taking the centre that covers most new points."""
    N = 1 << k
    pts = np.arange(N, dtype=np.uint64)
    dist = np.bitwise_count(pts[:, None] ^ pts[None, :]) <= radius
    uncovered = np.ones(N, dtype=bool)
    centers = []
    while uncovered.any():
        gain = (dist & uncovered[None, :]).sum(axis=1)
        c = int(np.argmax(gain))  # first maximiser, so deterministic
        centers.append(c)
        uncovered &= ~dist[c]
    return centers


def separation_map(k: int, n: int, a_radius: int, codebook: Sequence, b: int,
                   centers: Sequence | None = None) -> MapTable:
    """Send each x to the codeword of the cover cell containing it.

    The cover of F_2^k by radius ``a_radius`` balls is greedy unless
    ``centers`` is given; the i-th centre uses the i-th codeword.
    """
    code = [_as_point(c, n) for c in codebook]
    for i, c in enumerate(code):
        for c2 in code[i + 1:]:
            if bin(c ^ c2).count("1") <= b:
                raise PreconditionError(f"codewords {c:b} and {c2:b} are within distance {b}")
    if centers is None:
        cells = greedy_cover(k, a_radius)
    else:
        cells = [_as_point(c, k) for c in centers]
    if len(cells) > len(code):
        raise PreconditionError(f"cover needs {len(cells)} cells but the codebook has {len(code)} words")
    images = []
    for x in range(1 << k):
        cell = next((i for i, c in enumerate(cells) if bin(x ^ c).count("1") <= a_radius), None)
        if cell is None:
            raise PreconditionError(f"cover is not surjective: {x:0{k}b} lies in no ball")
        images.append(code[cell])
    return MapTable(k, n, tuple(images))


def _generator_rows(generator) -> tuple[int, int, list[int]]:
    G = np.asarray(generator, dtype=np.int64)
    if G.ndim != 2:
        raise DomainError("generator must be a k x n matrix")
    if not np.isin(G, (0, 1)).all():
        raise DomainError("generator entries must be 0 or 1")
    k, n = G.shape
    return k, n, [bits_to_int(row) for row in G]


def linear_map(generator) -> MapTable:
    """f(x) = xG over F_2."""
    k, n, rows = _generator_rows(generator)
    images = [0] * (1 << k)
    for x in range(1, 1 << k):
        low = (x & -x).bit_length() - 1
        images[x] = images[x & (x - 1)] ^ rows[low]
    return MapTable(k, n, tuple(images))


def verify_linear(generator, a: int, b: int) -> bool:
    """Linear (a, b)-map test: every x with |x| > a must have |xG| > b."""
    f = linear_map(generator)
    w_in = np.bitwise_count(np.arange(1 << f.k, dtype=np.uint64))
    w_out = np.bitwise_count(f.as_array())
    return not bool(np.any((w_in > a) & (w_out <= b)))


def distance_profile(f: MapTable) -> DistanceProfile:
    if f.k > 14:
        raise DomainError(f"exhaustive profile limited to k <= 14, got {f.k}")
    best = kernels.pair_profile(f.as_array(), f.k)
    prof = []
    running = math.inf
    for w in range(f.k, -1, -1):
        prof.append(running)  # pairs strictly farther than w
        if best[w] != kernels.NO_PAIR:
            running = min(running, int(best[w]))
    return DistanceProfile(f.k, f.n, tuple(reversed(prof)))


def _check_ab(f: MapTable, a: int, b: int) -> None:
    if not isinstance(a, (int, np.integer)) or not isinstance(b, (int, np.integer)):
        raise DomainError("a and b must be integers")
    if not 0 <= a <= f.k:
        raise DomainError(f"a must lie in [0, {f.k}], got {a}")


def verify_map(f: MapTable, a: int, b: int) -> bool:
    """True iff |x ^ x'| > a always forces |f(x) ^ f(x')| > b."""
    _check_ab(f, a, b)
    return distance_profile(f)(a) > b


def count_violating_pairs(f: MapTable, a: int, b: int, subset: Iterable | None = None) -> int:
    """Unordered pairs in ``subset`` (default all inputs) more than a apart whose images are within b."""
    _check_ab(f, a, b)
    if f.k > 14:
        raise DomainError(f"pair scan limited to k <= 14, got {f.k}")
    if subset is None:
        members = np.arange(1 << f.k, dtype=np.uint64)
    else:
        members = np.unique(np.asarray([_as_point(x, f.k) for x in subset], dtype=np.uint64))
    return kernels.count_violations(f.as_array(), members, a, b)
