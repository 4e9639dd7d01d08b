"""Exact integer/rational helpers and binary Krawtchouk polynomials.

Everything here is integer or :class:`fractions.Fraction` arithmetic. The
Krawtchouk convention is

    K_j(x) = sum_k (-1)^k C(x, k) C(n - x, j - k),

so K_0 = 1, K_1(x) = n - 2x and sum_w K_l(w) K_w(x) = 2^n [x == l].

A function f on distances {0..n} is stored through its Krawtchouk spectrum
fhat, with

    f(x) = 2^-n sum_j fhat(j) K_j(x),     fhat(j) = sum_x f(x) K_x(j).
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import DomainError

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("bool is not a rational")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rat(value)
    raise DomainError(f"cannot convert {type(value).__name__} to an exact rational")


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_range(n: int, *pairs: tuple[str, int]) -> None:
    if n < 0:
        raise DomainError(f"n must be a natural number, got {n}")
    for name, v in pairs:
        if not 0 <= v <= n:
            raise DomainError(f"{name}={v} outside [0, {n}]")


def krawtchouk_sum(n: int, j: int, x: int) -> int:
    """K_j(x) straight from the defining alternating sum (slow; used as an oracle)."""
    _check_range(n, ("j", j), ("x", x))
    return sum((-1) ** k * comb(x, k) * binomial(n - x, j - k) for k in range(min(j, x) + 1))


@lru_cache(maxsize=None)
def _table(n: int) -> tuple[tuple[int, ...], ...]:
    # (j+1) K_{j+1}(x) = (n - 2x) K_j(x) - (n - j + 1) K_{j-1}(x); the division is exact.
    rows = [[1] * (n + 1)]
    if n >= 1:
        rows.append([n - 2 * x for x in range(n + 1)])
    for j in range(1, n):
        prev, cur = rows[j - 1], rows[j]
        nxt = []
        for x in range(n + 1):
            num = (n - 2 * x) * cur[x] - (n - j + 1) * prev[x]
            q, r = divmod(num, j + 1)
            assert r == 0
            nxt.append(q)
        rows.append(nxt)
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class KrawtchoukTable:
    n: int
    values: tuple[tuple[int, ...], ...]

    def __call__(self, j: int, x: int) -> int:
        return self.values[j][x]

    def column(self, x: int) -> tuple[int, ...]:
        return tuple(row[x] for row in self.values)


def krawtchouk_table(n: int) -> KrawtchoukTable:
    if n < 0:
        raise DomainError(f"n must be a natural number, got {n}")
    return KrawtchoukTable(n, _table(n))


def krawtchouk(n: int, j: int, x: int) -> int:
    _check_range(n, ("j", j), ("x", x))
    return _table(n)[j][x]


@dataclass(frozen=True)
class SpectrumPoly:
    """A function on {0..n} held by its Krawtchouk coefficients."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be a natural number, got {self.n}")
        coeffs = tuple(as_rat(c) for c in self.coeffs)
        if len(coeffs) != self.n + 1:
            raise DomainError(f"expected {self.n + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x: int) -> Fraction:
        return evaluate_spectrum(self, x)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(evaluate_spectrum(self, x) for x in range(self.n + 1))

    @classmethod
    def delta(cls, n: int) -> "SpectrumPoly":
        """Spectrum of the indicator of distance 0 (all coefficients equal to one)."""
        return cls(n, (Fraction(1),) * (n + 1))


def evaluate_spectrum(p: SpectrumPoly, x: int) -> Fraction:
    _check_range(p.n, ("x", x))
    K = _table(p.n)
    total = sum((c * K[j][x] for j, c in enumerate(p.coeffs) if c), Fraction(0))
    return total / (1 << p.n)


def spectrum_of_values(n: int, values: Sequence) -> SpectrumPoly:
    if len(values) != n + 1:
        raise DomainError(f"expected {n + 1} values, got {len(values)}")
    vals = [as_rat(v) for v in values]
    K = _table(n)
    coeffs = []
    for j in range(n + 1):
        coeffs.append(sum((v * K[x][j] for x, v in enumerate(vals) if v), Fraction(0)))
    return SpectrumPoly(n, tuple(coeffs))


def fmt_rat(q: Fraction) -> str:
    """'p/q' with an explicit denominator, the serialization used everywhere."""
    q = as_rat(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {text!r}") from exc


def int_ratio_check(ratio: Fraction, length: int, what: str) -> int:
    """ratio * length as an integer, or DomainError when it is not integral."""
    prod = as_rat(ratio) * length
    if prod.denominator != 1:
        raise DomainError(f"{what}: {fmt_rat(as_rat(ratio))} * {length} = {fmt_rat(prod)} is not an integer")
    return prod.numerator


def weights(bits: int) -> int:
    return bin(bits).count("1")


def bits_to_int(bits: Iterable[int] | str) -> int:
    """Little-endian: element 0 of the sequence (or character 0 of the string) is bit 0."""
    value = 0
    for i, b in enumerate(bits):
        b = int(b)
        if b not in (0, 1):
            raise DomainError(f"bit vectors contain only 0/1, got {b}")
        value |= b << i
    return value


def int_to_bits(value: int, length: int) -> str:
    return "".join(str((value >> i) & 1) for i in range(length))
