from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from abmaps.errors import DomainError
from abmaps.exact import (SpectrumPoly, as_rat, bits_to_int, evaluate_spectrum, fmt_rat,
                          int_ratio_check, int_to_bits, krawtchouk, krawtchouk_sum,
                          krawtchouk_table, parse_rat, spectrum_of_values)


def test_krawtchouk_examples():
    assert krawtchouk(4, 1, 1) == 2
    assert krawtchouk(7, 0, 3) == 1
    assert krawtchouk(2, 2, 1) == -1


@pytest.mark.parametrize("args", [(3, 4, 0), (3, 0, 4), (3, -1, 0), (3, 0, -1)])
def test_krawtchouk_range(args):
    with pytest.raises(DomainError):
        krawtchouk(*args)


@given(st.integers(0, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(0, n))))
def test_recurrence_table_matches_defining_sum(njx):
    n, j, x = njx
    assert krawtchouk(n, j, x) == krawtchouk_sum(n, j, x)


@pytest.mark.parametrize("n", range(0, 11))
def test_low_rows_and_orthogonality(n):
    K = krawtchouk_table(n)
    for x in range(n + 1):
        assert K(0, x) == 1
        if n:
            assert K(1, x) == n - 2 * x
    for l in range(n + 1):
        for x in range(n + 1):
            s = sum(K(l, w) * K(w, x) for w in range(n + 1))
            assert s == (2 ** n if x == l else 0)


@pytest.mark.parametrize("n", range(1, 11))
def test_reflection(n):
    # K_{d+1}(w) = (-1)^w K_{n-d-1}(w)
    for d in range(n):
        for w in range(n + 1):
            assert krawtchouk(n, d + 1, w) == (-1) ** w * krawtchouk(n, n - d - 1, w)


def test_binomial_symmetry_identity():
    # C(n,j) K_x(j) = C(n,x) K_j(x), used to read dual certificates
    for n in range(9):
        for j in range(n + 1):
            for x in range(n + 1):
                assert comb(n, j) * krawtchouk(n, x, j) == comb(n, x) * krawtchouk(n, j, x)


def test_evaluate_spectrum_examples():
    p = SpectrumPoly(3, (1, 0, 0, 0))
    assert all(evaluate_spectrum(p, x) == Fraction(1, 8) for x in range(4))
    q = SpectrumPoly(2, (1, 1, 1))
    assert [q(x) for x in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("n", [1, 4, 7])
def test_orthogonality_roundtrip_gives_indicator(n):
    for l in range(n + 1):
        p = SpectrumPoly(n, tuple(krawtchouk(n, l, j) for j in range(n + 1)))
        assert p.values() == tuple(Fraction(int(x == l)) for x in range(n + 1))


def test_spectrum_of_values_examples():
    assert spectrum_of_values(5, [1, 0, 0, 0, 0, 0]).coeffs == (1,) * 6
    assert spectrum_of_values(5, [0] * 6).coeffs == (0,) * 6
    assert SpectrumPoly.delta(5) == spectrum_of_values(5, [1, 0, 0, 0, 0, 0])
    with pytest.raises(DomainError):
        spectrum_of_values(3, [1, 2])


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@settings(max_examples=60)
@given(st.integers(0, 10).flatmap(lambda n: st.lists(rationals, min_size=n + 1, max_size=n + 1)))
def test_transform_roundtrip(values):
    n = len(values) - 1
    assert spectrum_of_values(n, values).values() == tuple(values)
    p = SpectrumPoly(n, tuple(values))
    assert spectrum_of_values(n, p.values()) == p


def test_spectrum_length_checked():
    with pytest.raises(DomainError):
        SpectrumPoly(3, (1, 2))


def test_rationals():
    assert as_rat("3/6") == Fraction(1, 2)
    assert fmt_rat(Fraction(2)) == "2/1"
    assert parse_rat(" 7/21 ") == Fraction(1, 3)
    with pytest.raises(DomainError):
        as_rat(0.5)
    with pytest.raises(DomainError):
        parse_rat("x")
    assert int_ratio_check(Fraction(2, 3), 3, "a") == 2
    with pytest.raises(DomainError):
        int_ratio_check(Fraction(1, 2), 3, "a")


def test_bit_order_is_little_endian():
    assert bits_to_int("0111") == 0b1110
    assert bits_to_int([1, 0, 0]) == 1
    assert int_to_bits(6, 4) == "0110"
    with pytest.raises(DomainError):
        bits_to_int("012")
