import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from knotasym.apoly import named_poly
from knotasym.exactpoly import (
    BivarPoly, L, M, PolyParseError, QLaurent, UniPoly, backward_error, up_roots,
)
from knotasym.exactpoly._dense import dense_mul

small_int = st.integers(-20, 20)
bivar_terms = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 6)), small_int, max_size=6)
laurent_terms = st.dictionaries(st.integers(-8, 8), small_int, max_size=6)


def bivar(terms):
    out = BivarPoly()
    for (i, j), c in terms.items():
        out = out + c * L ** i * M ** j
    return out


def laurent(terms):
    out = QLaurent()
    for e, c in terms.items():
        out = out + c * QLaurent.monomial(e)
    return out


def test_difference_of_squares():
    assert (L + M) * (L - M) == L ** 2 - M ** 2
    assert str((L + M) * (L - M)) == "l^2 - m^2"


def test_binomial_cube():
    cube = (1 + L * M ** 2) ** 3
    assert sorted(cube.terms.values()) == [1, 1, 3, 3]


def test_evaluation_examples():
    assert abs((1 + L * M ** 6).evaluate(-(0.7 ** -6), 0.7)) < 1e-12
    assert (L + M ** 6).evaluate(1, 1) == 2
    assert named_poly("Z").evaluate(1, 1) == 4
    assert named_poly("X").evaluate(1, 1) == 8


def test_zero_coefficients_are_not_stored():
    a = L + M
    assert (a - a).terms == {}
    assert str(a - a) == "0"


@given(bivar_terms, bivar_terms, bivar_terms)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(ta, tb, tc):
    a, b, c = bivar(ta), bivar(tb), bivar(tc)
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == BivarPoly()


@given(bivar_terms)
@settings(max_examples=60, deadline=None)
def test_bivar_text_round_trip(t):
    a = bivar(t)
    assert BivarPoly.parse(str(a)) == a


@given(laurent_terms, laurent_terms)
@settings(max_examples=60, deadline=None)
def test_laurent_round_trip_and_inversion(ta, tb):
    a, b = laurent(ta), laurent(tb)
    assert QLaurent.parse(str(a)) == a
    assert a.invert_q().invert_q() == a
    assert (a * b).invert_q() == a.invert_q() * b.invert_q()


@given(laurent_terms, laurent_terms)
@settings(max_examples=40, deadline=None)
def test_divexact_inverts_multiplication(ta, tb):
    a, b = laurent(ta), laurent(tb)
    if b == QLaurent():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_remainder():
    with pytest.raises(ArithmeticError):
        QLaurent.parse("q + 1").divexact(QLaurent.parse("q - 1"))


@pytest.mark.parametrize("bad", ["l +", "l^^2", "x + 1", "3*"])
def test_parse_errors(bad):
    with pytest.raises(PolyParseError):
        BivarPoly.parse(bad)


@given(st.lists(st.integers(-10 ** 40, 10 ** 40), min_size=1, max_size=120),
       st.lists(st.integers(-10 ** 40, 10 ** 40), min_size=1, max_size=120))
@settings(max_examples=30, deadline=None)
def test_packed_multiplication_matches_schoolbook(a, b):
    ref = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            ref[i + j] += x * y
    while ref and ref[-1] == 0:
        ref.pop()
    got = list(dense_mul(a, b))
    while got and got[-1] == 0:
        got.pop()
    assert got == ref


def test_roots_examples():
    r = sorted(up_roots(UniPoly((1, 0, 1))), key=lambda z: z.imag)
    assert abs(r[0] + 1j) < 1e-12 and abs(r[1] - 1j) < 1e-12
    r = up_roots(UniPoly((1, 1, 1)))
    want = [complex(-0.5, s * math.sqrt(3) / 2) for s in (1, -1)]
    assert all(min(abs(x - w) for x in r) < 1e-12 for w in want)
    r = up_roots(UniPoly((1, 2, 1, 1)))
    assert min(abs(x - complex(-0.21508, 1.30714)) for x in r) < 1e-5


@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=2, max_size=9))
@settings(max_examples=40, deadline=None)
def test_roots_reexpand(coeffs):
    c = [complex(a, b) for a, b in coeffs]
    if abs(c[-1]) < 0.1:
        return
    roots = up_roots(c)
    back = np.poly(roots)[::-1] * c[-1]
    scale = max(abs(x) for x in c)
    assert np.max(np.abs(back - np.array(c))) <= 1e-8 * scale


def test_real_polynomial_roots_pair_up():
    p = UniPoly((3, -1, 4, 1, -5, 9, 2))
    roots = up_roots(p)
    for r in roots:
        assert min(abs(r.conjugate() - s) for s in roots) < 1e-8
    assert max(backward_error(p, r) for r in roots) < 1e-14


def test_gaussian_evaluation_is_exact():
    p = UniPoly((1, 1, 1))
    assert p.evaluate_gaussian(0, 2) == (-3, 2)
