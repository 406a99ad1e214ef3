import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from knotasym.dilog import (
    OCTAHEDRON_VOLUME, bloch_wigner, li2, li2_with_error, octahedron_sum, pentagon_check,
)

CATALAN = 0.9159655941772190


def test_special_values():
    assert li2(0) == 0
    assert li2(1) == pytest.approx(math.pi ** 2 / 6, abs=1e-15)
    assert abs(li2(1j) - complex(-math.pi ** 2 / 48, CATALAN)) < 1e-14


def test_error_estimate_is_small():
    res = li2_with_error(0.3 + 0.4j)
    assert res.est_error < 1e-13
    assert res.value == li2(0.3 + 0.4j)


def test_cut_is_approached_from_below():
    z = 3.0
    below = complex(mpmath.polylog(2, mpmath.mpc(z, -1e-30)))
    assert abs(li2(z) - below) < 1e-13
    assert li2(z).imag < 0


finite = st.floats(-6, 6, allow_nan=False)


@given(finite, finite)
@settings(max_examples=300, deadline=None)
def test_li2_matches_mpmath(a, b):
    z = complex(a, b)
    if b == 0 and a > 1:
        return
    ref = complex(mpmath.polylog(2, z))
    assert abs(li2(z) - ref) <= 1e-12 * max(1, abs(ref))


def test_bloch_wigner_values():
    assert bloch_wigner(0.37) == 0
    assert bloch_wigner(-4.0) == 0
    assert bloch_wigner(1j) == pytest.approx(CATALAN, abs=1e-15)
    assert abs(4 * bloch_wigner(1j) - OCTAHEDRON_VOLUME) < 1e-12
    assert bloch_wigner(1 + 1j) == pytest.approx(bloch_wigner(1j), abs=1e-14)


def test_functional_equations():
    rng = random.Random(5)
    for _ in range(100):
        z = cmath.rect(rng.uniform(0.05, 0.95), rng.uniform(-3, 3))
        refl = li2(z) + li2(1 - z) - (math.pi ** 2 / 6 - cmath.log(z) * cmath.log(1 - z))
        assert abs(refl) < 1e-12
        w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert abs(bloch_wigner(1 / w) + bloch_wigner(w)) < 1e-12
        assert abs(bloch_wigner(w.conjugate()) + bloch_wigner(w)) < 1e-12


def test_pentagon_identity():
    assert pentagon_check(0.6) == 0
    assert pentagon_check(1j) < 1e-14
    assert pentagon_check(0.3 + 0.7j) < 1e-10


def test_octahedron_sums():
    first = 3 * bloch_wigner(2j) + bloch_wigner(complex(0.25, 0.25) ** 2)
    assert octahedron_sum(1, "+") == pytest.approx(first, abs=1e-15)
    for branch in "+-":
        assert abs(octahedron_sum(10_000, branch) - OCTAHEDRON_VOLUME) < 5e-3
    with pytest.raises(ValueError):
        octahedron_sum(0)
    with pytest.raises(ValueError):
        octahedron_sum(5, "x")
