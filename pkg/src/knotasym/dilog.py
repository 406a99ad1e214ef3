"""Complex dilogarithm and Bloch-Wigner function.

``li2`` maps its argument into ``|z| <= 1, Re z <= 1/2`` with the inversion
and reflection formulas and sums the Bernoulli series in
``u = -log(1 - z)`` there.  Principal branch, cut on ``[1, inf)``; a point
exactly on the cut takes the limit from below (``Im z -> 0-``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DilogResult",
    "li2",
    "li2_with_error",
    "bloch_wigner",
    "pentagon_check",
    "octahedron_sum",
    "OCTAHEDRON_VOLUME",
]

PI2_6 = math.pi ** 2 / 6

# 4 D(i): volume of the regular ideal octahedron.
OCTAHEDRON_VOLUME = 3.66386237670887606


def _bernoulli_coefficients(count: int) -> list[float]:
    """``B_n / (n+1)!`` for n = 0..count-1 (exact rationals, rounded once)."""
    b = [Fraction(1)]
    for n in range(1, count):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * b[k]
        b.append(-acc / (n + 1))
    return [float(b[n] / math.factorial(n + 1)) for n in range(count)]


_BCOEF = _bernoulli_coefficients(40)


@dataclass(frozen=True)
class DilogResult:
    value: complex
    est_error: float


def _series(z: complex) -> tuple[complex, float]:
    # |z| <= 1 and Re z <= 1/2 here, so |u| < 1.8 and terms shrink like (|u|/2pi)^n.
    u = -cmath.log(1 - z)
    total = 0j
    upow = u
    last = 0.0
    for n, c in enumerate(_BCOEF):
        if c:
            term = c * upow
            total += term
            last = abs(term)
        upow *= u
    return total, last + 4e-16 * (1 + abs(total))


def _li2(z: complex) -> tuple[complex, float]:
    z = complex(z)
    if z.imag == 0:
        z = complex(z.real, 0.0)
        x = z.real
        if x == 0:
            return 0j, 0.0
        if x == 1:
            return complex(PI2_6), 0.0
        if x > 1:
            inv, err = _li2(1 / x)
            lx = math.log(x)
            value = math.pi ** 2 / 3 - 0.5 * lx * lx - inv.real - 1j * math.pi * lx
            return complex(value), err + 4e-16 * abs(value)
    extra = 0j
    sign = 1
    err = 0.0
    if abs(z) > 1:
        lg = cmath.log(-z)
        extra = -PI2_6 - 0.5 * lg * lg
        sign = -1
        z = 1 / z
        err += 4e-16 * abs(extra)
    if z.real > 0.5:
        w = 1 - z
        val, e = _series(w)
        base = -val + PI2_6 - cmath.log(z) * cmath.log(w)
        err += e + 4e-16 * abs(base)
    else:
        base, e = _series(z)
        err += e
    return sign * base + extra, err


def li2_with_error(z: complex) -> DilogResult:
    """Principal ``Li_2(z)`` with an a-posteriori error estimate."""
    value, err = _li2(z)
    return DilogResult(value, err)


def li2(z: complex) -> complex:
    """Principal ``Li_2(z)``; on ``(1, inf)`` returns the limit from below."""
    return _li2(z)[0]


def bloch_wigner(z: complex) -> float:
    """``D(z) = Im Li_2(z) + arg(1 - z) log|z|``; zero on the real axis."""
    z = complex(z)
    if z.imag == 0:
        return 0.0
    return li2(z).imag + cmath.phase(1 - z) * math.log(abs(z))


def pentagon_check(z: complex) -> float:
    """Residual of ``D(z^2) = 2 (D(z) - D(z+1))``."""
    z = complex(z)
    return abs(bloch_wigner(z * z) - 2 * (bloch_wigner(z) - bloch_wigner(z + 1)))


def octahedron_sum(terms: int, branch: str = "+") -> float:
    """Partial sum converging to ``4 D(i)``.

    ``+``: ``3 D(2i) + sum_k D((k + 1/4 + i/4)^2)``;
    ``-``: ``3 D(2i) - sum_k D((-k - 3/4 + i/4)^2)``, both for ``k < terms``.
    """
    if terms < 1:
        raise ValueError("octahedron_sum needs terms >= 1")
    if branch == "+":
        parts = [bloch_wigner(complex(k + 0.25, 0.25) ** 2) for k in range(terms)]
        sign = 1
    elif branch == "-":
        parts = [bloch_wigner(complex(-k - 0.75, 0.25) ** 2) for k in range(terms)]
        sign = -1
    else:
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    return 3 * bloch_wigner(2j) + sign * math.fsum(parts)
