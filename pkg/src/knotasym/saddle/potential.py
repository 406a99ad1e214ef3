"""Potential functions H and their saddle-point equations.

Every equation is stored as a pair ``(num, den)`` of rational expressions
chosen so that ``exp(x_i dH/dx_i) = num / den``; the saddle condition is
``num = den``.  Working with the exponentiated form removes the ``2 pi i``
ambiguity of the logarithmic form.  The longitude equation is stored as
``ell_expr = exp(m^2 dH/dm^2)`` and compared against a given ``ell``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from ..dilog import li2
from ..knots import KnotSpec

__all__ = [
    "ADMIT_TOL",
    "SaddleChain",
    "Equation",
    "h_twist",
    "h_torus",
    "h_trefoil",
    "h_value",
    "equations",
    "ell_expression",
    "residuals",
    "make_chain",
    "cut_distance",
    "gradient_discrepancy",
    "log_gradient",
    "branch_winding",
    "critical_im_h",
]

ADMIT_TOL = 1e-8
PI2_6 = math.pi ** 2 / 6


@dataclass(frozen=True)
class Equation:
    name: str
    num: complex
    den: complex

    @property
    def residual(self) -> float:
        # scaled so that equations with large terms are judged relatively
        return abs(self.num - self.den) / max(1.0, abs(self.num), abs(self.den))


@dataclass(frozen=True)
class SaddleChain:
    """Saddle data ``(x_0, ..., x_{|p|-1}; m^2; l)`` with ``x_{|p|} = 1`` implied."""

    x: tuple[complex, ...]
    m2: complex
    ell: complex | None = None
    residuals: tuple[float, ...] = field(default=())

    @property
    def admitted(self) -> bool:
        return bool(self.residuals) and max(self.residuals) < ADMIT_TOL

    @property
    def x0(self) -> complex:
        return self.x[0]


def _ext(x: Sequence[complex]) -> list[complex]:
    return [complex(v) for v in x] + [1 + 0j]


def _check_len(x: Sequence[complex], n: int) -> None:
    if len(x) != n:
        raise ValueError(f"expected {n} saddle variables, got {len(x)}")


def _common(x0: complex, m2: complex) -> complex:
    return li2(m2) + li2(1 / m2) - li2(x0 / m2) - li2(m2 * x0)


def h_twist(p: int, x: Sequence[complex], m2: complex) -> complex:
    """``H_{K_p}(x_0, ..., x_{|p|-1}, m^2)`` on principal branches."""
    if p == 0:
        raise ValueError("twist knot index p must be nonzero")
    k = abs(p)
    _check_len(x, k)
    xs = _ext(x)
    x0 = xs[0]
    squares = sum(cmath.log(xs[i] / x0) ** 2 for i in range(1, k))
    base = _common(x0, m2) - li2(x0)
    if p > 0:
        chain = sum(li2(xs[i] / xs[i + 1]) for i in range(k))
        return squares + base + chain - (k - 1) * PI2_6
    chain = sum(li2(xs[i + 1] / xs[i]) for i in range(k))
    return -cmath.log(x0) ** 2 - squares + base - chain + (k - 1) * PI2_6


def h_torus(p: int, x: Sequence[complex], m2: complex) -> complex:
    """``H`` for ``T(2, 2p+1)``."""
    if p < 1:
        raise ValueError("torus knot needs p >= 1")
    _check_len(x, p)
    xs = _ext(x)
    x0 = xs[0]
    squares = sum(cmath.log(xs[i] / x0) ** 2 for i in range(1, p))
    chain = sum(li2(xs[i] / xs[i + 1]) for i in range(p))
    return -p * cmath.log(m2) ** 2 + squares + _common(x0, m2) + chain - p * PI2_6


def h_trefoil(variant: str, x: complex, m2: complex) -> complex:
    """The three trefoil potentials, one per q-hypergeometric expression."""
    x, m2 = complex(x), complex(m2)
    if variant == "a":
        return -cmath.log(x) * cmath.log(m2) + li2(1 / m2) - li2(x / m2)
    if variant == "b":
        return -cmath.log(x) ** 2 + li2(1 / m2) + li2(m2) - li2(x / m2) - li2(m2 * x)
    if variant == "c":
        return (-cmath.log(m2) ** 2 + li2(1 / m2) + li2(m2) - li2(x / m2) - li2(m2 * x)
                + li2(x) - PI2_6)
    raise ValueError(f"unknown trefoil variant {variant!r}")


def h_value(family: KnotSpec | str, x: Sequence[complex], m2: complex) -> complex:
    """Dispatch: a :class:`KnotSpec` or a trefoil variant name ``'a'|'b'|'c'``."""
    if isinstance(family, str):
        _check_len(x, 1)
        return h_trefoil(family, x[0], m2)
    if family.kind == "twist":
        return h_twist(family.p, x, m2)
    return h_torus(family.p, x, m2)


def _prod_sq(xs: Sequence[complex], k: int) -> complex:
    out = 1 + 0j
    for i in range(1, k):
        out *= xs[i] * xs[i]
    return out


def equations(family: KnotSpec | str, x: Sequence[complex], m2: complex) -> list[Equation]:
    """Saddle equations ``x_i dH/dx_i = 0`` in rational (exponentiated) form."""
    m2 = complex(m2)
    if isinstance(family, str):
        _check_len(x, 1)
        t = complex(x[0])
        if family == "a":
            return [Equation("x", m2 - t, m2 * m2)]
        if family == "b":
            return [Equation("x", (m2 - t) * (1 - m2 * t), m2 * t * t)]
        if family == "c":
            return [Equation("x", (m2 - t) * (1 - m2 * t), m2 * (1 - t))]
        raise ValueError(f"unknown trefoil variant {family!r}")
    k = abs(family.p)
    _check_len(x, k)
    xs = _ext(x)
    x0 = xs[0]
    tri = (1 - x0 / m2) * (1 - m2 * x0)
    eqs: list[Equation] = []
    if family.kind == "twist" and family.p > 0:
        eqs.append(Equation("x0", x0 ** (2 * (k - 1)) * (1 - x0) * tri,
                            (1 - x0 / xs[1]) * _prod_sq(xs, k)))
        for i in range(1, k):
            eqs.append(Equation(f"x{i}", xs[i] ** 2 * (1 - xs[i - 1] / xs[i]),
                                x0 ** 2 * (1 - xs[i] / xs[i + 1])))
    elif family.kind == "twist":
        eqs.append(Equation("x0", _prod_sq(xs, k) * tri * (1 - x0),
                            x0 ** (2 * k) * (1 - xs[1] / x0)))
        for i in range(1, k):
            eqs.append(Equation(f"x{i}", x0 ** 2 * (1 - xs[i] / xs[i - 1]),
                                xs[i] ** 2 * (1 - xs[i + 1] / xs[i])))
    else:
        eqs.append(Equation("x0", x0 ** (2 * k - 2) * tri, (1 - x0 / xs[1]) * _prod_sq(xs, k)))
        for i in range(1, k):
            eqs.append(Equation(f"x{i}", xs[i] ** 2 * (1 - xs[i - 1] / xs[i]),
                                x0 ** 2 * (1 - xs[i] / xs[i + 1])))
    return eqs


def ell_expression(family: KnotSpec | str, x: Sequence[complex], m2: complex) -> complex:
    """``exp(m^2 dH/dm^2)``, i.e. the longitude eigenvalue the saddle fixes."""
    m2 = complex(m2)
    x0 = complex(x[0])
    if isinstance(family, str):
        if family == "a":
            return (m2 - 1) / (x0 * (m2 - x0))
        if family == "b":
            return (m2 * x0 - 1) / (m2 - x0)
        if family == "c":
            return (1 - m2 * x0) / (m2 * m2 * (x0 - m2))
        raise ValueError(f"unknown trefoil variant {family!r}")
    base = (1 - m2 * x0) / (x0 - m2)
    if family.kind == "torus":
        return base / m2 ** (2 * family.p)
    return base


def residuals(family: KnotSpec | str, chain: SaddleChain) -> list[float]:
    """One nonnegative residual per equation; the longitude equation comes first
    when ``chain.ell`` is set."""
    out = []
    if chain.ell is not None:
        out.append(Equation("ell", ell_expression(family, chain.x, chain.m2), chain.ell).residual)
    out.extend(eq.residual for eq in equations(family, chain.x, chain.m2))
    return out


def make_chain(family: KnotSpec | str, x: Sequence[complex], m2: complex,
               ell: complex | None = None) -> SaddleChain:
    bare = SaddleChain(tuple(complex(v) for v in x), complex(m2), ell)
    return SaddleChain(bare.x, bare.m2, ell, tuple(residuals(family, bare)))


def _li2_args(family: KnotSpec | str, x: Sequence[complex], m2: complex) -> tuple[list, list]:
    """(dilogarithm arguments, logarithm arguments) appearing in H."""
    m2 = complex(m2)
    if isinstance(family, str):
        t = complex(x[0])
        li = [1 / m2, t / m2]
        logs = [t, m2]
        if family in ("b", "c"):
            li += [m2, m2 * t]
        if family == "c":
            li.append(t)
        return li, logs
    xs = _ext(x)
    k = abs(family.p)
    x0 = xs[0]
    li = [m2, 1 / m2, x0 / m2, m2 * x0]
    if family.kind == "twist":
        li.append(x0)
    if family.kind == "twist" and family.p < 0:
        li += [xs[i + 1] / xs[i] for i in range(k)]
    else:
        li += [xs[i] / xs[i + 1] for i in range(k)]
    logs = [xs[i] / x0 for i in range(1, k)] + [x0, m2]
    return li, logs


def cut_distance(family: KnotSpec | str, x: Sequence[complex], m2: complex) -> float:
    """Distance from the nearest branch cut of any Li2 ([1, inf)) or log ((-inf, 0])."""
    li, logs = _li2_args(family, x, m2)
    best = math.inf
    for w in li:
        best = min(best, abs(w.imag) if w.real >= 1 else abs(w - 1))
    for w in logs:
        best = min(best, abs(w.imag) if w.real <= 0 else abs(w))
    return best


def log_gradient(family: KnotSpec | str, x: Sequence[complex], m2: complex,
                 step: float = 1e-6) -> list[complex]:
    """Central differences of H in log coordinates: ``x_i dH/dx_i`` for every
    saddle variable, then ``m^2 dH/dm^2`` last."""
    x = [complex(v) for v in x]
    m2 = complex(m2)
    f, g = math.exp(step), math.exp(-step)
    out = []
    for i in range(len(x)):
        up, dn = list(x), list(x)
        up[i] *= f
        dn[i] *= g
        out.append((h_value(family, up, m2) - h_value(family, dn, m2)) / (2 * step))
    out.append((h_value(family, x, m2 * f) - h_value(family, x, m2 * g)) / (2 * step))
    return out


def gradient_discrepancy(family: KnotSpec | str, x: Sequence[complex], m2: complex,
                         step: float = 1e-6) -> float:
    """Max relative gap between ``exp`` of central finite differences of H and
    the rational forms (``num/den`` per variable, ``ell_expression`` for m^2)."""
    grad = log_gradient(family, x, m2, step)
    targets = [eq.num / eq.den for eq in equations(family, x, m2)]
    targets.append(ell_expression(family, x, m2))
    return max(abs(cmath.exp(d) - t) / abs(t) for d, t in zip(grad, targets))


def branch_winding(family: KnotSpec | str, x: Sequence[complex], m2: complex,
                   step: float = 1e-6, tol: float = 1e-5) -> list[int]:
    """Integers ``n_i`` with ``x_i dH/dx_i = 2 pi i n_i`` at a saddle (principal
    branches).  Raises ValueError when the point is not a saddle."""
    grad = log_gradient(family, x, m2, step)[:-1]
    out = []
    for d in grad:
        n = round(d.imag / (2 * math.pi))
        if abs(d - 2j * math.pi * n) > tol:
            raise ValueError("point is not a saddle of H: gradient not in 2 pi i Z")
        out.append(n)
    return out


def critical_im_h(family: KnotSpec | str, x: Sequence[complex], m2: complex) -> float:
    """Branch-independent ``Im H`` at a saddle with ``|m^2| = 1``: principal
    ``Im H`` minus ``2 pi sum n_i log|x_i|`` for the windings ``n_i``."""
    n = branch_winding(family, x, m2)
    corr = sum(ni * math.log(abs(complex(xi))) for ni, xi in zip(n, x))
    return h_value(family, x, m2).imag - 2 * math.pi * corr
