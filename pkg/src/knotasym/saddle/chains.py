"""Saddle chains built from x_0 through the C_k recursions, and the
cross-check against the A-polynomial."""

from __future__ import annotations

import cmath
import random
from typing import Sequence

import mpmath

from ..apoly import ab_pair, apoly_twist, _mp_eval
from ..exactpoly import RootFindingError, up_roots
from ..knots import KnotSpec
from ..report import Check, Report
from .potential import ADMIT_TOL, SaddleChain, make_chain

__all__ = [
    "ChainPoleError",
    "x0_closed_form",
    "c_values",
    "c_top",
    "chain_from_x0",
    "crosscheck_apoly_saddle",
    "torus_bridge_check",
    "generic_m_samples",
    "trefoil_saddle",
    "trefoil_check",
]


class ChainPoleError(ZeroDivisionError):
    """The C_k recursion hit a zero denominator."""

    def __init__(self, k: int):
        super().__init__(f"C recursion has a pole at index {k}")
        self.k = k


def _div(a: complex, b: complex, k: int) -> complex:
    if b == 0:
        raise ChainPoleError(k)
    return a / b


def x0_closed_form(knot: KnotSpec, ell: complex, m2: complex) -> complex:
    """x_0 as a function of (l, m^2) on the saddle."""
    ell, m2 = complex(ell), complex(m2)
    if knot.kind == "twist":
        num, den = 1 + ell * m2, ell + m2
    else:
        p = knot.p
        num = 1 + ell * m2 ** (2 * p + 1)
        den = m2 * (1 + ell * m2 ** (2 * p - 1))
    if den == 0:
        raise ZeroDivisionError("x0 closed form has a pole at this (l, m^2)")
    return num / den


def c_values(knot: KnotSpec, x: complex, m2: complex, upto: int | None = None) -> list[complex]:
    """``[C_0, C_1, ..., C_n]`` at ``x`` with ``n = upto or |p|``.

    For negative twist knots entry ``k`` holds ``C_{-k}``.
    """
    x, m2 = complex(x), complex(m2)
    n = abs(knot.p) if upto is None else upto
    c = [_div(1, x, 0)]
    if n == 0:
        return c
    if knot.kind == "twist" and knot.p > 0:
        c.append(_div(1 - (1 - x) * (1 - m2 * x) * (1 - x / m2), x, 1))
        for k in range(2, n + 1):
            a, b = c[-1], c[-2]
            c.append(a - _div(1, a, k) + _div(1, b, k))
    elif knot.kind == "twist":
        c.append(_div(m2 * x, m2 * x * x - (1 - x) * (1 - m2 * x) * (m2 - x), 1))
        for k in range(2, n + 1):
            a, b = c[-1], c[-2]
            c.append(_div(a, 1 - a * (a - b), k))
    else:
        g = (1 - m2 * x) * (m2 - x) / m2
        prod = 1 + 0j
        for k in range(1, n + 1):
            c.append((1 - _div(g, prod * prod, k)) * c[-1])
            prod *= c[-1]
    return c


def c_top(knot: KnotSpec, x0: complex, m2: complex) -> complex:
    """``C_{|p|}(x_0)``; equals 1 on a saddle."""
    return c_values(knot, x0, m2)[-1]


def chain_from_x0(knot: KnotSpec, x0: complex, m2: complex,
                  ell: complex | None = None) -> SaddleChain:
    """Chain ``x_{|p|-k} = x_0 C_k(x_0)`` with residuals filled in.

    ``ell`` defaults to the value the longitude equation assigns to ``x_0``.
    """
    n = abs(knot.p)
    c = c_values(knot, x0, m2, n - 1)
    x = [complex(x0)] + [0j] * (n - 1)
    for k in range(1, n):
        x[n - k] = x0 * c[k]
    if ell is None:
        from .potential import ell_expression
        ell = ell_expression(knot, x, m2)
    return make_chain(knot, x, m2, ell)


def generic_m_samples(n: int, seed: int = 0) -> list[complex]:
    """Random m in an annulus, away from |m| = 1 and the real axis."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        r = rng.uniform(0.6, 1.6)
        if abs(r - 1) < 0.1:
            continue
        th = rng.uniform(0.15, cmath.pi - 0.15) * rng.choice((1, -1))
        out.append(cmath.rect(r, th))
    return out


def _polish_ell(poly, m: complex, ell: complex, steps: int = 6) -> complex:
    """Newton steps on ``A(., m)`` in 50-digit arithmetic."""
    coeffs = poly.coefficients_in_l(m)
    with mpmath.workdps(50):
        cs = [mpmath.mpc(c) for c in reversed(coeffs)]
        dcs = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
        z = mpmath.mpc(ell)
        for _ in range(steps):
            f = mpmath.polyval(cs, z)
            d = mpmath.polyval(dcs, z)
            if d == 0:
                break
            z -= f / d
        return complex(z)


def _twist_crosscheck(p: int, m: complex, rep: Report, bridge_tol: float) -> None:
    m = complex(m)
    m2 = m * m
    knot = KnotSpec("twist", p)
    A = apoly_twist(p)
    coeffs = A.coefficients_in_l(m)
    try:
        roots = up_roots(coeffs)
    except RootFindingError as exc:
        roots = exc.best
        rep.notes.append(f"p={p} m={m}: root finder fell back to best iterate")
    polished = [_polish_ell(A, m, complex(raw)) for raw in roots]
    sep = min((abs(a - b) for i, a in enumerate(polished) for b in polished[:i]), default=1.0)
    rep.add(Check(f"twist p={p}: polished l-roots are distinct", sep > 1e-8,
                  {"m": str(m), "count": len(polished), "min_separation": sep}))
    for ell in polished:
        x0 = x0_closed_form(knot, ell, m2)
        try:
            chain = chain_from_x0(knot, x0, m2, ell)
            ctop = c_top(knot, x0, m2)
        except (ChainPoleError, ZeroDivisionError) as exc:
            rep.notes.append(f"p={p} m={m} l={ell}: excluded, {exc}")
            continue
        gap = abs(ctop - 1)
        rep.add(Check(f"twist p={p}: C_p(x0) = 1 and residuals", gap < ADMIT_TOL and chain.admitted,
                      {"m": str(m), "ell": str(ell), "c_gap": gap,
                       "max_residual": max(chain.residuals)}))
    # bridge at non-root l: 1 - C_p(x0) = (1-l)(1-m^2) A_p/B_p
    pair = ab_pair(p)
    rng = random.Random(hash((p, round(m.real, 9), round(m.imag, 9))) & 0xFFFF)
    worst = 0.0
    for _ in range(3):
        ell = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-3, 3))
        with mpmath.workdps(50):
            l_mp, m_mp = mpmath.mpc(ell), mpmath.mpc(m)
            m2_mp = m_mp * m_mp
            x0 = (1 + l_mp * m2_mp) / (l_mp + m2_mp)
            cs = _mp_c_values(knot, x0, m2_mp)
            lhs = 1 - cs[-1]
            rhs = (1 - l_mp) * (1 - m2_mp) * _mp_eval(pair.A, l_mp, m_mp) / _mp_eval(pair.B, l_mp, m_mp)
            worst = max(worst, float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), mpmath.mpf(1e-300))))
    rep.add(Check(f"twist p={p}: bridge 1 - C_p = (1-l)(1-m^2) A_p/B_p", worst < bridge_tol,
                  {"m": str(m), "max_rel_err": worst}))


def _mp_c_values(knot: KnotSpec, x, m2) -> list:
    """Extended-precision copy of :func:`c_values` (mpmath inputs)."""
    n = abs(knot.p)
    c = [1 / x]
    if knot.kind == "twist" and knot.p > 0:
        c.append((1 - (1 - x) * (1 - m2 * x) * (1 - x / m2)) / x)
        for _ in range(2, n + 1):
            a, b = c[-1], c[-2]
            c.append(a - 1 / a + 1 / b)
    elif knot.kind == "twist":
        c.append(m2 * x / (m2 * x * x - (1 - x) * (1 - m2 * x) * (m2 - x)))
        for _ in range(2, n + 1):
            a, b = c[-1], c[-2]
            c.append(a / (1 - a * (a - b)))
    else:
        g = (1 - m2 * x) * (m2 - x) / m2
        prod = mpmath.mpf(1)
        for _ in range(1, n + 1):
            c.append((1 - g / (prod * prod)) * c[-1])
            prod *= c[-1]
    return c[: n + 1]


def torus_bridge_check(p: int, m: complex, rep: Report, bridge_tol: float = 1e-9,
                       n_ell: int = 3) -> None:
    """Torus route: bridge identity at generic l plus the x_0 = 0 degeneration
    at the A-polynomial root ``l = -m^(-4p-2)``."""
    knot = KnotSpec("torus", p)
    m = complex(m)
    rng = random.Random(p * 1000 + 7)
    worst = 0.0
    with mpmath.workdps(50):
        m_mp = mpmath.mpc(m)
        m2_mp = m_mp * m_mp
        for _ in range(n_ell):
            l_mp = mpmath.mpc(cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-3, 3)))
            x0 = (1 + l_mp * m2_mp ** (2 * p + 1)) / (m2_mp * (1 + l_mp * m2_mp ** (2 * p - 1)))
            lhs = 1 - _mp_c_values(knot, x0, m2_mp)[-1]
            rhs = (1 - l_mp) * (1 - m2_mp) / (1 + l_mp * m2_mp)
            worst = max(worst, float(abs(lhs - rhs) / max(abs(lhs), abs(rhs))))
    rep.add(Check(f"torus p={p}: bridge 1 - C_p = (1-l)(1-m^2)/(1+l m^2)", worst < bridge_tol,
                  {"m": str(m), "max_rel_err": worst}))
    ell = -(m * m) ** (-(2 * p + 1))
    x0 = x0_closed_form(knot, ell, m * m)
    rep.add(Check(f"torus p={p}: A-polynomial root gives x0 = 0", abs(x0) < 1e-12,
                  {"m": str(m), "ell": str(ell), "x0": abs(x0)}))


def crosscheck_apoly_saddle(knot: KnotSpec | int, m: complex | Sequence[complex],
                            *, bridge_tol: float = 1e-9) -> Report:
    """Every A-polynomial root in l yields an admitted saddle chain (twist),
    and the bridge identity holds at non-root l (twist and torus)."""
    if isinstance(knot, int):
        knot = KnotSpec("twist", knot)
    ms = [m] if isinstance(m, (int, float, complex)) else list(m)
    rep = Report(f"crosscheck {knot}")
    for mv in ms:
        if abs(complex(mv) ** 2 - 1) < 1e-6:
            raise ValueError("crosscheck needs m^2 != 1")
        if knot.kind == "twist":
            _twist_crosscheck(knot.p, mv, rep, bridge_tol)
        else:
            torus_bridge_check(knot.p, mv, rep, bridge_tol)
    return rep


def trefoil_saddle(variant: str, ell: complex, m2: complex) -> complex:
    """Saddle x of the trefoil potentials; variant ``a`` does not depend on l."""
    ell, m2 = complex(ell), complex(m2)
    if variant == "a":
        return (1 - m2) * m2
    if variant == "b":
        return (1 + ell * m2) / (m2 + ell)
    if variant == "c":
        return (1 + ell * m2 ** 3) / (m2 * (1 + ell * m2))
    raise ValueError(f"unknown trefoil variant {variant!r}")


def trefoil_check(ms: Sequence[complex], tol: float = ADMIT_TOL) -> Report:
    """Each variant's saddle satisfies its equations and lands on l m^6 + 1 = 0."""
    rep = Report("trefoil saddles")
    for variant in "abc":
        worst = 0.0
        for m in ms:
            m2 = complex(m) ** 2
            ell = -m2 ** -3
            x = trefoil_saddle(variant, ell, m2)
            chain = make_chain(variant, [x], m2, ell)
            worst = max(worst, max(chain.residuals))
        rep.add(Check(f"trefoil ({variant}) saddle at l = -m^-6", worst < tol,
                      {"samples": len(ms), "max_residual": worst}))
    return rep
