"""The integer polynomials V_k(z) whose zeros give the m^2 = 1 saddle points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import mpmath
import numpy as np

from ..exactpoly import UniPoly, backward_error, up_roots
from ..report import Check, Report

__all__ = [
    "VPoly",
    "vpoly",
    "v_values",
    "v_evaluator",
    "vroots",
    "vzeros",
    "VZero",
    "vpoly_identity_suite",
]


@dataclass(frozen=True)
class VPoly:
    k: int
    poly: UniPoly

    def __str__(self) -> str:
        return str(self.poly)


@lru_cache(maxsize=None)
def _vcoeffs(k: int) -> tuple[int, ...]:
    if k == 0:
        return (1,)
    if k > 0:
        return tuple(comb(k + j // 2, j) for j in range(2 * k + 1))
    n = -k
    return (1,) + tuple(comb(n + (j - 1) // 2, j) for j in range(1, 2 * n))


def vpoly(k: int) -> VPoly:
    """``V_k`` from its binomial-sum definition (``V_0 = 1``)."""
    return VPoly(k, UniPoly(_vcoeffs(k)))


def v_values(k: int, z):
    """``(V_j(z), V_j'(z))`` for ``j = 0, s, 2s, ..., k`` with ``s = sign(k)``,
    via the 3-term recurrence.  Works for scalars and numpy arrays.

    The recurrence is far better conditioned than the monomial expansion,
    whose coefficients reach ~1e20 at k = 50.
    """
    one = z * 0 + 1
    zero = z * 0
    out = [(one, zero)]
    if k == 0:
        return out
    if k > 0:
        cur, dcur = 1 + z + z * z, 1 + 2 * z
    else:
        cur, dcur = 1 + z, one
    out.append((cur, dcur))
    prev, dprev = one, zero
    w = z * z + 2
    for _ in range(abs(k) - 1):
        nxt = w * cur - prev
        dnxt = 2 * z * cur + w * dcur - dprev
        prev, dprev, cur, dcur = cur, dcur, nxt, dnxt
        out.append((cur, dcur))
    return out


def v_evaluator(k: int):
    """Evaluator ``z -> (V_k(z), V_k'(z))`` for :func:`up_roots`."""
    def ev(z):
        return v_values(k, z)[-1]
    return ev


@lru_cache(maxsize=None)
def _roots_cached(k: int) -> tuple[complex, ...]:
    return tuple(complex(r) for r in up_roots(vpoly(k).poly, evaluator=v_evaluator(k)))


def vroots(k: int) -> list[complex]:
    """All ``2k`` (or ``2|k|-1``) zeros of ``V_k``, sorted by (real, imag)."""
    if k == 0:
        return []
    return sorted(_roots_cached(k), key=lambda r: (round(r.real, 12), r.imag))


@dataclass(frozen=True)
class VZero:
    k: int
    root: complex
    residual: float


def vzeros(k_list, upper_half: bool = False) -> list[VZero]:
    """Zeros of each ``V_k`` with a backward-error certificate per root."""
    rows = []
    for k in k_list:
        if k == 0:
            raise ValueError("vzeros needs nonzero k")
        poly = vpoly(k).poly
        for r in vroots(k):
            if upper_half and r.imag <= 0:
                continue
            rows.append(VZero(k, r, backward_error(poly, r)))
    return rows


def _hyp_forms(k: int, z) -> mpmath.mpc:
    w = -z * z / 4
    if k > 0:
        return mpmath.hyp2f1(-k, k + 1, 0.5, w) + k * z * mpmath.hyp2f1(1 - k, k + 1, 1.5, w)
    n = -k
    return mpmath.hyp2f1(1 - n, n, 0.5, w) + n * z * mpmath.hyp2f1(1 - n, n + 1, 1.5, w)


def vpoly_identity_suite(k_max: int, *, n_random: int = 20, seed: int = 0,
                         hyp_tol: float = 1e-9) -> Report:
    """Exact and numeric identities of ``V_k`` for ``|k| <= k_max``."""
    if k_max < 1:
        raise ValueError("k_max must be positive")
    rep = Report("vpoly")
    V = {k: vpoly(k).poly for k in range(-k_max - 2, k_max + 3)}
    z = UniPoly((0, 1))
    w = z * z + 2
    z3 = z ** 3

    def record(name: str, bad: list[int]) -> None:
        rep.add(Check(name, not bad, {"k_max": k_max, "failing_k": bad}))

    record("V_{p+1} - (z^2+2) V_p + V_{p-1} = 0",
           [p for p in range(1, k_max + 1) if V[p + 1] - w * V[p] + V[p - 1] != 0])
    record("V_{-p-1} - (z^2+2) V_{-p} + V_{-p+1} = 0",
           [p for p in range(1, k_max + 1) if V[-p - 1] - w * V[-p] + V[-p + 1] != 0])
    record("V_p - V_{p-1} = z V_{-p}",
           [p for p in range(1, k_max + 1) if V[p] - V[p - 1] != z * V[-p]])
    record("V_{-p-1} - V_{-p} = z V_p",
           [p for p in range(0, k_max + 1) if V[-p - 1] - V[-p] != z * V[p]])
    record("V_{k+1} V_{k-1} - V_k^2 = -z^3",
           [k for k in range(1, k_max + 1) if V[k + 1] * V[k - 1] - V[k] * V[k] != -z3])
    record("V_{-k-1} V_{-k+1} - V_{-k}^2 = z^3",
           [k for k in range(1, k_max + 1) if V[-k - 1] * V[-k + 1] - V[-k] * V[-k] != z3])
    record("V_k(0) = 1", [k for k in V if V[k].coeffs[0] != 1])
    record("deg V_k = 2k, deg V_-k = 2k-1",
           [k for k in range(1, k_max + 1)
            if V[k].degree != 2 * k or V[-k].degree != 2 * k - 1])

    sgn = lambda p: -1 if p % 2 else 1
    record("V_p(2i) = (-1)^p (2p+1 - 2p i)",
           [p for p in range(1, k_max + 1)
            if V[p].evaluate_gaussian(0, 2) != (sgn(p) * (2 * p + 1), sgn(p) * (-2 * p))])
    record("V_-p(-2i) = (-1)^p (-2p+1 + 2p i)",
           [p for p in range(1, k_max + 1)
            if V[-p].evaluate_gaussian(0, -2) != (sgn(p) * (1 - 2 * p), sgn(p) * 2 * p)])

    rng = random.Random(seed)
    pts = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(n_random)]
    worst = 0.0
    bad = []
    with mpmath.workdps(40):
        for k in [k for k in range(-k_max, k_max + 1) if k]:
            coeffs = _vcoeffs(k)
            for pt in pts:
                zz = mpmath.mpc(pt)
                exact = mpmath.polyval(list(reversed(coeffs)), zz)
                err = float(abs(_hyp_forms(k, zz) - exact) / max(1, abs(exact)))
                worst = max(worst, err)
                if err > hyp_tol and k not in bad:
                    bad.append(k)
    rep.add(Check("V_k as 2F1 sum (numeric)", not bad,
                  {"k_max": k_max, "points": n_random, "max_rel_err": worst, "failing_k": bad}))
    return rep


def numpy_roots_oracle(k: int) -> np.ndarray:
    """Independent reference roots for small degrees."""
    return np.roots(list(reversed(_vcoeffs(k))))
