"""All complex roots of a univariate polynomial by Aberth iteration.

The polynomial is never deflated: every sweep re-evaluates the original
coefficients (or a caller-supplied evaluator, e.g. a three-term recurrence
that is better conditioned than the monomial basis).
"""

from __future__ import annotations

import logging
from numbers import Integral
from typing import Callable, Sequence

import mpmath
import numpy as np

from .polys import UniPoly

__all__ = ["RootFindingError", "up_roots", "horner_evaluator", "backward_error"]

log = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


class RootFindingError(ArithmeticError):
    """Aberth iteration hit its cap; carries the best iterate and its residual."""

    def __init__(self, message: str, best: list[complex], residual: float):
        super().__init__(message)
        self.best = best
        self.residual = residual


def _as_coeffs(p) -> np.ndarray:
    raw = p.coeffs if isinstance(p, UniPoly) else p
    c = np.array([complex(x) for x in raw], dtype=complex)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def horner_evaluator(coeffs: np.ndarray) -> Evaluator:
    """Vectorized value and derivative in the monomial basis (ascending coeffs)."""

    def ev(z: np.ndarray):
        p = np.zeros_like(z)
        dp = np.zeros_like(z)
        for c in coeffs[::-1]:
            dp = dp * z + p
            p = p * z + c
        return p, dp

    return ev


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    lead = c[-1]
    center = -c[-2] / (n * lead)
    # Fujiwara-type bound on root moduli about the origin.
    mags = [abs(c[n - k] / lead) ** (1.0 / k) for k in range(1, n + 1)]
    radius = 2.0 * max(mags) if mags else 1.0
    radius = max(radius - abs(center), 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return center + radius * np.exp(1j * angles)


def up_roots(
    p: UniPoly | Sequence[complex],
    *,
    evaluator: Evaluator | None = None,
    max_iter: int = 500,
    rel_tol: float = 1e-15,
) -> list[complex]:
    """Return all ``deg p`` roots, repeated according to multiplicity.

    ``p`` is a :class:`UniPoly` or a sequence of (complex) coefficients in
    ascending degree.  Each returned root satisfies
    ``|p(r)| <= 1e-10 * max|coeff|`` as measured by the evaluator.
    """
    c = _as_coeffs(p)
    n = len(c) - 1
    if n < 1:
        raise ValueError("up_roots needs a polynomial of degree >= 1")
    ev = evaluator or horner_evaluator(c)
    if n == 1:
        z = np.array([-c[0] / c[1]])
    else:
        z = _initial_guesses(c)
        active = np.ones(n, dtype=bool)
        last = np.full(n, np.inf)
        for _ in range(max_iter):
            idx = np.nonzero(active)[0]
            if len(idx) == 0:
                break
            pv, dpv = ev(z[idx])
            diff = z[idx, None] - z[None, :]
            diff[np.arange(len(idx)), idx] = 1.0
            recip = 1.0 / diff
            recip[np.arange(len(idx)), idx] = 0.0
            s = recip.sum(axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):
                w = pv / dpv
                corr = w / (1.0 - w * s)
            exact = pv == 0
            corr[exact] = 0.0
            bad = ~np.isfinite(corr)
            if bad.any():
                # Derivative vanished: nudge instead of dividing by zero.
                corr[bad] = 1e-8 * (1 + np.abs(z[idx][bad]))
            z[idx] = z[idx] - corr
            size = np.abs(corr)
            scale_z = 1 + np.abs(z[idx])
            # stalled at rounding level: tiny step that no longer shrinks
            stalled = (size <= 1e-11 * scale_z) & (size >= 0.5 * last[idx])
            last[idx] = size
            done = (size <= rel_tol * scale_z) | stalled | exact
            active[idx[done]] = False
        else:
            pv, _ = ev(z)
            raise RootFindingError(
                f"Aberth iteration did not converge in {max_iter} sweeps",
                [complex(x) for x in z],
                float(np.max(np.abs(pv))),
            )
    pv, _ = ev(z)
    residual = float(np.max(np.abs(pv)))
    scale = float(np.max(np.abs(c)))
    if not residual <= 1e-10 * scale:
        raise RootFindingError(
            f"root residual {residual:.3e} exceeds 1e-10 * max|coeff| = {1e-10 * scale:.3e}",
            [complex(x) for x in z],
            residual,
        )
    return [complex(x) for x in z]


def backward_error(p: UniPoly | Sequence[complex], r: complex, dps: int = 60) -> float:
    """``|p(r)| / sum_j |a_j| |r|^j`` evaluated in extended precision.

    This is the smallest relative coefficient perturbation that makes ``r``
    an exact root, so it certifies a computed root independently of how it
    was found.
    """
    raw = p.coeffs if isinstance(p, UniPoly) else p
    with mpmath.workdps(dps):
        z = mpmath.mpc(r.real, r.imag)
        acc = mpmath.mpc(0)
        scale = mpmath.mpf(0)
        az = abs(z)
        for c in reversed(list(raw)):
            cm = mpmath.mpf(int(c)) if isinstance(c, Integral) else mpmath.mpc(complex(c))
            acc = acc * z + cm
            scale = scale * az + abs(cm)
        return float(abs(acc) / scale) if scale else 0.0
