"""A-polynomials of twist knots from the 2x2 transfer-matrix recursion and the
three-term recursion, the torus-knot closed form, and the algebraic identities
satisfied by the transfer matrices.

Matrix route::

    (A_{p+1}, B_{p+1})^T   = M+ (A_p, B_p)^T,    (A_1, B_1) = (l + m^6, m^2 (l + m^2)^2)
    (A_{-p-1}, B_{-p-1})^T = M- (A_-p, B_-p)^T,  (A_0, B_0) = (1, 1 + l m^2)

The ratio ``A_p / B_p`` is the rational function ``Ctilde_p`` with
``1 - C_p(x0) = (1 - l)(1 - m^2) Ctilde_p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath

from .exactpoly import BivarPoly, L, M
from .report import Check, IdentityError, Report

__all__ = [
    "TwoByTwo",
    "ABPair",
    "named_poly",
    "det_scalar",
    "m_plus",
    "m_minus",
    "ab_pair",
    "apoly_twist",
    "apoly_twist_normalized",
    "apoly_twist_3term",
    "apoly_torus",
    "ctilde_minus1_reference",
    "verify_matrix_identities",
    "char_poly_check",
    "ctilde_recursion_check",
]

ZERO = BivarPoly()
ONE = BivarPoly.const(1)

_Z_TEXT = "-l + l^2 + 2*l*m^2 - l^2*m^2 + m^4 + l^2*m^4 - m^6 + 2*l*m^6 + m^8 - l*m^8"
_X_TEXT = "-l + l^2 + 2*l*m^2 + m^4 + 2*l*m^4 + l^2*m^4 + 2*l*m^6 + m^8 - l*m^8"
_A1_TEXT = "l + m^6"
_A2_TEXT = (
    "l^2 - l^3 - 2*l^2*m^2 - l*m^4 - 2*l^2*m^4 + l*m^6 + l^2*m^8"
    " - 2*l*m^10 - l^2*m^10 - 2*l*m^12 - m^14 + l*m^14"
)
_AM1_TEXT = "-l + l*m^2 + m^4 + 2*l*m^4 + l^2*m^4 + l*m^6 - l*m^8"
_CTM1_DEN_TEXT = (
    "-l + l^2 + 2*l*m^2 - l^2*m^2 + m^4 + 2*l*m^4 + 2*l^2*m^6 + l^3*m^6"
    " - l*m^8 + 2*l^2*m^8 + l*m^10 - l^2*m^10"
)


def named_poly(name: str) -> BivarPoly:
    """The polynomials ``Z`` (entry of M+/M-) and ``X`` (minus the trace of M+)."""
    if name == "Z":
        return BivarPoly.parse(_Z_TEXT)
    if name == "X":
        return BivarPoly.parse(_X_TEXT)
    raise ValueError(f"unknown named polynomial {name!r}")


@dataclass(frozen=True)
class TwoByTwo:
    a11: BivarPoly
    a12: BivarPoly
    a21: BivarPoly
    a22: BivarPoly

    @classmethod
    def scalar(cls, s: BivarPoly) -> TwoByTwo:
        return cls(s, ZERO, ZERO, s)

    def entries(self) -> tuple[BivarPoly, BivarPoly, BivarPoly, BivarPoly]:
        return (self.a11, self.a12, self.a21, self.a22)

    def __matmul__(self, other: TwoByTwo) -> TwoByTwo:
        return TwoByTwo(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __add__(self, other: TwoByTwo) -> TwoByTwo:
        return TwoByTwo(*(a + b for a, b in zip(self.entries(), other.entries())))

    def scale(self, s: BivarPoly) -> TwoByTwo:
        return TwoByTwo(*(s * a for a in self.entries()))

    def transpose(self) -> TwoByTwo:
        return TwoByTwo(self.a11, self.a21, self.a12, self.a22)

    def trace(self) -> BivarPoly:
        return self.a11 + self.a22

    def det(self) -> BivarPoly:
        return self.a11 * self.a22 - self.a12 * self.a21

    def apply(self, a: BivarPoly, b: BivarPoly) -> tuple[BivarPoly, BivarPoly]:
        return self.a11 * a + self.a12 * b, self.a21 * a + self.a22 * b

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())


@dataclass(frozen=True)
class ABPair:
    A: BivarPoly
    B: BivarPoly
    p: int


def _w() -> BivarPoly:
    # m^2 (l + m^2)^2, the recurring factor of both matrices
    return M ** 2 * (L + M ** 2) ** 2


def _u() -> BivarPoly:
    return (1 - L) * (1 - M ** 2)


def det_scalar() -> BivarPoly:
    """``m^4 (l + m^2)^4``."""
    return _w() ** 2


@lru_cache(maxsize=None)
def m_plus() -> TwoByTwo:
    w = _w()
    return TwoByTwo(-named_poly("Z"), -(1 - M ** 2) * (L - M ** 4), w * _u(), -w)


@lru_cache(maxsize=None)
def m_minus() -> TwoByTwo:
    w = _w()
    return TwoByTwo(w, -(1 - M ** 2) * (L - M ** 4), _u() * w, named_poly("Z"))


@lru_cache(maxsize=None)
def ab_pair(p: int) -> ABPair:
    """``(A_p, B_p)`` from repeated matrix application (p = 0 is the seed pair)."""
    if p == 0:
        return ABPair(ONE, 1 + L * M ** 2, 0)
    if p == 1:
        return ABPair(L + M ** 6, _w(), 1)
    if p > 1:
        prev = ab_pair(p - 1)
        a, b = m_plus().apply(prev.A, prev.B)
    else:
        prev = ab_pair(p + 1)
        a, b = m_minus().apply(prev.A, prev.B)
    return ABPair(a, b, p)


def apoly_twist(p: int) -> BivarPoly:
    """A-polynomial ``A_p`` of the twist knot ``K_p``, unnormalized."""
    if p == 0:
        raise ValueError("twist knot index p must be nonzero")
    return ab_pair(p).A


def apoly_twist_normalized(p: int) -> BivarPoly:
    return apoly_twist(p).normalized()


@lru_cache(maxsize=None)
def _a3(p: int) -> BivarPoly:
    if p == 0:
        return ONE
    if p == 1:
        return BivarPoly.parse(_A1_TEXT)
    if p == 2:
        return BivarPoly.parse(_A2_TEXT)
    if p == -1:
        return BivarPoly.parse(_AM1_TEXT)
    X = named_poly("X")
    if p > 2:
        return -X * _a3(p - 1) - det_scalar() * _a3(p - 2)
    return X * _a3(p + 1) - det_scalar() * _a3(p + 2)


def apoly_twist_3term(p: int) -> BivarPoly:
    """``A_p`` from the scalar three-term recursion seeded with the reference A_0, A_{+-1}, A_2."""
    if p == 0:
        raise ValueError("twist knot index p must be nonzero")
    return _a3(p)


def apoly_torus(p: int) -> BivarPoly:
    """``1 + l m^{4p+2}`` for ``T(2, 2p+1)``."""
    if p < 1:
        raise ValueError("torus knot needs p >= 1")
    return 1 + L * M ** (4 * p + 2)


def ctilde_minus1_reference() -> tuple[BivarPoly, BivarPoly]:
    """Numerator and denominator of the reference ``Ctilde_{-1}`` seed."""
    return BivarPoly.parse(_AM1_TEXT), BivarPoly.parse(_CTM1_DEN_TEXT)


_J = TwoByTwo(ZERO, -ONE, ONE, ZERO)  # sigma_y = i * J


def _first_diff(lhs: TwoByTwo, rhs: TwoByTwo) -> str | None:
    names = ("a11", "a12", "a21", "a22")
    for name, x, y in zip(names, lhs.entries(), rhs.entries()):
        if x != y:
            return f"{name}: {x - y}"
    return None


def verify_matrix_identities() -> Report:
    """Check the symplectic and product identities of M+ and M- exactly.

    ``(M)^t sigma_y M sigma_y = det(M) I`` is checked through
    ``M^t J M = det(M) J`` with ``sigma_y = i J``; the factor ``i^2 = -1``
    is folded in, so ``M^t sigma_y M sigma_y = -(M^t J M J)``.
    """
    d = det_scalar()
    report = Report("apoly.matrix_identities")
    for label, mat in (("M+", m_plus()), ("M-", m_minus())):
        det = mat.det()
        if det != d:
            raise IdentityError(f"det({label}) != m^4 (l+m^2)^4; difference {det - d}")
        report.add(Check(f"det({label}) = m^4 (l+m^2)^4", True, str(d)))
        mtjm = mat.transpose() @ _J @ mat
        diff = _first_diff(mtjm, _J.scale(det))
        if diff:
            raise IdentityError(f"{label}^t J {label} != det J at {diff}")
        report.add(Check(f"{label}^t J {label} = det({label}) J", True, "exact"))
        sig = (mtjm @ _J).scale(BivarPoly.const(-1))
        diff = _first_diff(sig, TwoByTwo.scalar(d))
        if diff:
            raise IdentityError(f"{label}^t sigma_y {label} sigma_y != m^4 (l+m^2)^4 I at {diff}")
        report.add(Check(f"{label}^t sigma_y {label} sigma_y = m^4 (l+m^2)^4 I", True, "exact"))
    prod = m_plus() @ m_minus()
    diff = _first_diff(prod, TwoByTwo.scalar(-d))
    if diff:
        raise IdentityError(f"M+ M- != -m^4 (l+m^2)^4 I at {diff}")
    report.add(Check("M+ M- = -m^4 (l+m^2)^4 I", True, "exact"))
    return report


def char_poly_check(sign: str) -> Report:
    """``F(x) = x^2 +- X x + m^4 (l+m^2)^4`` is the characteristic polynomial of M+-."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    mat = m_plus() if sign == "+" else m_minus()
    s = 1 if sign == "+" else -1
    linear = (L ** 2 + M ** 4) * (1 + M ** 4) + L * (-1 + 2 * M ** 2 + 2 * M ** 4 + 2 * M ** 6 - M ** 8)
    report = Report(f"apoly.char_poly{sign}")
    # x^2 - tr(M) x + det(M): the linear coefficient is -tr(M)
    lin_from_mat = -mat.trace()
    if lin_from_mat != s * linear:
        raise IdentityError(f"linear coefficient of F{sign} mismatch: diff {lin_from_mat - s * linear}")
    report.add(Check(f"-tr(M{sign}) = {'+' if s > 0 else '-'}(linear coefficient)", True, str(linear)))
    if linear != named_poly("X"):
        raise IdentityError(f"linear coefficient differs from X by {linear - named_poly('X')}")
    report.add(Check("linear coefficient = X", True, "exact"))
    if mat.det() != det_scalar():
        raise IdentityError(f"constant term of F{sign} mismatch: diff {mat.det() - det_scalar()}")
    report.add(Check(f"det(M{sign}) = m^4 (l+m^2)^4", True, "exact"))
    f_of_m = (mat @ mat) + mat.scale(s * linear) + TwoByTwo.scalar(det_scalar())
    if not f_of_m.is_zero():
        raise IdentityError(f"F{sign}(M{sign}) != 0: {_first_diff(f_of_m, TwoByTwo.scalar(ZERO))}")
    report.add(Check(f"F{sign}(M{sign}) = 0", True, "Cayley-Hamilton"))
    return report


def _mp_eval(poly: BivarPoly, l, m):
    acc = mpmath.mpc(0)
    for (i, j), c in poly.terms.items():
        acc += c * l ** i * m ** j
    return acc


def _ctilde(k: int, l, m):
    # Successive Ctilde_k converge, so the recursion compares differences of
    # nearly equal numbers; callers run this under extra working precision.
    pair = ab_pair(k)
    b = _mp_eval(pair.B, l, m)
    if abs(b) < 1e-12:
        return None
    return _mp_eval(pair.A, l, m) / b


def ctilde_recursion_check(p_max: int, samples: Sequence[tuple[complex, complex]] | None = None,
                           *, n_samples: int = 20, seed: int = 0, rel_tol: float = 1e-8) -> Report:
    """Numerically check the nonlinear recursion satisfied by ``Ctilde_k = A_k / B_k``.

    Positive side, ``k = 0 .. p_max-2``::

        (C_k - C_{k+1}) / (C_{k+1} - C_{k+2}) = (1 - u C_k)(1 - u C_{k+1})

    negative side, ``k = 0 .. p_max-2``::

        (C_{-k-2} - C_{-k-1}) / (C_{-k-1} - C_{-k}) = (1 - u C_{-k-1})(1 - u C_{-k-2})

    with ``u = (1 - l)(1 - m^2)``.  Samples hitting a pole of some ``B_k`` are
    skipped and noted in the report.
    """
    if p_max < 1:
        raise ValueError("p_max must be positive")
    if samples is None:
        rng = random.Random(seed)
        samples = []
        while len(samples) < n_samples:
            l = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            m = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(l) < 1 and abs(m) < 1:
                samples.append((l, m))
    report = Report("apoly.ctilde_recursion")
    worst = 0.0
    skipped = 0
    for l, m in samples:
        res = _ctilde_sample_residual(l, m, p_max)
        if res is None:
            skipped += 1
            report.notes.append(f"skipped pole sample l={complex(l):.6g}, m={complex(m):.6g}")
            continue
        worst = max(worst, res)
    report.add(Check(f"Ctilde recursion, |k| < {p_max}, {len(samples) - skipped} samples",
                     worst < rel_tol, f"max relative residual {worst:.3e}"))
    return report


def _ctilde_sample_residual(l: complex, m: complex, p_max: int) -> float | None:
    def rel(lhs, rhs) -> float:
        return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))

    worst = 0.0
    with mpmath.workdps(60):
        l, m = mpmath.mpc(l), mpmath.mpc(m)
        u = (1 - l) * (1 - m * m)
        values = {k: _ctilde(k, l, m) for k in range(-p_max, p_max + 1)}
        if any(v is None for v in values.values()):
            return None
        for k in range(0, p_max - 1):
            c0, c1, c2 = values[k], values[k + 1], values[k + 2]
            worst = max(worst, rel((c0 - c1) / (c1 - c2), (1 - u * c0) * (1 - u * c1)))
            n0, n1, n2 = values[-k], values[-k - 1], values[-k - 2]
            worst = max(worst, rel((n2 - n1) / (n1 - n0), (1 - u * n1) * (1 - u * n2)))
    return worst
