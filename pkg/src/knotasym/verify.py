"""Verification suites grouped by module; each returns a :class:`Report`."""

from __future__ import annotations

import random
from typing import Callable

import mpmath
import numpy as np

from . import apoly, dilog, qjones, saddle
from .exactpoly import BivarPoly, QLaurent, UniPoly, up_roots
from .exactpoly._dense import dense_mul
from .knots import KnotSpec
from .report import Check, IdentityError, Report

__all__ = ["SUITES", "run_suite", "poly_suite", "jones_suite", "apoly_suite", "dilog_suite",
           "saddle_suite", "gradient_suite"]


def _schoolbook(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_suite(seed: int = 0) -> Report:
    rep = Report("poly")
    rng = random.Random(seed)
    samples = ["l + m^6", "l*m^10 + 1", apoly._A2_TEXT, apoly._AM1_TEXT]
    bad = [s for s in samples
           if str(BivarPoly.parse(str(BivarPoly.parse(s)))) != str(BivarPoly.parse(s))]
    rep.add(Check("canonical text round trip (bivariate)", not bad, {"failing": bad}))
    q = QLaurent.parse("q^2 - q + 1 - q^-1 + q^-2")
    rep.add(Check("canonical text round trip (Laurent)", str(q) == "q^2 - q + 1 - q^-1 + q^-2", str(q)))

    worst = 0
    for _ in range(20):
        a = [rng.randint(-10 ** 30, 10 ** 30) for _ in range(rng.randint(60, 200))]
        b = [rng.randint(-10 ** 30, 10 ** 30) for _ in range(rng.randint(60, 200))]
        if list(dense_mul(a, b)) != _schoolbook(a, b):
            worst += 1
    rep.add(Check("packed multiplication = schoolbook", worst == 0, {"trials": 20, "mismatches": worst}))

    gaps = []
    for deg in range(1, 9):
        coeffs = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(deg + 1)]
        ours = sorted(up_roots(coeffs), key=lambda z: (z.real, z.imag))
        ref = sorted(np.roots(coeffs[::-1]), key=lambda z: (z.real, z.imag))
        gaps.append(max(abs(x - y) for x, y in zip(ours, ref)))
    rep.add(Check("up_roots = numpy.roots (deg <= 8)", max(gaps) < 1e-8, {"max_gap": max(gaps)}))

    z = UniPoly((0, 1))
    rep.add(Check("(1+z)^2 expands", str((1 + z) ** 2) == "z^2 + 2*z + 1", str((1 + z) ** 2)))
    return rep


def _brute_twist(p: int, N: int) -> QLaurent:
    """Direct enumeration of all index chains (independent of the DP)."""
    from itertools import combinations_with_replacement

    k = abs(p)
    total = QLaurent()
    for S in range(N):
        pair = qjones.qpoch(1 - N, S) * qjones.qpoch(1 + N, S)
        for chain in combinations_with_replacement(range(S + 1), k - 1):
            s = list(chain) + [S]
            if p > 0:
                term = pair.shift((k - 1) * S * (S + 1) + S)
                for i in range(k - 1):
                    term = term * qjones.qbinom(s[i + 1], s[i]).shift(s[i] ** 2 - (2 * S + 1) * s[i])
            else:
                term = pair.shift(-((2 * k - 1) * S * (S + 1)) // 2) * (-1) ** S
                for i in range(k - 1):
                    term = term * qjones.qbinom(s[i + 1], s[i], base="1/q").shift(
                        -(s[i] ** 2 - (2 * S + 1) * s[i]))
            total = total + term
    return total


def jones_suite(n_max: int = 12) -> Report:
    rep = Report("jones")
    bad_tref, bad_amph = [], []
    for N in range(1, n_max + 1):
        a, b, c = qjones.jones_trefoil_variants(N)
        t = qjones.jones_torus(1, N)
        if not (a == b == c == t and qjones.jones_twist(1, N).invert_q() == t):
            bad_tref.append(N)
        f8 = qjones.jones_twist(-1, N)
        if f8 != f8.invert_q():
            bad_amph.append(N)
    rep.add(Check("trefoil: three sums = torus(1) = twist(1) at 1/q", not bad_tref,
                  {"N_max": n_max, "failing_N": bad_tref}))
    rep.add(Check("figure-eight is q <-> 1/q symmetric", not bad_amph,
                  {"N_max": n_max, "failing_N": bad_amph}))

    bad = [(p, N) for p in (-3, -2, 2, 3) for N in range(1, 6)
           if qjones.jones_twist(p, N) != _brute_twist(p, N)]
    rep.add(Check("nested-sum DP = chain enumeration", not bad, {"failing": bad}))

    rep.add(Check("J_{K_-1}(2)", str(qjones.jones_twist(-1, 2)) == "q^2 - q + 1 - q^-1 + q^-2",
                  str(qjones.jones_twist(-1, 2))))
    # Kashaev form of the figure-eight at q = exp(2 pi i / N)
    worst = 0.0
    for N in (3, 5, 8):
        qv = mpmath.expjpi(mpmath.mpf(2) / N)
        kas, poch = mpmath.mpf(0), mpmath.mpf(1)
        for k in range(N):
            if k:
                poch *= 1 - qv ** k
            kas += abs(poch) ** 2
        got = qjones.jones_eval(qjones.JonesQuery(KnotSpec("twist", -1), N))
        worst = max(worst, abs(got - complex(kas)) / float(kas))
    rep.add(Check("figure-eight = sum |(q)_k|^2 at q = e^{2 pi i/N}", worst < 1e-10, {"max_rel": worst}))

    worst = 0.0
    for knot in (KnotSpec("twist", 2), KnotSpec("twist", -2), KnotSpec("torus", 2)):
        for N in (7, 11):
            for r in (1, 0.37):
                qq = qjones.JonesQuery(knot, N, r)
                e, s = qjones.jones_eval(qq), qjones.jones_eval(qq, method="sum")
                worst = max(worst, abs(e - s) / max(1.0, abs(e)))
    rep.add(Check("exact evaluation = binary64 sum", worst < 1e-9, {"max_rel": worst}))
    return rep


def apoly_suite(p_max: int = 8) -> Report:
    rep = Report("apoly")
    for p, text in ((1, apoly._A1_TEXT), (2, apoly._A2_TEXT), (-1, apoly._AM1_TEXT)):
        got, want = str(apoly.apoly_twist(p)), str(BivarPoly.parse(text))
        rep.add(Check(f"A_{p} matches the reference polynomial", got == want, got))
    a0 = str(apoly.ab_pair(0).A)
    rep.add(Check("A_0 = 1", a0 == "1", a0))
    bad = [p for p in range(-p_max, p_max + 1) if p and apoly.apoly_twist(p) != apoly.apoly_twist_3term(p)]
    rep.add(Check(f"matrix route = 3-term route, |p| <= {p_max}", not bad, {"failing_p": bad}))
    try:
        rep.extend(apoly.verify_matrix_identities())
    except IdentityError as exc:
        rep.add(Check("transfer-matrix identities", False, str(exc)))
    rep.extend(apoly.char_poly_check("+"))
    rep.extend(apoly.char_poly_check("-"))
    num, den = apoly.ctilde_minus1_reference()
    pair = apoly.ab_pair(-1)
    rep.add(Check("(A_-1, B_-1) = reference Ctilde_-1", pair.A == num and pair.B == den, None))
    rep.extend(apoly.ctilde_recursion_check(5))
    rep.add(Check("A_1 reversed in l = torus A-polynomial (p = 1)",
                  apoly.apoly_twist(1).reversed_l() == apoly.apoly_torus(1), None))
    return rep


def dilog_suite(seed: int = 0) -> Report:
    rep = Report("dilog")
    val = 4 * dilog.bloch_wigner(1j)
    rep.add(Check("4 D(i) = 3.66386237670887606", abs(val - dilog.OCTAHEDRON_VOLUME) < 1e-12,
                  {"value": val}))
    rng = random.Random(seed)
    pts = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(100)]
    worst = max(dilog.pentagon_check(z) for z in pts)
    rep.add(Check("D(z^2) = 2 (D(z) - D(z+1)), 100 points", worst < 1e-10, {"max_residual": worst}))
    for branch in "+-":
        s = dilog.octahedron_sum(10_000, branch)
        gap = abs(s - dilog.OCTAHEDRON_VOLUME)
        rep.add(Check(f"octahedron sum ({branch}), 1e4 terms", gap < 5e-3, {"value": s, "gap": gap}))
    worst = 0.0
    with mpmath.workdps(30):
        for _ in range(500):
            z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            ref = complex(mpmath.polylog(2, z))
            worst = max(worst, abs(dilog.li2(z) - ref) / max(1.0, abs(ref)))
    rep.add(Check("li2 = mpmath polylog, 500 points", worst < 1e-12, {"max_rel": worst}))
    return rep


def _families(p_max: int) -> list:
    fams = [KnotSpec("twist", p) for p in range(-p_max, p_max + 1) if p]
    fams += [KnotSpec("torus", p) for p in range(1, p_max + 1)]
    return fams + ["a", "b", "c"]


def gradient_suite(n_points: int = 50, p_max: int = 3, seed: int = 0, tol: float = 1e-5) -> Report:
    """Finite-difference gradients of H against the rational equations."""
    rep = Report("gradient")
    rng = random.Random(seed)
    for fam in _families(p_max):
        n = 1 if isinstance(fam, str) else abs(fam.p)
        worst, done = 0.0, 0
        while done < n_points:
            x = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)]
            m2 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if saddle.cut_distance(fam, x, m2) < 1e-2:
                continue
            done += 1
            worst = max(worst, saddle.gradient_discrepancy(fam, x, m2))
        name = fam if isinstance(fam, str) else str(fam)
        rep.add(Check(f"exp(x dH/dx) = rational form, {name}", worst < tol,
                      {"points": n_points, "max_rel": worst}))
    return rep


def saddle_suite(whitehead_p: int = 50) -> Report:
    rep = Report("saddle")
    rep.extend(saddle.table_check())
    rep.extend(saddle.dual_path_check(10))
    ms = saddle.generic_m_samples(20)
    for p in (-3, -2, -1, 1, 2, 3):
        rep.extend(saddle.crosscheck_apoly_saddle(p, ms))
    for p in range(1, 6):
        rep.extend(saddle.crosscheck_apoly_saddle(KnotSpec("torus", p), ms))
    rep.extend(saddle.trefoil_check(ms))
    rep.extend(saddle.vpoly_identity_suite(50))
    zs = saddle.vzeros([1, 5, 10, 30, 50])
    worst = max(z.residual for z in zs)
    rep.add(Check("V_k zeros certified (k = 1,5,10,30,50)", worst < 1e-8,
                  {"roots": len(zs), "max_backward_error": worst}))
    rep.extend(saddle.whitehead_limit(whitehead_p))
    rep.extend(gradient_suite())
    return rep


SUITES: dict[str, Callable[[], Report]] = {
    "poly": poly_suite,
    "jones": jones_suite,
    "apoly": apoly_suite,
    "dilog": dilog_suite,
    "saddle": saddle_suite,
}


def run_suite(name: str) -> Report:
    if name == "all":
        rep = Report("all")
        for fn in SUITES.values():
            rep.extend(fn())
        return rep
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name]()
