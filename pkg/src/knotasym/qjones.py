"""q-series engine: q-Pochhammer symbols, Gaussian binomials and colored Jones
polynomials of twist knots ``K_p`` and torus knots ``T(2, 2p+1)``.

All sums run over chains ``s_p >= ... >= s_1 >= 0``.  The factor
``(q^{1-N}; q)_{s_p}`` vanishes once ``s_p >= N``, so every sum is finite.
The chain sum is organised as a dynamic program over the inner indices, so
the cost grows polynomially in N even though the number of chains is
``C(N-1+|p|, |p|)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational
from typing import Literal

import mpmath

from .exactpoly import QLaurent
from .knots import KnotSpec

__all__ = [
    "ResourceCapError",
    "DEFAULT_MAX_CHAINS",
    "JonesQuery",
    "qpoch",
    "qbinom",
    "chain_count",
    "jones_twist",
    "jones_torus",
    "jones",
    "jones_summand",
    "jones_trefoil_variants",
    "jones_eval",
    "jones_sum_numeric",
    "check_poch_asymptotics",
]

DEFAULT_MAX_CHAINS = 2_000_000

ONE = QLaurent.monomial(0)


class ResourceCapError(RuntimeError):
    pass


def qpoch(a: int, n: int) -> QLaurent:
    """``(q^a; q)_n = prod_{i=1..n} (1 - q^{a+i-1})``."""
    if n < 0:
        raise ValueError("qpoch needs n >= 0")
    out = ONE
    for i in range(n):
        out = out - out.shift(a + i)
    return out


@lru_cache(maxsize=4096)
def _qbinom_q(n: int, k: int) -> QLaurent:
    # q-Pascal rule keeps everything in Z[q] without division.
    if k == 0 or k == n:
        return ONE
    return _qbinom_q(n - 1, k - 1) + _qbinom_q(n - 1, k).shift(k)


def qbinom(n: int, k: int, base: Literal["q", "1/q"] = "q") -> QLaurent:
    """Gaussian binomial ``(q)_n / ((q)_{n-k} (q)_k)`` in base ``q`` or ``q^-1``."""
    if n < 0 or k < 0:
        raise ValueError("qbinom needs nonnegative n and k")
    if k > n:
        raise ValueError(f"qbinom needs k <= n, got n={n}, k={k}")
    out = _qbinom_q(n, k)
    if base == "q":
        return out
    if base == "1/q":
        return out.invert_q()
    raise ValueError(f"unknown base {base!r}")


def chain_count(p: int, N: int) -> int:
    """Number of chains ``N-1 >= s_|p| >= ... >= s_1 >= 0``."""
    k = abs(p)
    return math.comb(N - 1 + k, k)


def _check_cap(p: int, N: int, max_chains: int) -> None:
    count = chain_count(p, N)
    if count > max_chains:
        raise ResourceCapError(
            f"{count} summation chains for |p|={abs(p)}, N={N} exceeds the cap of {max_chains}"
        )


def _inner_chain_sum(S: int, levels: int) -> QLaurent:
    """Sum over ``S >= s_{levels} >= ... >= s_1 >= 0`` of
    ``prod_i q^{s_i^2 - (2S+1) s_i} [s_{i+1} choose s_i]_q`` with ``s_{levels+1} = S``."""
    if levels == 0:
        return ONE
    weight = [QLaurent.monomial(s * s - (2 * S + 1) * s) for s in range(S + 1)]
    g = [ONE] * (S + 1)
    for level in range(levels):
        h = [weight[s] * g[s] for s in range(S + 1)]
        tops = [S] if level == levels - 1 else range(S + 1)
        new = [QLaurent()] * (S + 1)
        for t in tops:
            acc = QLaurent()
            for s in range(t + 1):
                acc = acc + _qbinom_q(t, s) * h[s]
            new[t] = acc
        g = new
    return g[S]


def _twist_summand(p: int, N: int, S: int, pair: QLaurent) -> QLaurent:
    k = abs(p)
    inner = _inner_chain_sum(S, k - 1)
    if p > 0:
        return (pair * inner).shift((p - 1) * S * (S + 1) + S)
    term = (pair * inner.invert_q()).shift(-((2 * k - 1) * S * (S + 1)) // 2)
    return -term if S % 2 else term


def _torus_summand(p: int, N: int, S: int, ratio: QLaurent, upper: QLaurent) -> QLaurent:
    inner = _inner_chain_sum(S, p - 1)
    return (ratio * upper * inner).shift((p - 1) * S * (S + 1) + p * (1 - N * N))


def jones_summand(knot: KnotSpec, N: int, S: int) -> QLaurent:
    """The ``s_p = S`` slice of the Jones sum (inner chains already summed).

    Zero for ``S >= N``; exposed so the truncation can be checked directly.
    """
    if knot.kind == "twist":
        pair = qpoch(1 - N, S) * qpoch(1 + N, S)
        return _twist_summand(knot.p, N, S, pair)
    low = qpoch(1 - N, S)
    if low.is_zero():
        return QLaurent()
    ratio = low.divexact(qpoch(1, S))
    return _torus_summand(knot.p, N, S, ratio, qpoch(1 + N, S))


def jones_twist(p: int, N: int, *, max_chains: int = DEFAULT_MAX_CHAINS) -> QLaurent:
    """Colored Jones polynomial of the twist knot ``K_p`` (``J_unknot = 1``)."""
    if p == 0:
        raise ValueError("twist knot index p must be nonzero")
    if N < 1:
        raise ValueError("color N must be >= 1")
    _check_cap(p, N, max_chains)
    total = QLaurent()
    pair = ONE
    for S in range(N):
        if S:
            pair = pair - pair.shift(1 - N + S - 1)
            pair = pair - pair.shift(1 + N + S - 1)
        total = total + _twist_summand(p, N, S, pair)
    return total


def jones_torus(p: int, N: int, *, max_chains: int = DEFAULT_MAX_CHAINS) -> QLaurent:
    """Colored Jones polynomial of the torus knot ``T(2, 2p+1)``."""
    if p < 1:
        raise ValueError("torus knot needs p >= 1")
    if N < 1:
        raise ValueError("color N must be >= 1")
    _check_cap(p, N, max_chains)
    total = QLaurent()
    ratio = ONE  # (q^{1-N})_S / (q)_S, exact at every step
    upper = ONE  # (q^{1+N})_S
    for S in range(N):
        if S:
            ratio = (ratio - ratio.shift(S - N)).divexact(ONE - QLaurent.monomial(S))
            upper = upper - upper.shift(N + S)
        total = total + _torus_summand(p, N, S, ratio, upper)
    return total


def jones(knot: KnotSpec, N: int, *, max_chains: int = DEFAULT_MAX_CHAINS) -> QLaurent:
    if knot.kind == "twist":
        return jones_twist(knot.p, N, max_chains=max_chains)
    return jones_torus(knot.p, N, max_chains=max_chains)


def jones_trefoil_variants(N: int) -> tuple[QLaurent, QLaurent, QLaurent]:
    """The three q-hypergeometric expressions for the right-hand trefoil.

    (a) ``q^{1-N} sum q^{-nN} (q^{1-N})_n``
    (b) ``sum q^{-n(n+2)} (q^{1-N})_n (q^{1+N})_n``
    (c) ``q^{1-N^2} sum (q^{1-N})_n (q^{1+N})_n / (q)_n``
    """
    if N < 1:
        raise ValueError("color N must be >= 1")
    a = b = c = QLaurent()
    for n in range(N):
        low = qpoch(1 - N, n)
        both = low * qpoch(1 + N, n)
        a = a + low.shift(-n * N)
        b = b + both.shift(-n * (n + 2))
        c = c + both.divexact(qpoch(1, n))
    return a.shift(1 - N), b, c.shift(1 - N * N)


@dataclass(frozen=True)
class JonesQuery:
    knot: KnotSpec
    N: int
    r: float | Fraction | int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("color N must be >= 1")


def _eval_exact(poly: QLaurent, N: int, r) -> complex:
    terms = poly.terms
    if not terms:
        return 0j
    digits = max(len(str(abs(c))) for c in terms.values())
    with mpmath.workdps(digits + 25):
        if isinstance(r, Rational):
            # q is a root of unity: fold exponents exactly before going numeric.
            fr = Fraction(r)
            order = fr.denominator * N
            folded: dict[int, int] = {}
            for e, c in terms.items():
                key = (fr.numerator * e) % order
                folded[key] = folded.get(key, 0) + c
            total = mpmath.fsum(
                c * mpmath.expjpi(mpmath.mpf(2 * k) / order) for k, c in folded.items() if c
            )
        else:
            theta = 2 * mpmath.mpf(r) / N
            total = mpmath.fsum(c * mpmath.expjpi(theta * e) for e, c in terms.items())
        return complex(total)


def jones_eval(query: JonesQuery, *, method: Literal["exact", "sum"] = "exact",
               max_chains: int = DEFAULT_MAX_CHAINS) -> complex:
    """Value of ``J_K(N)`` at ``q = exp(2 pi i r / N)``.

    ``method="exact"`` expands the Laurent polynomial and evaluates it with
    enough working precision that the big integer coefficients do not
    cancel catastrophically; integer or ``Fraction`` values of ``r`` are
    folded modulo the order of ``q`` first.  ``method="sum"`` evaluates the
    q-hypergeometric sum directly in binary64 and is the route for large N.
    """
    if query.r == 0:
        raise ValueError("evaluation parameter r must be nonzero")
    if method == "sum":
        return jones_sum_numeric(query.knot, query.N, query.r)
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    return _eval_exact(jones(query.knot, query.N, max_chains=max_chains), query.N, query.r)


def _numeric_qbinom_table(q: complex, n: int) -> list[list[complex]]:
    rows = [[1 + 0j]]
    qpow = [q ** s for s in range(n + 1)]
    for t in range(1, n + 1):
        prev = rows[-1]
        row = [1 + 0j] * (t + 1)
        for s in range(1, t):
            row[s] = prev[s - 1] + qpow[s] * prev[s]
        rows.append(row)
    return rows


def jones_sum_numeric(knot: KnotSpec, N: int, r=1) -> complex:
    """Binary64 summation of the Jones formula at ``q = exp(2 pi i r / N)``."""
    r = float(r)
    if r == 0:
        raise ValueError("evaluation parameter r must be nonzero")
    theta = 2 * math.pi * r / N

    def qp(e: float) -> complex:
        return cmath.exp(1j * theta * e)

    k = abs(knot.p)
    sign = 1 if knot.kind == "torus" or knot.p > 0 else -1
    binom = _numeric_qbinom_table(qp(sign), N - 1)

    def inner(S: int) -> complex:
        if k == 1:
            return 1 + 0j
        w = [qp(sign * (s * s - (2 * S + 1) * s)) for s in range(S + 1)]
        g = [1 + 0j] * (S + 1)
        for level in range(k - 1):
            h = [w[s] * g[s] for s in range(S + 1)]
            tops = [S] if level == k - 2 else range(S + 1)
            new = [0j] * (S + 1)
            for t in tops:
                row = binom[t]
                new[t] = sum(row[s] * h[s] for s in range(t + 1))
            g = new
        return g[S]

    total = 0j
    pair = 1 + 0j
    upper = 1 + 0j
    for S in range(N):
        if S:
            upper *= 1 - qp(N + S)
            pair *= (1 - qp(S - N)) * (1 - qp(N + S))
        if knot.kind == "twist" and knot.p > 0:
            term = qp((k - 1) * S * (S + 1) + S) * pair
        elif knot.kind == "twist":
            term = (-1) ** S * qp(-((2 * k - 1) * S * (S + 1)) / 2) * pair
        else:
            # (q^{1-N})_S / (q)_S = (-1)^S q^{S(S+1)/2 - N S} [N-1 choose S]_q
            ratio = (-1) ** S * qp(S * (S + 1) / 2 - N * S) * binom[N - 1][S]
            term = qp((k - 1) * S * (S + 1) + k * (1 - N * N)) * ratio * upper
        total += term * inner(S)
    return total


def check_poch_asymptotics(x: complex, n_fraction: float, r: float, N: int) -> float:
    """Relative gap between ``log (xq; q)_n`` and its dilogarithm approximation.

    Compares ``sum_{i=1..n} log(1 - x q^i)`` with
    ``N/(2 pi i r) * (Li2(x) - Li2(x q^n))`` for ``n = floor(n_fraction * N)``.
    The gap is first order in ``1/N``.
    """
    from .dilog import li2

    x = complex(x)
    if abs(x) >= 1:
        raise ValueError("check_poch_asymptotics needs |x| < 1")
    if not 0 < n_fraction < 1:
        raise ValueError("n_fraction must lie in (0, 1)")
    if x == 0:
        return 0.0
    n = math.floor(n_fraction * N)
    theta = 2 * math.pi * r / N
    acc = 0j
    for i in range(1, n + 1):
        acc += cmath.log(1 - x * cmath.exp(1j * theta * i))
    lhs = acc
    qn = cmath.exp(1j * theta * n)
    rhs = N / (2j * math.pi * r) * (li2(x) - li2(x * qn))
    if lhs == 0:
        return 0.0 if rhs == 0 else math.inf
    return abs(lhs - rhs) / abs(lhs)
