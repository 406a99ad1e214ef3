"""Exact integer polynomial types.

``BivarPoly`` lives in Z[l, m], ``UniPoly`` in Z[z] and ``QLaurent`` in
Z[q, 1/q].  All three are immutable, hashable, and print in a canonical
text form that :meth:`parse` reads back.
"""

from __future__ import annotations

import cmath
import math
from numbers import Integral
from types import MappingProxyType
from typing import Mapping, Sequence

from ._dense import dense_mul, trim
from ._text import PolyParseError, format_terms, parse_terms

__all__ = ["BivarPoly", "UniPoly", "QLaurent", "L", "M", "Z_VAR", "Q"]


def _check_finite(value: complex) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError("polynomial evaluation overflowed to a non-finite value")
    return value


class BivarPoly:
    """Polynomial in ``l`` (longitude) and ``m`` (meridian) with int coefficients.

    Terms are keyed by ``(deg_l, deg_m)``.  Canonical order is descending
    lexicographic on that pair.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in BivarPoly term {(i, j)}")
            if not isinstance(c, Integral):
                raise TypeError(f"coefficient {c!r} is not an integer")
            if c:
                clean[(int(i), int(j))] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: int) -> BivarPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, deg_l: int, deg_m: int, c: int = 1) -> BivarPoly:
        return cls({(deg_l, deg_m): c})

    @classmethod
    def parse(cls, text: str) -> BivarPoly:
        raw = parse_terms(text, ("l", "m"))
        if any(e < 0 for key in raw for e in key):
            raise PolyParseError("negative exponents are not allowed in a BivarPoly")
        return cls(raw)

    @property
    def terms(self) -> Mapping[tuple[int, int], int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree_l(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def degree_m(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def only_even_m(self) -> bool:
        return all(j % 2 == 0 for _, j in self._terms)

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> BivarPoly | None:
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, Integral):
            return BivarPoly.const(int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BivarPoly:
        return BivarPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BivarPoly:
        if not isinstance(n, Integral) or n < 0:
            raise ValueError("BivarPoly power must be a nonnegative integer")
        result, base = BivarPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitutions -------------------------------------------------
    def reversed_l(self) -> BivarPoly:
        """``l^d * P(1/l, m)`` with ``d`` the l-degree (reciprocal in l)."""
        d = self.degree_l
        return BivarPoly({(d - i, j): c for (i, j), c in self._terms.items()})

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def normalized(self) -> BivarPoly:
        """Divide by integer content and make the leading coefficient positive."""
        if not self._terms:
            return self
        g = self.content()
        lead = self._terms[max(self._terms)]
        if lead < 0:
            g = -g
        return BivarPoly({k: c // g for k, c in self._terms.items()})

    # -- evaluation ----------------------------------------------------
    def coefficients_in_l(self, m: complex) -> list[complex]:
        """Coefficients of ``P(., m)`` as a polynomial in l, ascending."""
        by_l: dict[int, dict[int, int]] = {}
        for (i, j), c in self._terms.items():
            by_l.setdefault(i, {})[j] = c
        out = [0j] * (self.degree_l + 1)
        for i, row in by_l.items():
            acc = 0j
            for j in range(max(row), -1, -1):
                acc = acc * m + float(row.get(j, 0))
            out[i] = _check_finite(acc)
        return out

    def evaluate(self, l: complex, m: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients_in_l(m)):
            acc = acc * l + c
        return _check_finite(complex(acc))

    __call__ = evaluate

    # -- text ----------------------------------------------------------
    def __str__(self) -> str:
        items = sorted(self._terms.items(), reverse=True)
        return format_terms(("l", "m"), items)

    def __repr__(self) -> str:
        return f"BivarPoly({str(self)!r})"


class UniPoly:
    """Dense polynomial in ``z``; ``coeffs[j]`` multiplies ``z^j``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[int] = ()):
        for c in coeffs:
            if not isinstance(c, Integral):
                raise TypeError(f"coefficient {c!r} is not an integer")
        self._c = tuple(trim([int(c) for c in coeffs]))

    @classmethod
    def parse(cls, text: str) -> UniPoly:
        raw = parse_terms(text, ("z",))
        if not raw:
            return cls()
        if any(e < 0 for (e,) in raw):
            raise PolyParseError("negative exponents are not allowed in a UniPoly")
        out = [0] * (max(e for (e,) in raw) + 1)
        for (e,), c in raw.items():
            out[e] = c
        return cls(out)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    @staticmethod
    def _coerce(other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, Integral):
            return UniPoly([int(other)])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        n = max(len(a), len(b))
        return UniPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return UniPoly(dense_mul(list(self._c), list(other._c)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        if not isinstance(n, Integral) or n < 0:
            raise ValueError("UniPoly power must be a nonnegative integer")
        result, base = UniPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def derivative(self) -> UniPoly:
        return UniPoly([j * c for j, c in enumerate(self._c)][1:])

    def evaluate(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self._c):
            acc = acc * z + float(c)
        return _check_finite(complex(acc))

    __call__ = evaluate

    def evaluate_gaussian(self, re: int, im: int) -> tuple[int, int]:
        """Exact value at the Gaussian integer ``re + im*i``."""
        ar, ai = 0, 0
        for c in reversed(self._c):
            ar, ai = ar * re - ai * im + c, ar * im + ai * re
        return ar, ai

    def __str__(self) -> str:
        items = [((j,), c) for j, c in reversed(list(enumerate(self._c))) if c]
        return format_terms(("z",), items)

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r})"


class QLaurent:
    """Laurent polynomial in ``q`` with integer coefficients.

    Stored densely as ``q^lo * (c0 + c1 q + ...)``; exponents are
    unrestricted Python ints.
    """

    __slots__ = ("_lo", "_c")

    def __init__(self, terms: Mapping[int, int] | None = None):
        terms = {int(e): int(c) for e, c in (terms or {}).items() if c}
        if not terms:
            self._lo, self._c = 0, ()
            return
        lo, hi = min(terms), max(terms)
        self._lo = lo
        self._c = tuple(terms.get(e, 0) for e in range(lo, hi + 1))

    @classmethod
    def from_dense(cls, lo: int, coeffs: Sequence[int]) -> QLaurent:
        c = list(coeffs)
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        trim(c)
        obj = cls.__new__(cls)
        if start >= len(c):
            obj._lo, obj._c = 0, ()
        else:
            obj._lo, obj._c = lo + start, tuple(c[start:])
        return obj

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> QLaurent:
        return cls.from_dense(e, [c])

    @classmethod
    def parse(cls, text: str) -> QLaurent:
        return cls({e: c for (e,), c in parse_terms(text, ("q",)).items()})

    @property
    def terms(self) -> Mapping[int, int]:
        return MappingProxyType({self._lo + i: c for i, c in enumerate(self._c) if c})

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero Laurent polynomial has no exponents")
        return self._lo

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero Laurent polynomial has no exponents")
        return self._lo + len(self._c) - 1

    @staticmethod
    def _coerce(other) -> QLaurent | None:
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, Integral):
            return QLaurent.monomial(0, int(other))
        return None

    def _add(self, other: QLaurent, sign: int) -> QLaurent:
        if not other._c:
            return self
        if not self._c:
            return other if sign > 0 else -other
        lo = min(self._lo, other._lo)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        off = self._lo - lo
        for i, c in enumerate(self._c):
            out[off + i] = c
        off = other._lo - lo
        for i, c in enumerate(other._c):
            out[off + i] += sign * c
        return QLaurent.from_dense(lo, out)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._add(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._add(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._add(self, -1)

    def __neg__(self) -> QLaurent:
        return QLaurent.from_dense(self._lo, [-c for c in self._c])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._c or not other._c:
            return QLaurent()
        return QLaurent.from_dense(self._lo + other._lo, dense_mul(list(self._c), list(other._c)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QLaurent:
        if not isinstance(n, Integral) or n < 0:
            raise ValueError("QLaurent power must be a nonnegative integer")
        result, base = QLaurent.monomial(0), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._lo == other._lo and self._c == other._c if self._c else not other._c

    def __hash__(self):
        return hash((self._lo, self._c))

    def shift(self, k: int) -> QLaurent:
        """Multiply by ``q^k``."""
        if not self._c:
            return self
        return QLaurent.from_dense(self._lo + k, self._c)

    def invert_q(self) -> QLaurent:
        """Substitute ``q -> 1/q``."""
        if not self._c:
            return self
        return QLaurent.from_dense(-self.max_exp, list(reversed(self._c)))

    def divexact(self, other: QLaurent) -> QLaurent:
        """Exact quotient; raises ``ArithmeticError`` if a remainder is left."""
        if not other._c:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self._c:
            return QLaurent()
        num = list(self._c)
        den = other._c
        dn = len(den) - 1
        if len(num) - 1 < dn:
            raise ArithmeticError("Laurent division is not exact")
        lead = den[-1]
        quot = [0] * (len(num) - dn)
        for k in range(len(quot) - 1, -1, -1):
            top = num[k + dn]
            if top:
                qk, rem = divmod(top, lead)
                if rem:
                    raise ArithmeticError("Laurent division is not exact")
                quot[k] = qk
                for j, d in enumerate(den):
                    num[k + j] -= qk * d
        if any(num):
            raise ArithmeticError("Laurent division is not exact")
        return QLaurent.from_dense(self._lo - other._lo, quot)

    def evaluate(self, q: complex) -> complex:
        """Term-by-term value; for unit-circle ``q`` prefer :meth:`evaluate_angle`."""
        total = 0j
        for i, c in enumerate(self._c):
            if c:
                total += float(c) * q ** (self._lo + i)
        return _check_finite(complex(total))

    def evaluate_angle(self, theta: float) -> complex:
        """Value at ``q = exp(i*theta)`` using one complex exponential per term."""
        total = 0j
        for i, c in enumerate(self._c):
            if c:
                total += float(c) * cmath.exp(1j * theta * (self._lo + i))
        return _check_finite(complex(total))

    def __str__(self) -> str:
        items = [((self._lo + i,), c) for i, c in reversed(list(enumerate(self._c))) if c]
        return format_terms(("q",), items)

    def __repr__(self) -> str:
        return f"QLaurent({str(self)!r})"


L = BivarPoly.monomial(1, 0)
M = BivarPoly.monomial(0, 1)
Z_VAR = UniPoly([0, 1])
Q = QLaurent.monomial(1)
