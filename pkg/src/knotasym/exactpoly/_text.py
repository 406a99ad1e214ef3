"""Canonical text form shared by all polynomial types.

A term is ``coef*v1^e1*v2^e2``; coefficient 1 is dropped, exponent 1 is
dropped, and terms are joined with `` + `` / `` - ``.  The parser accepts
the same grammar (plus optional whitespace and an explicit ``1*``).
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = ["PolyParseError", "format_terms", "parse_terms"]


class PolyParseError(ValueError):
    pass


def _monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_terms(names: Sequence[str], terms: Iterable[tuple[tuple[int, ...], int]]) -> str:
    """Render ``(exponents, coef)`` pairs, already in display order."""
    out: list[str] = []
    for exps, c in terms:
        mono = _monomial(names, exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out) if out else "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\^)|(\*)|([+-]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, toks = 0, []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            raise PolyParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = mt.end()
        num, name, caret, star, sign = mt.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("var", name))
        elif caret:
            toks.append(("^", caret))
        elif star:
            toks.append(("*", star))
        else:
            toks.append(("sign", sign))
    return toks


def parse_terms(text: str, names: Sequence[str]) -> dict[tuple[int, ...], int]:
    """Parse ``text`` into ``{exponent tuple: coefficient}`` over ``names``.

    Negative exponents are accepted (``q^-3``); callers that need
    polynomials reject them.
    """
    toks = _tokenize(text)
    if not toks:
        raise PolyParseError("empty polynomial text")
    index = {n: i for i, n in enumerate(names)}
    out: dict[tuple[int, ...], int] = {}
    i = 0

    def peek(kind: str) -> bool:
        return i < len(toks) and toks[i][0] == kind

    first = True
    while i < len(toks):
        sign = 1
        if peek("sign"):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-' at token {i}")
        first = False
        coef = 1
        exps = [0] * len(names)
        seen_factor = False
        while True:
            if peek("num"):
                coef *= int(toks[i][1])
                i += 1
            elif peek("var"):
                name = toks[i][1]
                if name not in index:
                    raise PolyParseError(f"unknown variable {name!r}; expected one of {list(names)}")
                i += 1
                e = 1
                if peek("^"):
                    i += 1
                    esign = 1
                    if peek("sign"):
                        esign = -1 if toks[i][1] == "-" else 1
                        i += 1
                    if not peek("num"):
                        raise PolyParseError(f"missing exponent after '^' for {name}")
                    e = esign * int(toks[i][1])
                    i += 1
                exps[index[name]] += e
            else:
                raise PolyParseError(f"expected a number or variable at token {i}")
            seen_factor = True
            if peek("*"):
                i += 1
                continue
            break
        if not seen_factor:
            raise PolyParseError("dangling sign")
        key = tuple(exps)
        out[key] = out.get(key, 0) + sign * coef
    return {k: v for k, v in out.items() if v != 0}
