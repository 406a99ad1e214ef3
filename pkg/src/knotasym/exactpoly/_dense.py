"""Dense integer-coefficient convolution.

Large products go through Kronecker substitution: both operands are
packed into one Python integer with fixed-width slots, multiplied by the
interpreter's bignum routine, and unpacked.  Slot width is chosen from a
coefficient bound so slots never overlap.
"""

from __future__ import annotations

__all__ = ["dense_mul", "trim"]

_SCHOOLBOOK_LIMIT = 4096


def trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pack(coeffs: list[int], nbytes: int) -> int:
    pos = bytearray()
    neg = bytearray()
    zero = bytes(nbytes)
    for c in coeffs:
        if c >= 0:
            pos += c.to_bytes(nbytes, "little")
            neg += zero
        else:
            pos += zero
            neg += (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, n: int, nbytes: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = (value + bias).to_bytes(n * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)]


def dense_mul(a: list[int], b: list[int]) -> list[int]:
    """Product of two ascending coefficient lists (exact)."""
    if not a or not b:
        return []
    na, nb = len(a), len(b)
    if na * nb <= _SCHOOLBOOK_LIMIT:
        out = [0] * (na + nb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(out)
    bound = max(abs(x) for x in a) * max(abs(y) for y in b) * min(na, nb)
    nbytes = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return trim(_unpack(prod, na + nb - 1, nbytes))
