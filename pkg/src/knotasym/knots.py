from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal

__all__ = ["KnotSpec"]

_SPEC = re.compile(r"^\s*(twist|torus)\s*:\s*([+-]?\d+)\s*$")


@dataclass(frozen=True)
class KnotSpec:
    """Twist knot ``K_p`` (p != 0) or torus knot ``T(2, 2p+1)`` (p >= 1).

    ``K_-1`` is the figure-eight, ``K_1`` the left-hand trefoil and
    ``torus:1`` the right-hand trefoil.
    """

    kind: Literal["twist", "torus"]
    p: int

    def __post_init__(self):
        if self.kind == "twist":
            if self.p == 0:
                raise ValueError("twist knot index p must be nonzero")
        elif self.kind == "torus":
            if self.p < 1:
                raise ValueError("torus knot T(2,2p+1) needs p >= 1")
        else:
            raise ValueError(f"unknown knot kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> KnotSpec:
        mt = _SPEC.match(text)
        if mt is None:
            raise ValueError(f"bad knot spec {text!r}; expected twist:<p> or torus:<p>")
        return cls(mt.group(1), int(mt.group(2)))  # type: ignore[arg-type]

    def __str__(self) -> str:
        return f"{self.kind}:{self.p}"
