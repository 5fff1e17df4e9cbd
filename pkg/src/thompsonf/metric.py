"""Exact word length in the generating set {x0, x1} from caret types."""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import List, Tuple

from .element import Element, invert, multiply
from .tree import INTERIOR, LEFT, RIGHT, ROOT, Tree, scan

__all__ = [
    "CaretType",
    "WEIGHTS",
    "classify_carets",
    "pair_weight",
    "caret_pairings",
    "fordham_length",
    "distance",
]


class CaretType(str, Enum):
    L0 = "L0"
    LL = "LL"
    I0 = "I0"
    IR = "IR"
    RI = "RI"
    RNI = "RNI"
    R0 = "R0"

    def __str__(self) -> str:
        return self.value

    @property
    def is_right(self) -> bool:
        return self in (CaretType.RI, CaretType.RNI, CaretType.R0)

    @property
    def is_left(self) -> bool:
        return self in (CaretType.L0, CaretType.LL)

    @property
    def is_interior(self) -> bool:
        return self in (CaretType.I0, CaretType.IR)


T = CaretType
_ORDER = (T.R0, T.RNI, T.RI, T.LL, T.I0, T.IR)
_ROWS = (
    (0, 2, 2, 1, 1, 3),
    (2, 2, 2, 1, 1, 3),
    (2, 2, 2, 1, 3, 3),
    (1, 1, 1, 2, 2, 2),
    (1, 1, 3, 2, 2, 4),
    (3, 3, 3, 2, 4, 4),
)
WEIGHTS = {
    (a, b): _ROWS[i][j] for i, a in enumerate(_ORDER) for j, b in enumerate(_ORDER)
}
WEIGHTS[(T.L0, T.L0)] = 0


def classify_carets(t: Tree) -> List[CaretType]:
    """Caret types in infix order."""
    cached = t._cache.get("types")
    if cached is None:
        cached = t._cache["types"] = _classify(t.bits)
    return cached


@lru_cache(maxsize=256)
def _classify(bits: str) -> List[CaretType]:
    info = scan(Tree._trusted(bits))
    n = len(info)
    interior = [c.side == INTERIOR for c in info]
    last_interior = max((i for i in range(n) if interior[i]), default=-1)
    out: List[CaretType] = []
    for c in info:
        i = c.index
        if i == 0:
            out.append(T.L0)
        elif c.side in (LEFT, ROOT):
            out.append(T.LL)
        elif c.side == INTERIOR:
            out.append(T.IR if c.right_is_caret else T.I0)
        elif i + 1 < n and interior[i + 1]:
            out.append(T.RI)
        elif last_interior > i:
            out.append(T.RNI)
        else:
            out.append(T.R0)
    return out


def pair_weight(a: CaretType, b: CaretType) -> int:
    a, b = CaretType(a), CaretType(b)
    if (a is T.L0) != (b is T.L0):
        raise ValueError(f"L0 can only pair with L0, got ({a}, {b})")
    return WEIGHTS[(a, b)]


def caret_pairings(e: Element) -> List[Tuple[CaretType, CaretType, int]]:
    """``(neg type, pos type, weight)`` for each caret index."""
    neg = classify_carets(e.neg)
    pos = classify_carets(e.pos)
    return [(a, b, pair_weight(a, b)) for a, b in zip(neg, pos)]


def fordham_length(e: Element) -> int:
    """Word length of ``e`` with respect to {x0, x1}."""
    got = e._cache.get("length")
    if got is None:
        neg = classify_carets(e.neg)
        pos = classify_carets(e.pos)
        if len(neg) != len(pos):
            raise ValueError("trees of a reduced pair must have equal caret counts")
        if neg and (neg[0] is not T.L0 or pos[0] is not T.L0):
            raise AssertionError("caret 0 must pair (L0, L0)")
        got = sum(WEIGHTS[p] for p in zip(neg, pos))
        e._cache["length"] = got
    return got


def distance(a: Element, b: Element) -> int:
    return fordham_length(multiply(invert(a), b))
