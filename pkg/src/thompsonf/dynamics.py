"""Generators acting on the negative tree as rotations.

Under the structural preconditions below, right multiplication by a
generator leaves the positive tree alone and rotates the negative tree:
``x0``/``X0`` rotate clockwise/counterclockwise at the root, ``x1``/``X1``
clockwise/counterclockwise at the root's right child ``C_R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .element import Element, apply_generator
from .metric import CaretType, classify_carets
from .tree import Tree, subtree_end

__all__ = [
    "RotationPreconditions",
    "RotationError",
    "DELTA_CHART",
    "rotation_preconditions",
    "rotation_applicable",
    "apply_rotation",
    "apply_fast",
    "alpha_index",
    "predict_delta",
    "changed_carets",
]

T = CaretType

# generator -> (old type, new type, {T+ pairing: length delta})
DELTA_CHART: Dict[str, Tuple[CaretType, CaretType, Dict[CaretType, int]]] = {
    "x0": (T.LL, T.RI, {T.LL: -1, T.RNI: +1}),
    "X0": (T.RI, T.LL, {T.LL: +1, T.RNI: -1}),
    "x1": (T.IR, T.RI, {T.LL: -1, T.RNI: -1}),
    "X1": (T.RI, T.IR, {T.LL: +1, T.RNI: +1}),
}


class RotationError(ValueError):
    """Rotation fast path refused; use ``element.apply_generator`` instead."""


@dataclass(frozen=True)
class RotationPreconditions:
    generator: str
    structural: bool
    keeps_reduced: bool

    @property
    def ok(self) -> bool:
        return self.structural and self.keeps_reduced


def _split(bits: str, at: int) -> Tuple[str, str, int]:
    """Left and right encodings of the caret at ``bits[at]`` plus its end offset."""
    mid = subtree_end(bits, at + 1)
    end = subtree_end(bits, mid)
    return bits[at + 1 : mid], bits[mid:end], end


def _leaves(bits: str) -> int:
    return (len(bits) + 1) // 2


def _rotate(neg: Tree, g: str) -> Optional[Tuple[str, str, int]]:
    """Rotated encoding of ``neg``, plus the moved caret's encoding and its first leaf.

    Returns None when the structural precondition for ``g`` fails.
    """
    bits = neg.bits
    if bits == "0":
        return None
    left, right, _ = _split(bits, 0)
    if g == "x0":
        if left == "0":
            return None
        a, b, _ = _split(left, 0)
        moved = "1" + b + right
        return "1" + a + moved, moved, _leaves(a)
    if g == "X0":
        if right == "0":
            return None
        b, c, _ = _split(right, 0)
        moved = "1" + left + b
        return "1" + moved + c, moved, 0
    if right == "0":
        return None
    a, rest, _ = _split(right, 0)
    base = _leaves(left)
    if g == "x1":
        if a == "0":
            return None
        a1, a2, _ = _split(a, 0)
        moved = "1" + a2 + rest
        return "1" + left + "1" + a1 + moved, moved, base + _leaves(a1)
    if g == "X1":
        if rest == "0":
            return None
        b, c, _ = _split(rest, 0)
        moved = "1" + a + b
        return "1" + left + "1" + moved + c, moved, base
    raise ValueError(f"unknown generator {g!r}")


def rotation_preconditions(e: Element, g: str) -> RotationPreconditions:
    got = _rotate(e.neg, g)
    if got is None:
        return RotationPreconditions(g, False, False)
    _, moved, first_leaf = got
    # only the re-hung caret can have become exposed
    exposed = moved[:3] == "100" and first_leaf in e.pos.exposed_leaves()
    return RotationPreconditions(g, True, not exposed)


def rotation_applicable(e: Element, g: str) -> bool:
    return rotation_preconditions(e, g).ok


def apply_rotation(e: Element, g: str) -> Element:
    """``e * g`` as a rotation of the negative tree; the positive tree is reused."""
    got = _rotate(e.neg, g)
    if got is None:
        raise RotationError(f"{g} rotation needs a nonempty subtree; use apply_generator")
    bits, moved, first_leaf = got
    if moved[:3] == "100" and first_leaf in e.pos.exposed_leaves():
        raise RotationError(f"{g} would leave an unreduced pair; use apply_generator")
    return Element(Tree._trusted(bits), e.pos, reduced=True)


def apply_fast(e: Element, g: str) -> Element:
    """Rotation when applicable, general multiplication otherwise."""
    if rotation_applicable(e, g):
        return apply_rotation(e, g)
    return apply_generator(e, g)


def alpha_index(t: Tree) -> int:
    """Leaf number of the leftmost leaf in the root's right subtree."""
    if t.is_leaf or t.right.is_leaf:
        raise ValueError("root has an empty right subtree")
    return t.left.n_leaves


def predict_delta(pairing: CaretType, g: str) -> int:
    pairing = CaretType(pairing)
    if g not in DELTA_CHART:
        raise ValueError(f"unknown generator {g!r}")
    deltas = DELTA_CHART[g][2]
    if pairing not in deltas:
        raise ValueError(f"chart covers only LL and RNI pairings, not {pairing}")
    return deltas[pairing]


def changed_carets(before: Element, after: Element) -> List[int]:
    """Infix indices whose (neg type, pos type) pair differs between two elements."""
    a_neg, a_pos = classify_carets(before.neg), classify_carets(before.pos)
    b_neg, b_pos = classify_carets(after.neg), classify_carets(after.pos)
    if len(a_neg) != len(b_neg):
        raise ValueError("caret counts differ")
    return [
        i
        for i in range(len(a_neg))
        if a_neg[i] is not b_neg[i] or a_pos[i] is not b_pos[i]
    ]

