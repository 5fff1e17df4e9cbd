"""Elements of F as reduced tree pair diagrams.

An element is a pair ``(neg, pos)`` of trees with equal leaf counts.  The
product ``a * b`` expands ``a.neg`` and ``b.pos`` to their least common
refinement and returns ``(b.neg', a.pos')``, so right multiplication by a
generator acts on the negative tree and the normal form reads ``P N^-1``
with ``P`` read off the positive tree.
"""

from __future__ import annotations

import json
import random
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .tree import LEAF, Tree, random_tree, right_spine, subtree_end

__all__ = [
    "TreePair",
    "Element",
    "StructureError",
    "GENERATORS",
    "INVERSE",
    "reduce",
    "multiply",
    "invert",
    "equals",
    "identity",
    "generator",
    "apply_generator",
    "apply_word",
    "parse_word",
    "random_element",
]

GENERATORS = ("x0", "X0", "x1", "X1")
INVERSE = {"x0": "X0", "X0": "x0", "x1": "X1", "X1": "x1"}


class StructureError(ValueError):
    """Trees of a pair disagree in leaf count."""


class TreePair(NamedTuple):
    neg: Tree
    pos: Tree


def _reduce_runs(neg: List[int], pos: List[int]) -> Tuple[List[int], List[int]]:
    while True:
        common = [
            m
            for m in range(len(neg) - 1)
            if neg[m] and pos[m] and not neg[m + 1] and not pos[m + 1]
        ]
        if not common:
            return neg, pos
        drop = set(common)
        new_neg: List[int] = []
        new_pos: List[int] = []
        for idx in range(len(neg)):
            if idx - 1 in drop:
                continue
            cut = 1 if idx in drop else 0
            new_neg.append(neg[idx] - cut)
            new_pos.append(pos[idx] - cut)
        neg, pos = new_neg, new_pos


class Element:
    """A group element held as its unique reduced tree pair."""

    __slots__ = ("neg", "pos", "_cache")

    def __init__(self, neg: Tree, pos: Tree, *, reduced: bool = False):
        if neg.n_leaves != pos.n_leaves:
            raise StructureError(
                f"leaf counts differ: neg has {neg.n_leaves}, pos has {pos.n_leaves}"
            )
        if not reduced:
            a, b = _reduce_runs(neg.runs(), pos.runs())
            if len(a) != neg.n_leaves:
                neg, pos = Tree.from_runs(a), Tree.from_runs(b)
        self.neg = neg
        self.pos = pos
        self._cache: dict = {}

    @property
    def key(self) -> str:
        """Canonical form: ``serialize(neg) + ":" + serialize(pos)``."""
        return self.neg.bits + ":" + self.pos.bits

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.neg == other.neg and self.pos == other.pos

    def __hash__(self) -> int:
        return hash((self.neg.bits, self.pos.bits))

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __invert__(self) -> "Element":
        return invert(self)

    def __repr__(self) -> str:
        return f"Element(neg={self.neg!r}, pos={self.pos!r})"

    @property
    def n_carets(self) -> int:
        return self.neg.n_carets

    def is_identity(self) -> bool:
        return self.neg.is_leaf

    def to_dict(self) -> Dict[str, str]:
        return {"neg": self.neg.bits, "pos": self.pos.bits}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> "Element":
        try:
            neg, pos = data["neg"], data["pos"]
        except (KeyError, TypeError):
            raise ValueError('element JSON needs "neg" and "pos" bitstrings') from None
        return cls(Tree(neg), Tree(pos))

    @classmethod
    def from_json(cls, text: str) -> "Element":
        return cls.from_dict(json.loads(text))


def reduce(pair: TreePair) -> Element:
    return Element(pair.neg, pair.pos)


def is_reduced(pair: TreePair) -> bool:
    return not (pair.neg.exposed_leaves() & pair.pos.exposed_leaves())


def identity() -> Element:
    return Element(LEAF, LEAF, reduced=True)


def _refine(a: str, b: str) -> Tuple[List[str], List[str]]:
    """Grafts turning each tree into the union of ``a`` and ``b``.

    Returns, per leaf of ``a`` and per leaf of ``b``, the encoding of the
    subtree of the union hanging at that leaf (``"0"`` if none).
    """
    ga: List[str] = []
    gb: List[str] = []
    i = j = 0
    n = len(a)
    while i < n:
        ca, cb = a[i], b[j]
        if ca == "1" and cb == "1":
            i += 1
            j += 1
        elif ca == "1":
            e = subtree_end(a, i)
            gb.append(a[i:e])
            ga.extend("0" * ((e - i + 1) // 2))
            i = e
            j += 1
        elif cb == "1":
            e = subtree_end(b, j)
            ga.append(b[j:e])
            gb.extend("0" * ((e - j + 1) // 2))
            j = e
            i += 1
        else:
            ga.append("0")
            gb.append("0")
            i += 1
            j += 1
    return ga, gb


def _graft(t: Tree, grafts: Sequence[str]) -> Tree:
    parts = t.bits.split("0")
    out = [p + g for p, g in zip(parts, grafts)]
    return Tree._trusted("".join(out))


def multiply(a: Element, b: Element) -> Element:
    if b.pos == a.neg:
        return Element(b.neg, a.pos)
    ga, gb = _refine(a.neg.bits, b.pos.bits)
    return Element(_graft(b.neg, gb), _graft(a.pos, ga))


def invert(a: Element) -> Element:
    return Element(a.pos, a.neg, reduced=True)


def equals(a: Element, b: Element) -> bool:
    return a == b


def _x0() -> Element:
    return Element(right_spine(2), Tree._trusted("11000"), reduced=True)


def _x1() -> Element:
    return Element(right_spine(3), Tree._trusted("1011000"), reduced=True)


_GEN_CACHE: Dict[str, Element] = {}


def generator(g: str) -> Element:
    """Element for a generator symbol: ``x0``, ``X0``, ``x1``, ``X1`` (upper case = inverse)."""
    if not _GEN_CACHE:
        x0, x1 = _x0(), _x1()
        _GEN_CACHE.update({"x0": x0, "X0": invert(x0), "x1": x1, "X1": invert(x1)})
    try:
        return _GEN_CACHE[g]
    except KeyError:
        raise ValueError(f"unknown generator {g!r}; expected one of {GENERATORS}") from None


def apply_generator(a: Element, g: str) -> Element:
    """``a * g`` by general multiplication."""
    return multiply(a, generator(g))


def parse_word(word: str) -> List[str]:
    """Split ``"x0X1x1"`` into generator symbols."""
    word = word.replace(" ", "")
    if len(word) % 2:
        raise ValueError(f"malformed generator word {word!r}")
    letters = [word[i : i + 2] for i in range(0, len(word), 2)]
    for pos, g in enumerate(letters):
        if g not in INVERSE:
            raise ValueError(f"unknown generator {g!r} at letter {pos} of {word!r}")
    return letters


def apply_word(a: Element, word) -> Element:
    letters = parse_word(word) if isinstance(word, str) else word
    for g in letters:
        a = apply_generator(a, g)
    return a


def random_element(max_carets: int, rng: random.Random) -> Element:
    """Reduce a pair of independent random trees of a random common size."""
    n = rng.randint(0, max_carets)
    return Element(random_tree(n, rng), random_tree(n, rng))
