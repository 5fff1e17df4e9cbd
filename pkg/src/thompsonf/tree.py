"""Rooted binary trees stored as preorder bitstrings.

A caret is written ``1`` followed by the encodings of its left and right
subtrees, a leaf is written ``0``.  Trees are immutable values; every
algorithm here walks the bitstring iteratively, so arbitrarily deep trees
(long left or right spines) are safe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence

import numpy as np

__all__ = [
    "Tree",
    "TreeParseError",
    "CaretPosition",
    "LEAF",
    "caret",
    "parse",
    "serialize",
    "build_balanced",
    "right_spine",
    "left_spine",
    "caret_positions",
    "random_tree",
    "to_dot",
]

# caret sides as reported by caret_positions
ROOT = "root"
LEFT = "left"
RIGHT = "right"
INTERIOR = "interior"


class TreeParseError(ValueError):
    """Malformed preorder bitstring."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_FAST_SCAN = 4096


def subtree_end(bits: str, start: int) -> int:
    """Index one past the end of the subtree encoded at ``bits[start]``."""
    if len(bits) - start > _FAST_SCAN:
        return _subtree_end_np(bits, start)
    need = 1
    i = start
    n = len(bits)
    while need:
        if i >= n:
            raise TreeParseError("premature end of bitstring", i)
        need += 1 if bits[i] == "1" else -1
        i += 1
    return i


def _subtree_end_np(bits: str, start: int) -> int:
    steps = np.frombuffer(bits[start:].encode("ascii"), dtype=np.uint8).astype(np.int32)
    # '1' -> +1, '0' -> -1; the subtree closes where the running sum first hits -1
    depth = np.cumsum(2 * steps - 97)
    hits = np.flatnonzero(depth == -1)
    if not len(hits):
        raise TreeParseError("premature end of bitstring", len(bits))
    return start + int(hits[0]) + 1


def _validate(bits: str) -> None:
    need = 1
    for i, ch in enumerate(bits):
        if need == 0:
            raise TreeParseError("trailing characters", i)
        if ch == "1":
            need += 1
        elif ch == "0":
            need -= 1
        else:
            raise TreeParseError(f"invalid character {ch!r}", i)
    if need:
        raise TreeParseError("premature end of bitstring", len(bits))


class Tree:
    """Immutable rooted binary tree, compared and hashed by its encoding."""

    __slots__ = ("bits", "_split", "_cache")

    def __init__(self, bits: str, *, check: bool = True):
        if check:
            _validate(bits)
        self.bits = bits
        self._split: Optional[int] = None
        self._cache: dict = {}

    @classmethod
    def _trusted(cls, bits: str) -> "Tree":
        return cls(bits, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        if len(self.bits) > 40:
            return f"Tree({self.bits[:37]!r}... {self.n_carets} carets)"
        return f"Tree({self.bits!r})"

    def __len__(self) -> int:
        return self.n_carets

    @property
    def is_leaf(self) -> bool:
        return self.bits == "0"

    @property
    def n_carets(self) -> int:
        n = self._cache.get("n_carets")
        if n is None:
            n = self._cache["n_carets"] = self.bits.count("1")
        return n

    @property
    def n_leaves(self) -> int:
        return self.n_carets + 1

    def _split_at(self) -> int:
        if self._split is None:
            if self.is_leaf:
                raise ValueError("a leaf has no children")
            self._split = subtree_end(self.bits, 1)
        return self._split

    @property
    def left(self) -> "Tree":
        return Tree._trusted(self.bits[1 : self._split_at()])

    @property
    def right(self) -> "Tree":
        return Tree._trusted(self.bits[self._split_at() :])

    def children(self) -> tuple["Tree", "Tree"]:
        return self.left, self.right

    def runs(self) -> List[int]:
        """Number of carets whose leftmost leaf is leaf ``n``, for every leaf ``n``."""
        parts = self.bits.split("0")
        parts.pop()
        return [len(p) for p in parts]

    @classmethod
    def from_runs(cls, runs: Sequence[int]) -> "Tree":
        return cls("".join("1" * a + "0" for a in runs))

    def exposed_leaves(self) -> frozenset:
        """Leaf indices ``m`` such that some caret has exactly the leaves ``m, m+1``."""
        got = self._cache.get("exposed")
        if got is None:
            runs = self.runs()
            got = frozenset(
                m for m in range(len(runs) - 1) if runs[m] and not runs[m + 1]
            )
            self._cache["exposed"] = got
        return got


LEAF = Tree._trusted("0")


def caret(left: Tree, right: Tree) -> Tree:
    return Tree._trusted("1" + left.bits + right.bits)


def serialize(t: Tree) -> str:
    return t.bits


def parse(bits: str) -> Tree:
    return Tree(bits)


def build_balanced(levels: int) -> Tree:
    """Complete binary tree with ``2**levels`` leaves."""
    if levels < 0:
        raise ValueError("levels must be non-negative")
    bits = "0"
    for _ in range(levels):
        bits = "1" + bits + bits
    return Tree._trusted(bits)


def right_spine(n_carets: int) -> Tree:
    return Tree._trusted("10" * n_carets + "0")


def left_spine(n_carets: int) -> Tree:
    return Tree._trusted("1" * n_carets + "0" * (n_carets + 1))


@dataclass(frozen=True)
class CaretPosition:
    caret_index: int
    depth: int
    side: str


@dataclass
class _Frame:
    side: str
    depth: int
    in_right: bool = False
    index: int = -1


@dataclass(frozen=True)
class CaretInfo:
    """Per-caret facts collected in one preorder pass."""

    index: int
    depth: int
    side: str
    leftmost_leaf: int
    right_is_caret: bool


def _child_side(parent: Optional[_Frame]) -> str:
    if parent is None:
        return ROOT
    if parent.in_right:
        return RIGHT if parent.side in (ROOT, RIGHT) else INTERIOR
    return LEFT if parent.side in (ROOT, LEFT) else INTERIOR


def scan(t: Tree) -> List[CaretInfo]:
    """Collect :class:`CaretInfo` for every caret, in infix order."""
    cached = t._cache.get("scan")
    if cached is not None:
        return cached
    bits = t.bits
    n = t.n_carets
    sides: List[str] = [""] * n
    depths = [0] * n
    leftmost = [0] * n
    right_caret = [False] * n
    stack: List[_Frame] = []
    # leftmost leaf per open frame, kept alongside the stack
    lm_stack: List[int] = []
    leaves = 0
    counter = 0
    for ch in bits:
        parent = stack[-1] if stack else None
        if parent is not None and parent.in_right:
            right_caret[parent.index] = ch == "1"
        if ch == "1":
            stack.append(_Frame(_child_side(parent), len(stack)))
            lm_stack.append(leaves)
            continue
        leaves += 1
        while stack:
            top = stack[-1]
            if not top.in_right:
                top.in_right = True
                top.index = counter
                sides[counter] = top.side
                depths[counter] = top.depth
                leftmost[counter] = lm_stack[-1]
                counter += 1
                break
            stack.pop()
            lm_stack.pop()
    info = [
        CaretInfo(i, depths[i], sides[i], leftmost[i], right_caret[i]) for i in range(n)
    ]
    t._cache["scan"] = info
    return info


def caret_positions(t: Tree) -> List[CaretPosition]:
    """Positions of all carets in infix order; caret 0 has leaf 0 as its left child."""
    return [CaretPosition(c.index, c.depth, c.side) for c in scan(t)]


def random_tree(n_carets: int, rng: random.Random) -> Tree:
    """Random tree with exactly ``n_carets`` carets.

    The caret budget left after the root is split uniformly between the two
    subtrees, recursively.
    """
    out: List[str] = []
    todo = [n_carets]
    while todo:
        budget = todo.pop()
        if budget == 0:
            out.append("0")
            continue
        out.append("1")
        k = rng.randint(0, budget - 1)
        # right subtree is emitted after the left one
        todo.append(budget - 1 - k)
        todo.append(k)
    return Tree._trusted("".join(out))


def iter_leaf_offsets(t: Tree) -> Iterator[int]:
    """Bit offsets of the leaves of ``t``, left to right."""
    return (i for i, ch in enumerate(t.bits) if ch == "0")


def dot_body(t: Tree, prefix: str = "n") -> List[str]:
    """Node and edge lines for ``t``; carets labeled by infix number, leaves by leaf number."""
    lines: List[str] = []
    stack: List[list] = []
    leaves = 0
    counter = 0
    node_id = 0
    for ch in t.bits:
        me = f"{prefix}{node_id}"
        node_id += 1
        if stack:
            parent = stack[-1]
            side = "R" if parent[1] else "L"
            lines.append(f'{parent[0]} -> {me} [label="{side}"];')
        if ch == "1":
            stack.append([me, False])
            continue
        lines.append(f'{me} [shape=box, label="{leaves}"];')
        leaves += 1
        while stack:
            top = stack[-1]
            if not top[1]:
                top[1] = True
                lines.append(f'{top[0]} [shape=circle, label="{counter}"];')
                counter += 1
                break
            stack.pop()
    return lines


def to_dot(t: Tree, name: str = "T") -> str:
    """Graphviz DOT text for one tree."""
    body = "\n".join("  " + line for line in dot_body(t))
    return f"digraph {name} {{\n  node [fontname=Helvetica];\n{body}\n}}\n"
