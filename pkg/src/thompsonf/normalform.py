"""Normal forms in the infinite presentation and leaf exponents.

A normal form ``x_{i1}^{r1} ... x_{in}^{rn} x_{jm}^{-sm} ... x_{j1}^{-s1}`` is
stored as two lists of ``(index, exponent)`` pairs, both with strictly
increasing indices.  The positive part is read off the positive tree, the
negative part off the negative tree.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .element import Element
from .tree import RIGHT, ROOT, Tree, scan

__all__ = [
    "NormalForm",
    "NormalFormError",
    "leaf_exponents",
    "tree_from_exponents",
    "pad_right",
    "pair_to_normal_form",
    "normal_form_to_pair",
    "is_unique_normal_form",
    "normalize",
    "burillo_D",
    "random_normal_form",
]

Part = Tuple[Tuple[int, int], ...]


class NormalFormError(ValueError):
    pass


def _check_part(part: Part, label: str) -> None:
    last = -1
    for index, exp in part:
        if index < 0 or exp <= 0:
            raise NormalFormError(f"{label} part has bad letter x{index}^{exp}")
        if index <= last:
            raise NormalFormError(f"{label} part indices must strictly increase")
        last = index


@dataclass(frozen=True)
class NormalForm:
    positive: Part = ()
    negative: Part = ()

    def __post_init__(self):
        object.__setattr__(self, "positive", tuple(tuple(p) for p in self.positive))
        object.__setattr__(self, "negative", tuple(tuple(p) for p in self.negative))
        _check_part(self.positive, "positive")
        _check_part(self.negative, "negative")

    def __str__(self) -> str:
        def letter(i, e):
            return f"x{i}" if e == 1 else f"x{i}^{e}"

        words = [letter(i, e) for i, e in self.positive]
        words += [letter(i, -e) for i, e in reversed(self.negative)]
        return " ".join(words)

    @classmethod
    def parse(cls, text: str) -> "NormalForm":
        """Inverse of ``str``: ``"x0^2 x1 x9^-1 x0^-2"``."""
        pos: List[Tuple[int, int]] = []
        neg: List[Tuple[int, int]] = []
        for tok in text.split():
            m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise NormalFormError(f"bad normal form token {tok!r}")
            index, exp = int(m.group(1)), int(m.group(2) or 1)
            if exp == 0:
                raise NormalFormError(f"zero exponent in {tok!r}")
            if exp > 0:
                if neg:
                    raise NormalFormError("positive letter after a negative one")
                pos.append((index, exp))
            else:
                neg.append((index, -exp))
        return cls(tuple(pos), tuple(reversed(neg)))

    def exponent_vectors(self) -> Tuple[List[int], List[int]]:
        """Dense ``(positive, negative)`` exponent vectors indexed by generator."""
        size = 1 + max([i for i, _ in self.positive + self.negative], default=-1)
        p = [0] * size
        n = [0] * size
        for i, e in self.positive:
            p[i] = e
        for i, e in self.negative:
            n[i] = e
        return p, n


def leaf_exponents(t: Tree) -> List[int]:
    """``E(n)`` for every leaf: left edges above leaf ``n`` that stay off the right side."""
    exps = [0] * t.n_leaves
    for c in scan(t):
        if c.side not in (ROOT, RIGHT):
            exps[c.leftmost_leaf] += 1
    return exps


def _sparse(exps: Sequence[int]) -> Part:
    return tuple((i, e) for i, e in enumerate(exps) if e)


def tree_from_exponents(exps: Sequence[int]) -> Tree:
    """Smallest tree whose leaf exponents start with ``exps`` (then zeros).

    The leaves split greedily into consecutive blocks; each block becomes the
    left subtree of one right-side caret, whose preorder runs are exactly the
    block's exponents.
    """
    last = max((i for i, e in enumerate(exps) if e), default=-1)
    blocks: List[str] = []
    n = 0
    while n <= last:
        owed = 0
        chunk: List[str] = []
        while True:
            e = exps[n] if n < len(exps) else 0
            owed += e
            chunk.append("1" * e + "0")
            n += 1
            if owed == 0:
                break
            owed -= 1
        blocks.append("1" + "".join(chunk))
    return Tree._trusted("".join(blocks) + "0")


def pad_right(t: Tree, n_leaves: int) -> Tree:
    """Append right-side carets with leaf left children until ``n_leaves``."""
    extra = n_leaves - t.n_leaves
    if extra < 0:
        raise ValueError("cannot pad to fewer leaves")
    return Tree._trusted(t.bits[:-1] + "10" * extra + "0")


def pair_to_normal_form(e: Element) -> NormalForm:
    return NormalForm(_sparse(leaf_exponents(e.pos)), _sparse(leaf_exponents(e.neg)))


def normal_form_to_pair(nf: NormalForm) -> Element:
    p, n = nf.exponent_vectors()
    pos, neg = tree_from_exponents(p), tree_from_exponents(n)
    size = max(pos.n_leaves, neg.n_leaves)
    return Element(pad_right(neg, size), pad_right(pos, size))


def is_unique_normal_form(nf: NormalForm) -> bool:
    pos = {i for i, _ in nf.positive}
    neg = {i for i, _ in nf.negative}
    return all(i + 1 in pos or i + 1 in neg for i in pos & neg)


def normalize(nf: NormalForm) -> NormalForm:
    """Rewrite a raw normal form into the unique one using ``x_i^-1 x_j x_i = x_{j+1}``.

    While some index ``i`` sits in both parts with ``i+1`` in neither, one
    ``x_i`` cancels one ``x_i^-1`` and every higher index drops by one.
    """
    pos: Dict[int, int] = dict(nf.positive)
    neg: Dict[int, int] = dict(nf.negative)
    while True:
        bad = [
            i for i in sorted(pos.keys() & neg.keys()) if i + 1 not in pos and i + 1 not in neg
        ]
        if not bad:
            break
        i = bad[0]

        def shift(part: Dict[int, int]) -> Dict[int, int]:
            out: Dict[int, int] = {}
            for j, e in part.items():
                if j == i:
                    if e > 1:
                        out[j] = e - 1
                elif j > i:
                    out[j - 1] = e
                else:
                    out[j] = e
            return out

        pos, neg = shift(pos), shift(neg)
    return NormalForm(tuple(sorted(pos.items())), tuple(sorted(neg.items())))


def burillo_D(nf: NormalForm) -> int:
    """Exponent sum plus the largest index of each part (0 for an empty part)."""
    total = sum(e for _, e in nf.positive) + sum(e for _, e in nf.negative)
    top_pos = nf.positive[-1][0] if nf.positive else 0
    top_neg = nf.negative[-1][0] if nf.negative else 0
    return total + top_pos + top_neg


def random_normal_form(
    rng: random.Random, max_index: int = 8, max_exp: int = 3, density: float = 0.4
) -> NormalForm:
    """Random valid raw normal form; pass through :func:`normalize` for a unique one."""

    def part():
        return tuple(
            (i, rng.randint(1, max_exp)) for i in range(max_index + 1) if rng.random() < density
        )

    return NormalForm(part(), part())
