"""The witness family C(k).

``w`` in C(k) has the balanced tree with ``2**(4k)`` leaves as negative tree
and, as positive tree, the tree of ``x0^(r-2) x1 x_s`` padded with right
carets to the same size, where ``r`` is the infix number of the first
right-side caret of the negative tree and ``s = 2**(4k) - 3``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .dynamics import DELTA_CHART, apply_rotation, changed_carets, predict_delta, rotation_applicable
from .element import GENERATORS, Element, apply_generator, is_reduced, TreePair
from .metric import CaretType, classify_carets, distance, fordham_length
from .normalform import burillo_D, pad_right, pair_to_normal_form, tree_from_exponents
from .tree import Tree, build_balanced

__all__ = [
    "WitnessElement",
    "ValidationReport",
    "StepRecord",
    "WitnessResourceError",
    "MAX_K",
    "build_witness",
    "first_right_caret_index",
    "validate_witness",
    "walk",
    "random_walk_word",
]

MAX_K = 5


class WitnessResourceError(MemoryError):
    pass


def first_right_caret_index(t: Tree) -> int:
    """Infix number of the root's right child."""
    if t.is_leaf or t.right.is_leaf:
        raise ValueError("tree has no right-side caret")
    return t.left.n_leaves + t.right.left.n_leaves - 1


@dataclass(frozen=True)
class WitnessElement:
    k: int
    element: Element
    r: int
    s: int
    length: int

    @property
    def n(self) -> int:
        return self.length - 1

    @property
    def r_closed_form(self) -> int:
        """``2^(k-1) + 2^(k-2) - 1``, a closed-form alternative to ``r`` reported for comparison."""
        return 2 ** (self.k - 1) + 2 ** (self.k - 2) - 1

    @property
    def root_caret(self) -> int:
        """Infix number of the root caret ``R`` of the negative tree."""
        return self.element.neg.left.n_leaves - 1

    def metadata(self) -> Dict[str, int]:
        return {
            "k": self.k,
            "n": self.n,
            "r": self.r,
            "r_closed_form": self.r_closed_form,
            "s": self.s,
            "length": self.length,
        }


def positive_tree(r: int, s: int, n_leaves: int) -> Tree:
    """Tree of the positive word ``x0^(r-2) x1 x_s`` padded to ``n_leaves``."""
    exps = [0] * (s + 1)
    exps[0] += r - 2
    exps[1] += 1
    exps[s] += 1
    return pad_right(tree_from_exponents(exps), n_leaves)


def build_witness(k: int, max_k: int = MAX_K) -> WitnessElement:
    if k < 2:
        raise ValueError(f"witness family needs k >= 2, got {k}")
    if k > max_k:
        raise WitnessResourceError(
            f"k={k} needs trees with {2 ** (4 * k)} leaves; raise max_k above {max_k} to allow it"
        )
    neg = build_balanced(4 * k)
    r = first_right_caret_index(neg)
    s = 2 ** (4 * k) - 3
    pos = positive_tree(r, s, neg.n_leaves)
    if not is_reduced(TreePair(neg, pos)):
        raise AssertionError("witness pair is not reduced")
    e = Element(neg, pos, reduced=True)
    return WitnessElement(k, e, r, s, fordham_length(e))


@dataclass
class ValidationReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, good in self.checks.items() if not good]


def _is_complete(t: Tree, min_levels: int) -> bool:
    levels = t.n_leaves.bit_length() - 1
    return levels >= min_levels and t.n_leaves == 2**levels and t == build_balanced(levels)


def _side_subtrees(t: Tree, count: int, side: str) -> List[Tree]:
    """Inner subtrees of the first ``count`` carets down one side of ``t``."""
    out = []
    node = t
    for _ in range(count):
        if node.is_leaf:
            break
        if side == "left":
            out.append(node.right)
            node = node.left
        else:
            out.append(node.left)
            node = node.right
    return out


def validate_witness(w: WitnessElement) -> ValidationReport:
    rep = ValidationReport()
    k = w.k
    neg, pos = w.element.neg, w.element.pos
    size = 2 ** (4 * k)
    rep.checks["neg_leaf_count"] = neg.n_leaves == size
    rep.checks["pos_leaf_count"] = pos.n_leaves == size
    if not (rep.checks["neg_leaf_count"] and rep.checks["pos_leaf_count"]):
        return rep
    rep.checks["neg_balanced"] = neg == build_balanced(4 * k)
    rep.checks["s_value"] = w.s == size - 3
    rep.checks["r_structural"] = w.r == first_right_caret_index(neg)
    rep.checks["pos_exposed_carets"] = pos.exposed_leaves() == frozenset({1, w.s})
    rep.checks["reduced"] = is_reduced(TreePair(neg, pos))
    nf = pair_to_normal_form(w.element)
    rep.checks["positive_word"] = nf.positive == ((0, w.r - 2), (1, 1), (w.s, 1))
    # carets near the root on either side carry complete subtrees of >= k+2 levels;
    # the right side below the root only has 2k-1 such carets when k == 2
    need = k + 2
    left_ok = _side_subtrees(neg, 2 * k, "left")
    right_ok = _side_subtrees(neg.right, 2 * k - 1, "right")
    rep.checks["left_side_subtrees"] = len(left_ok) == 2 * k and all(
        _is_complete(t, need) for t in left_ok
    )
    rep.checks["right_side_subtrees"] = len(right_ok) == 2 * k - 1 and all(
        _is_complete(t, need) for t in right_ok
    )
    length = fordham_length(w.element)
    rep.checks["length_recorded"] = length == w.length
    d = burillo_D(nf)
    rep.checks["length_sandwich"] = d <= 3 * length <= 9 * d
    a = apply_generator(w.element, "x0")
    b = apply_generator(w.element, "X0")
    la, lb = fordham_length(a), fordham_length(b)
    rep.checks["w_x0_length"] = la == length - 1
    rep.checks["w_X0_length"] = lb == length - 1
    rep.checks["distance_two"] = distance(a, b) == 2
    rep.details.update(length=length, len_w_x0=la, len_w_X0=lb, quasi_length=d)
    return rep


@dataclass(frozen=True)
class StepRecord:
    generator: str
    applicable: bool
    affected: Optional[int] = None
    old_type: Optional[CaretType] = None
    new_type: Optional[CaretType] = None
    pairing: Optional[CaretType] = None
    measured: Optional[int] = None
    predicted: Optional[int] = None
    pos_unchanged: bool = True
    n_changed: int = 0

    @property
    def chart_ok(self) -> bool:
        if not self.applicable or self.n_changed != 1:
            return False
        chart = DELTA_CHART[self.generator]
        return (
            self.old_type is chart[0]
            and self.new_type is chart[1]
            and self.pairing in chart[2]
            and self.measured == self.predicted
        )

    def to_dict(self) -> dict:
        def s(v):
            return None if v is None else str(v)

        return {
            "generator": self.generator,
            "applicable": self.applicable,
            "affected": self.affected,
            "old_type": s(self.old_type),
            "new_type": s(self.new_type),
            "pairing": s(self.pairing),
            "measured": self.measured,
            "predicted": self.predicted,
            "pos_unchanged": self.pos_unchanged,
        }


def step(e: Element, g: str) -> tuple[Element, StepRecord]:
    """Apply ``g`` by rotation and describe the single caret it changes."""
    if not rotation_applicable(e, g):
        return apply_generator(e, g), StepRecord(g, False)
    f = apply_rotation(e, g)
    changed = changed_carets(e, f)
    measured = fordham_length(f) - fordham_length(e)
    rec = StepRecord(g, True, measured=measured, pos_unchanged=f.pos == e.pos,
                     n_changed=len(changed))
    if len(changed) == 1:
        i = changed[0]
        pairing = classify_carets(e.pos)[i]
        try:
            predicted = predict_delta(pairing, g)
        except ValueError:
            predicted = None
        rec = StepRecord(
            g,
            True,
            affected=i,
            old_type=classify_carets(e.neg)[i],
            new_type=classify_carets(f.neg)[i],
            pairing=pairing,
            measured=measured,
            predicted=predicted,
            pos_unchanged=f.pos == e.pos,
            n_changed=1,
        )
    return f, rec


def walk(
    start: Element, word: Sequence[str], memo: Optional[dict] = None
) -> List[StepRecord]:
    """Step records along ``word`` from ``start``.

    ``memo`` maps word prefixes to ``(element, record)`` and may be shared
    between walks from the same start.
    """
    records = []
    e = start
    for i, g in enumerate(word):
        key = tuple(word[: i + 1])
        if memo is not None and key in memo:
            e, rec = memo[key]
        else:
            e, rec = step(e, g)
            if memo is not None:
                memo[key] = (e, rec)
        records.append(rec)
    return records


def random_walk_word(length: int, rng: random.Random) -> List[str]:
    return [rng.choice(GENERATORS) for _ in range(length)]
