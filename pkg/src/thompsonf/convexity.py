"""Balls in the Cayley graph, inside-ball path search and the caret audit.

The search looks for a path between two elements of ``B(n)`` whose every
vertex stays in ``B(n)``.  For the witness pair ``w x0``, ``w x0^-1`` it also
tracks the root caret ``R`` of the witness's negative tree (by infix
number) and records the length at the first prefix where ``R`` stops being
a right caret.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .dynamics import apply_rotation, rotation_applicable
from .element import GENERATORS, INVERSE, Element, apply_generator, identity, parse_word
from .metric import CaretType, classify_carets, fordham_length
from .witness import StepRecord, WitnessElement, step

__all__ = [
    "Ball",
    "BallResourceError",
    "SearchReport",
    "AuditReport",
    "AuditError",
    "DEFAULT_BALL_BOUND",
    "ball",
    "inside_ball_search",
    "witness_search",
    "audit_path",
]

DEFAULT_BALL_BOUND = 7


class BallResourceError(MemoryError):
    pass


@dataclass
class Ball:
    n: int
    members: Dict[str, int]
    elements: Dict[str, Element] = field(repr=False)
    sphere_sizes: List[int]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e: Element) -> bool:
        return e.key in self.members

    def distance(self, e: Element) -> int:
        return self.members[e.key]


def ball(n: int, bound: int = DEFAULT_BALL_BOUND) -> Ball:
    """Breadth-first ball of radius ``n`` about the identity."""
    if n < 0:
        raise ValueError("radius must be non-negative")
    if n > bound:
        raise BallResourceError(f"radius {n} exceeds the configured bound {bound}")
    start = identity()
    members = {start.key: 0}
    elements = {start.key: start}
    frontier = [start]
    spheres = [1]
    for d in range(1, n + 1):
        nxt = []
        for e in frontier:
            for g in GENERATORS:
                f = apply_generator(e, g)
                if f.key not in members:
                    members[f.key] = d
                    elements[f.key] = f
                    nxt.append(f)
        frontier = nxt
        spheres.append(len(nxt))
    return Ball(n, members, elements, spheres)


@dataclass
class RootCheck:
    """Length at the first prefix where the tracked caret stops being a right caret."""

    word: str
    length: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.length == self.expected


@dataclass
class SearchReport:
    source: Element
    target: Element
    n: int
    cap: int
    found: bool = False
    min_inside_length: Optional[int] = None
    shortest_path: Optional[str] = None
    paths_explored: int = 0
    exhausted: bool = True
    exit_witnesses: List[str] = field(default_factory=list)
    root_checks: List[RootCheck] = field(default_factory=list)
    untracked_prefixes: int = 0
    elapsed: float = 0.0

    @property
    def root_exceptions(self) -> List[RootCheck]:
        return [c for c in self.root_checks if not c.ok]

    def merge(self, other: "SearchReport", exit_sample: int) -> None:
        """Fold a report for a disjoint prefix partition into this one."""
        self.found = self.found or other.found
        if other.min_inside_length is not None and (
            self.min_inside_length is None or other.min_inside_length < self.min_inside_length
        ):
            self.min_inside_length = other.min_inside_length
            self.shortest_path = other.shortest_path
        self.paths_explored += other.paths_explored
        self.exhausted = self.exhausted and other.exhausted
        room = exit_sample - len(self.exit_witnesses)
        self.exit_witnesses.extend(other.exit_witnesses[: max(room, 0)])
        self.root_checks.extend(other.root_checks)
        self.untracked_prefixes += other.untracked_prefixes

    def to_dict(self, include_elements: bool = False) -> dict:
        out = {
            "n": self.n,
            "cap": self.cap,
            "found": self.found,
            "min_inside_length": self.min_inside_length,
            "shortest_path": self.shortest_path,
            "paths_explored": self.paths_explored,
            "exhausted": self.exhausted,
            "exit_witnesses": self.exit_witnesses,
            "root_checks": len(self.root_checks),
            "root_exceptions": [c.__dict__ for c in self.root_exceptions],
            "untracked_prefixes": self.untracked_prefixes,
            "elapsed_seconds": round(self.elapsed, 3),
        }
        if include_elements:
            out["source"] = self.source.to_dict()
            out["target"] = self.target.to_dict()
        return out


class _Search:
    def __init__(self, src, dst, n, cap, prune, tracked, expect, exit_sample, deadline):
        self.expect = n + 1 if expect is None else expect
        self.dst = dst
        self.n = n
        self.cap = cap
        self.prune = prune
        self.tracked = tracked
        self.exit_sample = exit_sample
        self.deadline = deadline
        self.n_carets = src.n_carets
        self.lengths: Dict[tuple, int] = {}
        self.report = SearchReport(src, dst, n, cap)

    def length(self, e: Element) -> int:
        key = (e.neg.bits, e.pos.bits)
        got = self.lengths.get(key)
        if got is None:
            got = self.lengths[key] = fordham_length(e)
        return got

    def is_right(self, e: Element, caret: int) -> bool:
        return classify_carets(e.neg)[caret].is_right

    def visit(self, e: Element, word: List[str], inside: bool, stable: bool, r_gone: bool,
              first: Optional[Sequence[str]] = None) -> None:
        rep = self.report
        if e == self.dst and inside:
            rep.found = True
            if rep.min_inside_length is None or len(word) < rep.min_inside_length:
                rep.min_inside_length = len(word)
                rep.shortest_path = "".join(word)
            return
        if len(word) >= self.cap:
            return
        if self.deadline is not None and time.monotonic() > self.deadline:
            rep.exhausted = False
            return
        last = word[-1] if word else None
        letters = first if first is not None else GENERATORS
        for g in letters:
            if last is not None and g == INVERSE[last]:
                continue
            if rotation_applicable(e, g):
                f, rotated = apply_rotation(e, g), True
            else:
                f, rotated = apply_generator(e, g), False
            length = self.length(f)
            rep.paths_explored += 1
            now_inside = inside and length <= self.n
            path = word + [g]
            gone = r_gone
            if self.tracked is not None and not r_gone:
                if stable and rotated and f.n_carets == self.n_carets:
                    if not self.is_right(f, self.tracked):
                        gone = True
                        rep.root_checks.append(RootCheck("".join(path), length, self.expect))
                else:
                    rep.untracked_prefixes += 1
            if length > self.n and len(rep.exit_witnesses) < self.exit_sample:
                rep.exit_witnesses.append("".join(path))
            if length > self.n and self.prune:
                continue
            self.visit(f, path, now_inside, stable and rotated, gone)


def _run(src, dst, n, cap, prune, tracked, expect, exit_sample, deadline, first) -> SearchReport:
    s = _Search(src, dst, n, cap, prune, tracked, expect, exit_sample, deadline)
    s.visit(src, [], True, True, False, first=first)
    return s.report


def _run_packed(args) -> SearchReport:
    src_d, dst_d, *rest = args
    return _run(Element.from_dict(src_d), Element.from_dict(dst_d), *rest)


def inside_ball_search(
    src: Element,
    dst: Element,
    n: int,
    cap: int,
    *,
    prune: bool = True,
    tracked_caret: Optional[int] = None,
    tracked_exit_length: Optional[int] = None,
    exit_sample: int = 20,
    time_budget: Optional[float] = None,
    jobs: int = 1,
) -> SearchReport:
    """Depth-first search for a path ``src -> dst`` of length <= ``cap`` inside ``B(n)``.

    Immediate backtracking is skipped.  With ``prune`` off, paths leaving the
    ball are still expanded but cannot count as found.  ``jobs > 1`` splits
    the work by first letter across processes.

    With ``tracked_caret`` set, every path prefix at which that caret first
    stops being a right caret is logged with its length, to be compared with
    ``tracked_exit_length`` (default ``n + 1``).  Only prefixes reached purely
    by rotations are tracked, since other steps renumber carets.
    """
    t0 = time.monotonic()
    deadline = None if time_budget is None else t0 + time_budget
    if jobs <= 1 or src == dst or cap == 0:
        rep = _run(src, dst, n, cap, prune, tracked_caret, tracked_exit_length, exit_sample,
                   deadline, None)
    else:
        tasks = [
            (src.to_dict(), dst.to_dict(), n, cap, prune, tracked_caret, tracked_exit_length,
             exit_sample, deadline, (g,))
            for g in GENERATORS
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_packed, tasks))
        rep = SearchReport(src, dst, n, cap)
        for part in parts:
            rep.merge(part, exit_sample)
    rep.elapsed = time.monotonic() - t0
    return rep


def witness_search(w: WitnessElement, cap: int, radius: Optional[int] = None, **kw) -> SearchReport:
    """Search from ``w x0`` to ``w x0^-1`` in ``B(|w|-1)`` (or ``B(radius)``), tracking ``R``."""
    src = apply_generator(w.element, "x0")
    dst = apply_generator(w.element, "X0")
    n = w.n if radius is None else radius
    kw.setdefault("tracked_caret", w.root_caret)
    kw.setdefault("tracked_exit_length", w.length)
    return inside_ball_search(src, dst, n, cap, **kw)


class AuditError(ValueError):
    def __init__(self, message: str, step_index: int):
        super().__init__(f"{message} (step {step_index})")
        self.step_index = step_index


@dataclass
class AuditReport:
    k: int
    m: int
    eta: str
    n: int
    root_caret: int
    tracked: List[int]
    steps: List[StepRecord]
    lengths: List[int]
    first_nonright_step: Optional[int]
    length_at_first_nonright: Optional[int]
    in_window: bool

    @property
    def chart_ok(self) -> bool:
        """Measured and predicted deltas agree wherever the pairing is LL or RNI."""
        return all(
            s.measured == s.predicted
            for s in self.steps
            if s.pairing in (CaretType.LL, CaretType.RNI)
        )

    @property
    def out_of_ball(self) -> Optional[bool]:
        if self.length_at_first_nonright is None:
            return None
        return self.length_at_first_nonright == self.n + 1

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "eta": self.eta,
            "n": self.n,
            "root_caret": self.root_caret,
            "tracked_right_carets": self.tracked,
            "in_window": self.in_window,
            "steps": [s.to_dict() for s in self.steps],
            "lengths": self.lengths,
            "first_nonright_step": self.first_nonright_step,
            "length_at_first_nonright": self.length_at_first_nonright,
            "out_of_ball": self.out_of_ball,
            "chart_ok": self.chart_ok,
        }


def audit_path(w: WitnessElement, m: int, eta) -> AuditReport:
    """Follow ``w x0^m eta`` step by step, recording caret-type changes and lengths.

    ``tracked`` lists the right carets of ``w x0^m`` paired with LL carets,
    nearest the root last; the report records the length at the first step
    where the original root caret is no longer a right caret.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    letters = parse_word(eta) if isinstance(eta, str) else list(eta)
    e = w.element
    for i in range(m):
        if not rotation_applicable(e, "x0"):
            raise AuditError("x0 rotation not applicable while forming w x0^m", i)
        e = apply_rotation(e, "x0")
    neg_types = classify_carets(e.neg)
    pos_types = classify_carets(e.pos)
    tracked = [
        i for i, (a, b) in enumerate(zip(neg_types, pos_types))
        if a.is_right and b is CaretType.LL
    ]
    root = w.root_caret
    lengths = [fordham_length(e)]
    steps: List[StepRecord] = []
    first = None
    first_len = None
    if not classify_carets(e.neg)[root].is_right:
        first, first_len = 0, lengths[0]
    for i, g in enumerate(letters, start=1):
        if not rotation_applicable(e, g):
            raise AuditError(f"{g} rotation not applicable", i)
        e, rec = step(e, g)
        steps.append(rec)
        lengths.append(fordham_length(e))
        if first is None and not classify_carets(e.neg)[root].is_right:
            first, first_len = i, lengths[-1]
    return AuditReport(
        k=w.k,
        m=m,
        eta="".join(letters),
        n=w.n,
        root_caret=root,
        tracked=tracked,
        steps=steps,
        lengths=lengths,
        first_nonright_step=first,
        length_at_first_nonright=first_len,
        in_window=m + len(letters) < w.k,
    )
