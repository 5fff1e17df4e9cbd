import itertools
import random

import pytest

from thompsonf.convexity import (
    AuditError,
    BallResourceError,
    audit_path,
    ball,
    inside_ball_search,
    witness_search,
)
from thompsonf.element import GENERATORS, INVERSE, apply_generator, apply_word, identity, parse_word
from thompsonf.metric import fordham_length

# breadth-first sphere sizes, computed once and cross-checked by the metric
GOLDEN_SPHERES = [1, 4, 12, 36, 108, 314, 906]


def test_small_balls():
    b0 = ball(0)
    assert b0.members == {identity().key: 0}
    b1 = ball(1)
    assert len(b1) == 5
    assert sorted(b1.members.values()) == [0, 1, 1, 1, 1]


def test_ball_six_golden(ball6):
    assert ball6.sphere_sizes == GOLDEN_SPHERES
    assert len(ball6) == sum(GOLDEN_SPHERES) == 1381


def test_ball_limits():
    with pytest.raises(BallResourceError):
        ball(8)
    with pytest.raises(ValueError):
        ball(-1)
    assert len(ball(2, bound=2)) == 17


def test_ball_structure(ball6):
    for key, d in ball6.members.items():
        assert d <= 6
        if d:
            e = ball6.elements[key]
            assert any(
                ball6.members.get(apply_generator(e, g).key) == d - 1 for g in GENERATORS
            )


def test_balls_nest():
    prev = ball(0)
    for n in range(1, 5):
        cur = ball(n)
        assert len(cur) > len(prev)
        assert all(cur.members[k] == d for k, d in prev.members.items())
        prev = cur


def test_trivial_search():
    e = apply_word(identity(), "x0x1")
    rep = inside_ball_search(e, e, 2, 3)
    assert rep.found and rep.min_inside_length == 0 and rep.shortest_path == ""


def _inside_path_ok(src, word, n):
    e = src
    for g in word:
        e = apply_generator(e, g)
        if fordham_length(e) > n:
            return False
    return True


def test_search_reports_valid_paths():
    rng = random.Random(31)
    b = ball(4)
    keys = sorted(b.members)
    for _ in range(40):
        src, dst = (b.elements[rng.choice(keys)] for _ in range(2))
        rep = inside_ball_search(src, dst, 4, 4)
        if rep.found:
            assert rep.min_inside_length <= 4
            assert apply_word(src, rep.shortest_path) == dst
            word = parse_word(rep.shortest_path)
            assert _inside_path_ok(src, word, 4)
            assert all(word[i + 1] != INVERSE[word[i]] for i in range(len(word) - 1))


def test_pruning_soundness():
    rng = random.Random(37)
    b = ball(3)
    keys = sorted(b.members)
    for _ in range(40):
        src, dst = (b.elements[rng.choice(keys)] for _ in range(2))
        on = inside_ball_search(src, dst, 3, 3, prune=True)
        off = inside_ball_search(src, dst, 3, 3, prune=False)
        assert on.found == off.found
        assert on.min_inside_length == off.min_inside_length
        assert off.paths_explored >= on.paths_explored


def test_pruning_soundness_on_witness(witnesses):
    w = witnesses(2)
    on = witness_search(w, 3, prune=True)
    off = witness_search(w, 3, prune=False)
    assert on.found is off.found is False


@pytest.mark.parametrize("k", [3, 4])
def test_no_short_inside_path(witnesses, k):
    rep = witness_search(witnesses(k), k - 2)
    assert rep.exhausted and not rep.found
    assert rep.root_checks and not rep.root_exceptions


@pytest.mark.parametrize("k", [3, 4])
def test_path_through_witness(witnesses, k):
    w = witnesses(k)
    # a cap of k-2 = 1 cannot hold a length-2 path, so the cap is at least 2
    rep = witness_search(w, max(k - 2, 2), radius=w.length)
    assert rep.found and rep.min_inside_length == 2 and rep.shortest_path == "X0X0"


def test_parallel_matches_serial(witnesses):
    w = witnesses(2)
    one = witness_search(w, 4)
    two = witness_search(w, 4, jobs=2)
    assert one.to_dict().keys() == two.to_dict().keys()
    for field in ("found", "paths_explored", "untracked_prefixes", "exhausted"):
        assert getattr(one, field) == getattr(two, field)
    assert sorted(c.word for c in one.root_checks) == sorted(c.word for c in two.root_checks)


def test_time_budget_marks_incomplete(witnesses):
    rep = witness_search(witnesses(2), 12, time_budget=0.0)
    assert not rep.exhausted


@pytest.mark.parametrize("k", [2, 3, 4])
def test_audit_examples(witnesses, k):
    w = witnesses(k)
    for eta in ("X0", "X1"):
        rep = audit_path(w, 1, eta)
        assert rep.first_nonright_step == 1
        assert rep.length_at_first_nonright == w.n + 1 and rep.out_of_ball
        assert rep.chart_ok
        assert rep.tracked == [w.root_caret]
    rep = audit_path(w, 2, "X0x0X0X0")
    # the X0/x0 pair on the first tracked caret nets zero before R flips
    assert [x - w.n for x in rep.lengths] == [-1, 0, -1, 0, 1]
    assert rep.first_nonright_step == 4 and rep.out_of_ball and rep.chart_ok
    assert len(rep.tracked) == 2 and rep.tracked[-1] == w.root_caret


def test_audit_tracked_carets(witnesses):
    w = witnesses(2)
    assert audit_path(w, 3, "").tracked == [31, 63, 127]
    # with m = 0 the tracked caret is still the root, which counts as a left caret
    rep = audit_path(w, 0, "")
    assert rep.first_nonright_step == 0 and rep.length_at_first_nonright == w.length


def test_audit_errors(witnesses):
    w = witnesses(2)
    with pytest.raises(ValueError):
        audit_path(w, -1, "")
    # the left side of T_8 has 8 carets; after 7 rotations the root has no left subtree
    assert audit_path(w, 7, "").m == 7
    with pytest.raises(AuditError) as info:
        audit_path(w, 8, "")
    assert info.value.step_index == 7


def _reduced_words(length):
    for word in itertools.product(GENERATORS, repeat=length):
        if all(word[i + 1] != INVERSE[word[i]] for i in range(length - 1)):
            yield list(word)


@pytest.mark.parametrize("k, budget", [(2, 5), (3, 4), (4, 3)])
def test_audit_exhaustive(witnesses, k, budget):
    """Every ``x0^m eta`` up to the budget: leaving the right side costs exactly n+1."""
    w = witnesses(k)
    exits = 0
    for m in range(1, budget + 1):
        for size in range(budget - m + 1):
            for eta in _reduced_words(size):
                rep = audit_path(w, m, eta)
                assert rep.chart_ok
                if rep.first_nonright_step == size and size:
                    exits += 1
                    assert rep.length_at_first_nonright == w.n + 1
    assert exits > 0


def test_report_dicts(witnesses):
    w = witnesses(2)
    d = audit_path(w, 1, "X1").to_dict()
    assert d["out_of_ball"] is True and d["steps"][0]["affected"] == w.root_caret
    s = witness_search(w, 2).to_dict(include_elements=True)
    assert s["source"] == apply_generator(w.element, "x0").to_dict()
