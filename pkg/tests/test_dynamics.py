import random

import pytest

from thompsonf.dynamics import (
    DELTA_CHART,
    RotationError,
    alpha_index,
    apply_fast,
    apply_rotation,
    changed_carets,
    predict_delta,
    rotation_applicable,
    rotation_preconditions,
)
from thompsonf.element import GENERATORS, apply_generator, generator, identity, random_element
from thompsonf.metric import CaretType, classify_carets, fordham_length
from thompsonf.normalform import pair_to_normal_form
from thompsonf.tree import LEAF, build_balanced, right_spine

T = CaretType


def _applicable_samples(count, seed, max_carets=30):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        e = random_element(max_carets, rng)
        g = rng.choice(GENERATORS)
        if rotation_applicable(e, g):
            out.append((e, g))
    return out


def test_chart_entries():
    assert DELTA_CHART["x0"] == (T.LL, T.RI, {T.LL: -1, T.RNI: +1})
    assert DELTA_CHART["X0"] == (T.RI, T.LL, {T.LL: +1, T.RNI: -1})
    assert DELTA_CHART["x1"] == (T.IR, T.RI, {T.LL: -1, T.RNI: -1})
    assert DELTA_CHART["X1"] == (T.RI, T.IR, {T.LL: +1, T.RNI: +1})


def test_predict_delta_examples():
    assert predict_delta(T.LL, "x0") == -1
    assert predict_delta(T.RNI, "X0") == -1
    assert predict_delta(T.LL, "X1") == +1
    with pytest.raises(ValueError):
        predict_delta(T.IR, "x0")
    with pytest.raises(ValueError):
        predict_delta(T.LL, "x7")


def test_single_left_edge_blocks_x0():
    e = generator("x0")  # negative tree is a right spine
    assert not rotation_applicable(e, "x0")
    assert not rotation_preconditions(e, "x0").structural


def test_identity_blocks_everything():
    for g in GENERATORS:
        assert not rotation_applicable(identity(), g)
        with pytest.raises(RotationError):
            apply_rotation(identity(), g)


def test_reduction_blocks_rotation():
    # x0^2 x0^-1 cancels a caret, so the rotation path must refuse it
    e = apply_generator(generator("x0"), "x0")
    pre = rotation_preconditions(e, "X0")
    assert pre.structural and not pre.keeps_reduced
    with pytest.raises(RotationError):
        apply_rotation(e, "X0")
    assert apply_fast(e, "X0") == generator("x0")


def test_counterclockwise_root_rotation_shape():
    e = generator("x1")
    assert e.neg == right_spine(3)
    f = apply_rotation(e, "X0")
    assert f.neg == build_balanced(2)
    assert f.pos == e.pos
    assert f.neg.left.n_carets == e.neg.left.n_carets + 1


def test_witness_accepts_repeated_x1(witnesses):
    w = witnesses(2)
    e = w.element
    for _ in range(w.k):
        assert rotation_applicable(e, "x1")
        e = apply_rotation(e, "x1")
    assert e == apply_generator(apply_generator(w.element, "x1"), "x1")


def test_alpha_index_examples(ref_elem):
    assert alpha_index(right_spine(4)) == 1
    for m in range(2, 9):
        assert alpha_index(build_balanced(m)) == 2 ** (m - 1)
    # caret 4 is the last L_L caret, so the root's left subtree holds leaves 0..4
    assert alpha_index(ref_elem.neg) == 5
    with pytest.raises(ValueError):
        alpha_index(LEAF)


def test_rotation_matches_multiplication():
    for e, g in _applicable_samples(2000, 21):
        f = apply_rotation(e, g)
        assert f == apply_generator(e, g)
        assert f.pos.bits == e.pos.bits
        assert len(changed_carets(e, f)) == 1
        assert apply_fast(e, g) == f


def test_inapplicable_fast_path_falls_back():
    rng = random.Random(22)
    seen = 0
    while seen < 300:
        e = random_element(20, rng)
        g = rng.choice(GENERATORS)
        if not rotation_applicable(e, g):
            seen += 1
            assert apply_fast(e, g) == apply_generator(e, g)


_FAMILY = {
    "x0": ("is_left", "is_right"),
    "X0": ("is_right", "is_left"),
    "x1": ("is_interior", "is_right"),
    "X1": ("is_right", "is_interior"),
}


def test_chart_agreement():
    """The chart's deltas hold whenever the caret makes the chart's type transition.

    On arbitrary trees the moved caret can also end up R0/RNI/I0 instead of
    RI/IR; the witness walks never hit those, and there the chart can be off.
    """
    checked = 0
    for e, g in _applicable_samples(3000, 23):
        f = apply_rotation(e, g)
        (i,) = changed_carets(e, f)
        before, after = classify_carets(e.neg)[i], classify_carets(f.neg)[i]
        was, now = _FAMILY[g]
        assert getattr(before, was) and getattr(after, now)
        pairing = classify_carets(e.pos)[i]
        if (before, after) == DELTA_CHART[g][:2] and pairing in (T.LL, T.RNI):
            checked += 1
            assert fordham_length(f) - fordham_length(e) == predict_delta(pairing, g)
    assert checked > 100


@pytest.mark.parametrize("g, delta", [("X1", +1), ("x1", -1)])
def test_x1_normal_form_effect(g, delta):
    """x1^-1 adds one to the negative exponent at alpha; x1 removes one."""
    checked = 0
    for e, h in _applicable_samples(4000, 24):
        if h != g:
            continue
        f = apply_rotation(e, g)
        alpha = alpha_index(e.neg)
        assert alpha == alpha_index(f.neg)
        before = dict(pair_to_normal_form(e).negative)
        after = dict(pair_to_normal_form(f).negative)
        assert after.get(alpha, 0) - before.get(alpha, 0) == delta
        before.pop(alpha, None)
        after.pop(alpha, None)
        assert before == after
        assert pair_to_normal_form(e).positive == pair_to_normal_form(f).positive
        checked += 1
    assert checked > 200
