import pytest
from hypothesis import given, strategies as st

from focusprop.model import (Cover, FocusInstance, FocusParams, IntInterval as I, VarLabel, Variant,
                             cover_is_valid, cover_violation, label)
from focusprop.scenarios import SchedulingToy


def test_labels():
    assert label(I(1, 1), 0) is VarLabel.PENALIZING
    assert label(I(0, 1), 0) is VarLabel.UNDETERMINED
    assert label(I(0, 0), 0) is VarLabel.NEUTRAL
    assert label(I(3, 7), 2) is VarLabel.PENALIZING
    with pytest.raises(ValueError):
        label(I.empty(), 0)


def test_interval_basics():
    x = I(2, 5)
    assert x.raise_lo(4) == I(4, 5)
    assert x.lower_hi(1).is_empty
    assert I(3, 1) == I.empty()
    assert x.low_part(3) == I(2, 3) and x.high_part(3) == I(4, 5)
    assert I(0, 1).issubset(I(0, 2)) and not I(0, 3).issubset(I(0, 2))
    assert I.empty().issubset(I(0, 0))


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_tightening_never_jumps_between_pure_labels(a, b, c, k):
    lo, hi = min(a, b), max(a, b)
    x = I(lo, hi)
    y = x.raise_lo(c) if c <= hi else x.lower_hi(c)
    if y.is_empty:
        return
    before, after = label(x, k), label(y, k)
    if before is not VarLabel.UNDETERMINED:
        assert after is before


def test_params_validation():
    FocusParams(0, 3, 1, Variant.SPRINGY)
    FocusParams(0, 3, 0, Variant.WEIGHTED_SPRINGY)
    with pytest.raises(ValueError):
        FocusParams(0, 3, 2, Variant.SPRINGY)
    with pytest.raises(ValueError):
        FocusParams(0, 3, 1, Variant.FOCUS)
    with pytest.raises(ValueError):
        FocusParams(0, 0, 0, Variant.FOCUS)


def test_instance_validation():
    p = FocusParams(0, 2, 0, Variant.FOCUS)
    with pytest.raises(ValueError):
        FocusInstance((), I(0, 0), p)
    with pytest.raises(ValueError):
        FocusInstance((I(0, 1),), I(0, 1), p)  # len > n
    with pytest.raises(ValueError):
        FocusInstance((I(0, 1), I(0, 1)), I(0, 1), p, zc=I(0, 2))
    with pytest.raises(ValueError):
        FocusInstance((I(0, 1), I(0, 1)), I(0, 1), FocusParams(0, 2, 0, Variant.WEIGHTED))


def _fixed(values, yc, length, h=0, variant=Variant.FOCUS, zc=None):
    return FocusInstance(tuple(I.fixed(v) for v in values), yc, FocusParams(0, length, h, variant), zc)


def test_five_day_run_is_one_focus_sequence():
    toy = SchedulingToy()
    values = [min(v, 1) for v in toy.excess(1)]
    assert values[:5] == [1, 1, 1, 1, 1]
    inst = _fixed(values, I(1, 1), 5)
    assert cover_is_valid(inst, values, Cover(((0, 4),)))


def test_gap_inside_sequence_needs_tolerance():
    values = [min(v, 1) for v in SchedulingToy().excess(5)]
    assert values[:3] == [1, 0, 1]
    rigid = _fixed(values, I(1, 1), 5)
    assert cover_violation(rigid, values, Cover(((0, 2),))) == "condition 2"
    springy = _fixed(values, I(1, 1), 5, h=1, variant=Variant.SPRINGY)
    assert cover_is_valid(springy, values, Cover(((0, 2),)))


def test_condition_names():
    values = [1, 0, 0, 1]
    inst = _fixed(values, I(0, 1), 4, h=1, variant=Variant.SPRINGY)
    assert cover_violation(inst, values, Cover(((0, 0), (3, 3)))) == "condition 1"
    assert cover_violation(inst, values, Cover(((0, 0),))) == "condition 2"
    assert cover_violation(inst, values, Cover(((0, 3),))) == "condition 4"
    assert cover_violation(inst, values, Cover(((0, 1),))) is not None  # ends on a low value
    assert cover_violation(inst, values, Cover(((0, 2), (2, 3)))).startswith("structure")
    wh = _fixed(values, I(0, 2), 4, h=2, variant=Variant.WEIGHTED_SPRINGY, zc=I(0, 3))
    assert cover_violation(wh, values, Cover(((0, 3),))) == "condition 5"
    assert cover_is_valid(wh, values, Cover(((0, 0), (3, 3))))


def test_adjacent_sequences_are_distinct():
    values = [1] * 6
    inst = _fixed(values, I(2, 2), 3)
    assert cover_is_valid(inst, values, Cover(((0, 2), (3, 5))))


@given(st.lists(st.integers(0, 1), min_size=1, max_size=6), st.integers(0, 6))
def test_validity_monotone_in_budgets(values, y):
    n = len(values)
    inst = _fixed(values, I(0, y), n, h=0, variant=Variant.WEIGHTED, zc=I(0, n))
    looser = _fixed(values, I(0, y + 1), n, h=0, variant=Variant.WEIGHTED, zc=I(0, n + 1))
    runs, start = [], None
    for i, v in enumerate(values + [0]):
        if v and start is None:
            start = i
        elif not v and start is not None:
            runs.append((start, i - 1))
            start = None
    cover = Cover(tuple(runs))
    if cover_is_valid(inst, values, cover):
        assert cover_is_valid(looser, values, cover)
