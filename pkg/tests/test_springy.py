import random

import pytest
from hypothesis import given, settings

from conftest import instances, outcome
from focusprop import oracle
from focusprop.model import FocusInstance, FocusParams, Infeasible, IntInterval as I, Variant
from focusprop.scenarios import SchedulingToy, random_corpus, random_instance
from focusprop.springy import PrefixCell, PrefixTable, focus_cardinality, min_cards, springy_filter


def params(length, h=0, k=0):
    return FocusParams(k, length, h, Variant.SPRINGY if h else Variant.FOCUS)


def test_first_cell_of_a_penalizing_variable():
    t = min_cards([I(1, 1)], params(1))
    assert t[0] == PrefixCell(p_leq=2, ps_leq=2, p_gt=1, plen=1, card=0)
    assert t.sentinel == 2


def test_tolerated_gap_keeps_one_sequence():
    xs = [I(1, 1), I(0, 1), I(1, 1)]
    assert min_cards(xs, params(3, h=1))[2].p_gt == 1


def test_rigid_case_matches_exhaustive_minimum():
    xs = [I(1, 1), I(0, 1), I(1, 1)]
    t = min_cards(xs, params(3, h=0))
    inst = FocusInstance(tuple(xs), I(0, 3), params(3, h=0))
    # x_1 = 1 makes one sequence of length 3
    assert t[2].p_gt == oracle.min_cardinality(inst) == 1


@pytest.mark.parametrize("xs,length,expected", [
    ([I(0, 0)], 1, 0),
    ([I(1, 1), I(0, 0), I(1, 1)], 1, 2),
])
def test_focus_cardinality_examples(xs, length, expected):
    assert focus_cardinality(min_cards(xs, params(length))) == expected


def test_scheduling_toy_with_free_start_needs_one_sequence():
    toy = SchedulingToy()
    patterns = [toy.excess(s) for s in toy.starts]
    # domain of each day spans its values over every start
    xs = [I(min(min(p[t], 1) for p in patterns), max(min(p[t], 1) for p in patterns)) for t in range(toy.horizon)]
    assert focus_cardinality(min_cards(xs, FocusParams(0, 5, 1, Variant.SPRINGY))) == 1


def test_tolerance_rescues_the_toy():
    toy = SchedulingToy()
    springy = [s for s in toy.starts if outcome(springy_filter, toy.instance(s, 4, h=1)) != "infeasible"]
    rigid = [s for s in toy.starts if outcome(springy_filter, toy.instance(s, 4, h=0)) != "infeasible"]
    assert springy == [5] and rigid == []


def test_all_neutral_only_raises_yc_to_zero():
    inst = FocusInstance((I(0, 0),) * 4, I(0, 2), params(2))
    assert springy_filter(inst) == inst


def test_low_middle_value_is_pruned_when_one_sequence_is_allowed():
    inst = FocusInstance((I(1, 1), I(0, 1), I(1, 1)), I(1, 1), params(3))
    assert springy_filter(inst).xs[1] == I(1, 1)


def test_infeasible_when_cardinality_exceeds_budget():
    inst = FocusInstance((I(1, 1), I(0, 0), I(1, 1)), I(0, 1), params(3))
    with pytest.raises(Infeasible):
        springy_filter(inst)


def test_fixed_yc_guard_never_changes_the_result():
    # one value flip moves the cardinality by at most one, so with yc unfixed
    # after raising its lower bound there is nothing left to prune
    for variant in (Variant.FOCUS, Variant.SPRINGY):
        for inst in random_corpus(13, variant, 1500, 8):
            guarded = outcome(lambda i: springy_filter(i, fixed_yc_guard=True), inst)
            assert guarded == outcome(springy_filter, inst)


def test_table_storage_round_trips_cells():
    t = min_cards([I(1, 1), I(0, 1), I(0, 0), I(1, 1)], params(3, h=1))
    assert PrefixTable.from_cells(t.cells) == t
    assert len(t.dump().splitlines()) == len(t) + 1


def test_table_quantities_stay_in_range():
    """Sentinel discipline and the length / low-count ranges.

    ``card`` is stored as if ``x_l > k``, so at a position that may be low it
    can sit one above ``h``; it is within ``h`` once that adjustment is made
    and whenever ``x_l > k`` is reachable.
    """
    for variant in (Variant.FOCUS, Variant.SPRINGY):
        for inst in random_corpus(11, variant, 1500, 9):
            n, p = inst.n, inst.params
            for x, c in zip(inst.xs, min_cards(inst.xs, p).cells):
                for v in (c.p_leq, c.ps_leq, c.p_gt):
                    assert 0 <= v <= n or v == n + 1
                assert 0 <= c.plen <= p.length
                if c.plen:
                    assert c.card - (1 if x.lo <= p.k else 0) <= p.tolerance
                    if c.p_gt <= n:
                        assert c.card <= p.tolerance


def test_cardinality_is_tight_lower_bound():
    for variant in (Variant.FOCUS, Variant.SPRINGY):
        for inst in random_corpus(12, variant, 1500, 10):
            fc = focus_cardinality(min_cards(inst.xs, inst.params))
            best = oracle.min_cardinality(inst)
            assert fc == (best if best is not None else inst.n + 1)


@settings(max_examples=300, deadline=None)
@given(instances(Variant.SPRINGY, n_max=8, k_max=2))
def test_equals_closure_springy(inst):
    assert outcome(springy_filter, inst) == outcome(oracle.bc_closure, inst)


@settings(max_examples=300, deadline=None)
@given(instances(Variant.FOCUS, n_max=8, k_max=2))
def test_equals_closure_focus(inst):
    assert outcome(springy_filter, inst) == outcome(oracle.bc_closure, inst)


def test_equals_closure_up_to_ten_variables():
    rng = random.Random(4)
    for t in range(400):
        inst = random_instance(rng, Variant.SPRINGY if t % 2 else Variant.FOCUS, 10)
        assert outcome(springy_filter, inst) == outcome(oracle.bc_closure, inst), inst
