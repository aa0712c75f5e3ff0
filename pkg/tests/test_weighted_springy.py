import random
from math import inf

from hypothesis import given, settings

from conftest import instances, outcome
from prefix_brute import prefix_configs
from focusprop import oracle
from focusprop.model import FocusInstance, FocusParams, Infeasible, IntInterval as I, Status, Variant
from focusprop.scenarios import SchedulingToy, random_corpus, random_instance
from focusprop.weighted import build_dp_w
from focusprop.weighted_springy import DUMMY3, DpCell3, bc_filter_wh, build_dp_wh, disentailment_wh


def wh(xs, yc, zc, length, h, k=0):
    return FocusInstance(tuple(xs), yc, FocusParams(k, length, h, Variant.WEIGHTED_SPRINGY), zc)


def test_glued_neutral_cell():
    xs = [I(1, 1), I(0, 0), I(1, 1)]
    t = build_dp_wh(xs, FocusParams(0, 3, 1, Variant.WEIGHTED_SPRINGY), 3)
    assert t.cell(1, 2) == DpCell3(1, 3, 1)


def test_no_tolerance_means_two_sequences():
    xs = [I(1, 1), I(0, 0), I(1, 1)]
    t = build_dp_wh(xs, FocusParams(0, 3, 0, Variant.WEIGHTED_SPRINGY), 3)
    assert min(cell.q for cell in t.column(2)) == 2
    assert all(cell.q != 1 for cell in t.column(2))


def test_full_penalizing_run():
    length = 4
    xs = [I(1, 1)] * length
    t = build_dp_wh(xs, FocusParams(0, length, 1, Variant.WEIGHTED_SPRINGY), length)
    assert t.cell(0, length - 1) == DpCell3(1, length, 0)


def test_toy_rental_with_length_budget():
    inst = SchedulingToy().instance(5, 4, h=1, variant=Variant.WEIGHTED_SPRINGY)
    assert disentailment_wh(FocusInstance(inst.xs, inst.yc, inst.params, I(0, 4))) is Status.FEASIBLE
    assert disentailment_wh(FocusInstance(inst.xs, inst.yc, inst.params, I(0, 2))) is Status.DISENTAILED
    neutral = wh([I(0, 0)] * 3, I(0, 0), I(0, 0), 3, 1)
    assert disentailment_wh(neutral) is Status.FEASIBLE


def test_filter_examples():
    xs = [I(1, 1), I(0, 1), I(1, 1)]
    loose = wh(xs, I(1, 1), I(0, 3), 3, 1)
    assert bc_filter_wh(loose).xs == tuple(xs)
    strict = wh(xs, I(1, 1), I(0, 3), 3, 0)
    assert bc_filter_wh(strict).xs[1] == I(1, 1)
    fixed = wh([I(1, 1), I(0, 0), I(1, 1)], I(1, 1), I(3, 3), 3, 1)
    assert bc_filter_wh(fixed) == fixed


def test_structure_on_corpus():
    for inst in random_corpus(41, Variant.WEIGHTED_SPRINGY, 2000, 8):
        try:
            t = build_dp_wh(inst.xs, inst.params, inst.zc.hi)
        except Infeasible:
            continue
        for j in range(t.n):
            col = t.column(j)
            top = t.top(j)
            assert col[0] != DUMMY3
            assert all(c != DUMMY3 for c in col[:top + 1]) and all(c == DUMMY3 for c in col[top + 1:])
            for a, b in zip(col[:top], col[1:top + 1]):
                assert tuple(b[:2]) <= tuple(a[:2])
            for cell in col[:top + 1]:
                if cell.l == inf:
                    assert cell.hc == inf
                else:
                    assert 1 <= cell.l <= inst.params.length and 0 <= cell.hc <= inst.params.h


def test_cells_are_best_prefix_covers():
    """A non-dummy cell is the least ``(q, l)`` over prefix covers of cost at
    most ``c``; its neutral count is the fewest among those witnesses."""
    for inst in random_corpus(42, Variant.WEIGHTED_SPRINGY, 800, 8):
        p = inst.params
        try:
            t = build_dp_wh(inst.xs, p, inst.zc.hi)
        except Infeasible:
            continue
        configs = prefix_configs(inst.xs, p.k, p.length, p.tolerance, springy=True)
        for j in range(inst.n):
            for c in range(t.zcu + 1):
                cell = t.cell(c, j)
                upto = [cfg for cfg in configs if cfg[0] == j and cfg[1] <= c]
                if cell == DUMMY3:
                    continue
                best = min((q, l) for _, _, q, l, _ in upto)
                assert (cell.q, cell.l) == best
                if cell.l != inf:
                    assert cell.hc == min(hn for _, _, q, l, hn in upto if (q, l) == best)


def test_matches_rigid_table_without_neutral_variables():
    rng = random.Random(43)
    for _ in range(1500):
        n = rng.randint(2, 9)
        xs = [rng.choice((I(1, 1), I(0, 1))) for _ in range(n)]
        length = rng.randint(2, n)
        h = rng.randint(0, length - 2)
        z = rng.randint(0, n + 1)
        try:
            a = build_dp_wh(xs, FocusParams(0, length, h, Variant.WEIGHTED_SPRINGY), z)
        except Infeasible:
            continue
        b = build_dp_w(xs, FocusParams(0, length, 0, Variant.WEIGHTED), z)
        assert [[tuple(c[:2]) for c in col] for col in a.cols] == [[tuple(c) for c in col] for col in b.cols]


def test_zero_tolerance_agrees_with_rigid_filter_on_fixed_values():
    from focusprop.weighted import bc_filter_w

    rng = random.Random(44)
    for _ in range(500):
        inst = random_instance(rng, Variant.WEIGHTED, 8)
        if inst.n < 2 or inst.params.length < 2:
            continue
        as_wh = FocusInstance(inst.xs, inst.yc, FocusParams(0, inst.params.length, 0, Variant.WEIGHTED_SPRINGY), inst.zc)
        assert outcome(bc_filter_wh, as_wh) == outcome(bc_filter_w, inst)


def test_disentailment_agrees_with_cover_existence():
    for inst in random_corpus(45, Variant.WEIGHTED_SPRINGY, 1500, 8):
        expected = Status.FEASIBLE if oracle.is_feasible(inst) else Status.DISENTAILED
        assert disentailment_wh(inst) is expected


@settings(max_examples=400, deadline=None)
@given(instances(Variant.WEIGHTED_SPRINGY, n_max=8, k_max=2))
def test_equals_closure(inst):
    assert outcome(bc_filter_wh, inst) == outcome(oracle.bc_closure, inst)


def test_equals_closure_up_to_ten_variables():
    rng = random.Random(46)
    for _ in range(300):
        inst = random_instance(rng, Variant.WEIGHTED_SPRINGY, 10, k=rng.randint(0, 2))
        assert outcome(bc_filter_wh, inst) == outcome(oracle.bc_closure, inst), inst
